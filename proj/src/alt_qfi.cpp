#include "qfisher/alt_qfi.hpp"

#include <cmath>
#include <stdexcept>

namespace qfisher {

AltQfiValue alt_qfi_unitary(const SpectralState& rho0, const Matrix& h_theta) {
    if (h_theta.rows() != rho0.dim()) throw std::invalid_argument("alt_qfi_unitary: dimension mismatch");
    if (hermiticity_defect(h_theta) > 1e-9) throw std::invalid_argument("alt_qfi_unitary: generator not Hermitian");

    AltQfiValue out;
    const Matrix rho = rho0.density();
    const Matrix sq = psd_sqrt(rho0);
    const Matrix hs = h_theta * sq;
    out.trace_form = 8.0 * ((h_theta * h_theta * rho).trace().real() - (hs * hs).trace().real());

    const auto supp = rho0.support();
    const auto& p = rho0.probabilities();
    const Matrix hv = h_theta * rho0.vectors();
    double acc = 0.0;
    for (auto i : supp) {
        const cplx hii = rho0.vectors().col(i).dot(hv.col(i));
        acc += p[i] * (hv.col(i).squaredNorm() - std::norm(hii));
        for (auto j : supp) {
            if (j <= i) continue;
            const cplx hij = rho0.vectors().col(i).dot(hv.col(j));
            acc -= 2.0 * std::sqrt(p[i] * p[j]) * std::norm(hij);
        }
    }
    out.spectral_form = 8.0 * acc;
    return out;
}

AltQfiOracleResult alt_qfi_direct_oracle(const std::function<Matrix(double)>& rho_of_theta, double theta,
                                         double fd_step) {
    auto sqrt_at = [&](double th) { return psd_sqrt(SpectralState::from_density(rho_of_theta(th))); };
    auto d_at = [&](double e) { return Matrix((sqrt_at(theta + e) - sqrt_at(theta - e)) / (2.0 * e)); };
    const Matrix d = (4.0 * d_at(0.5 * fd_step) - d_at(fd_step)) / 3.0;

    AltQfiOracleResult res;
    res.value = 4.0 * (d * d).trace().real();

    const SpectralState rho = SpectralState::from_density(rho_of_theta(theta));
    RealVector p = rho.probabilities();
    std::sort(p.begin(), p.end());
    for (Eigen::Index i = 0; i + 1 < p.size(); ++i)
        if (p[i + 1] - p[i] < 1e-8) res.degeneracy_warning = true;
    return res;
}

GammaPair gamma_series(const HermitianOperator& g, const Matrix& dg, int n_max, double tail_tol) {
    if (g.dim() != dg.rows()) throw std::invalid_argument("gamma_series: dimension mismatch");
    Matrix c = dg;  // (G^x)^n dG
    Matrix plus = Matrix::Zero(g.dim(), g.dim());
    Matrix minus = plus;
    double coeff = 1.0;  // (1/2)^n / (n+1)!
    for (int n = 0; n <= n_max; ++n) {
        plus += coeff * c;
        minus += (n % 2 == 0 ? coeff : -coeff) * c;
        const double term = coeff * fro_norm(c);
        if (term <= tail_tol * std::max(fro_norm(plus), 1e-300) && n > 0) break;
        if (n < n_max) {
            c = commutator(g.mat(), c);
            coeff *= 0.5 / double(n + 2);
        }
    }
    return {plus, minus};
}

GammaPair gamma_integral(const HermitianOperator& g, const Matrix& dg, int nodes) {
    // Gauss-Legendre on [0,1]; exp(s G^x / 2) A = e^{sG/2} A e^{-sG/2}
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(nodes, nodes);
    for (int i = 1; i < nodes; ++i) {
        const double b = i / std::sqrt(4.0 * i * i - 1.0);
        j(i - 1, i) = b;
        j(i, i - 1) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
    const Spectrum gs = spectral(g);

    Matrix plus = Matrix::Zero(g.dim(), g.dim());
    Matrix minus = plus;
    for (int k = 0; k < nodes; ++k) {
        const double s = 0.5 * (es.eigenvalues()[k] + 1.0);   // node on [0,1]
        const double w = es.eigenvectors()(0, k) * es.eigenvectors()(0, k);  // weight / 2, on [0,1] exactly
        Vector ph(g.dim()), phi(g.dim());
        for (Eigen::Index i = 0; i < g.dim(); ++i) {
            ph[i] = std::exp(0.5 * s * gs.eigenvalues[i]);
            phi[i] = std::exp(-0.5 * s * gs.eigenvalues[i]);
        }
        const Matrix e_plus = gs.eigenvectors * ph.asDiagonal() * gs.eigenvectors.adjoint();
        const Matrix e_minus = gs.eigenvectors * phi.asDiagonal() * gs.eigenvectors.adjoint();
        plus += w * (e_plus * dg * e_minus);
        minus += w * (e_minus * dg * e_plus);
    }
    return {plus, minus};
}

double f_i_function(double omega, double beta) {
    if (omega <= 0.0) throw std::invalid_argument("f_i_function: omega must be positive");
    const double u = 0.5 * beta * omega;
    if (u < 1e-4) return 2.0 / std::pow(omega, 3) * (-u * u * u / 6.0 - std::pow(u, 5) / 120.0);
    return 2.0 / std::pow(omega, 3) * (u - std::sinh(u));
}

double df_i_dbeta(double omega, double beta) {
    if (omega <= 0.0) throw std::invalid_argument("df_i_dbeta: omega must be positive");
    return (1.0 - std::cosh(0.5 * beta * omega)) / (omega * omega);
}

GammaPair gamma_thermal_closed(const HermitianOperator& h, const HermitianOperator& dh, const Matrix& v,
                               double omega, double beta) {
    if (omega <= 0.0) throw std::invalid_argument("gamma_thermal_closed: omega must be positive");
    const double fi = f_i_function(omega, beta);
    const double dfi = df_i_dbeta(omega, beta);
    const Matrix w = commutator(h.mat(), dh.mat());
    const Matrix common = fi * v + (fi * omega * omega - beta) * dh.mat();
    return {common - 2.0 * dfi * w, common + 2.0 * dfi * w};
}

AltQfiThermal alt_qfi_thermal(const GammaPair& gamma, const SpectralState& rho_t) {
    AltQfiThermal out;
    const Matrix rho = rho_t.density();
    out.raw_published = (rho * gamma.plus * gamma.minus).trace().real();
    const cplx mp = (rho * gamma.plus).trace();
    const cplx mm = (rho * gamma.minus).trace();
    const Eigen::Index d = rho.rows();
    const Matrix gp = gamma.plus - mp * Matrix::Identity(d, d);
    const Matrix gm = gamma.minus - mm * Matrix::Identity(d, d);
    out.value = (rho * gm * gp).trace().real();
    return out;
}

}  // namespace qfisher
