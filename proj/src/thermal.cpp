#include "qfisher/thermal.hpp"

#include "quad_linalg.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qfisher {

ThermalState thermal_state(const HermitianOperator& h, double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("thermal_state: beta must be positive");
    const Spectrum s = spectral(h);
    const Eigen::Index d = h.dim();
    const double e0 = s.eigenvalues.minCoeff();
    RealVector w(d);
    double z = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
        w[i] = std::exp(-beta * (s.eigenvalues[i] - e0));
        z += w[i];
    }
    return ThermalState{SpectralState::from_parts(w / z, s.eigenvectors), beta, std::log(z) - beta * e0,
                        s.eigenvalues.maxCoeff() - e0};
}

double r_function(double beta, double omega) {
    if (omega <= 0.0) throw std::invalid_argument("r_function: omega must be positive");
    const double x = beta * omega;
    if (x < 1e-4) {
        // 1 - tanh(x)/x = x^2/3 - 2 x^4/15 + ...
        return (x * x / 3.0 - 2.0 * std::pow(x, 4) / 15.0) / (omega * omega);
    }
    return (1.0 - std::tanh(x) / x) / (omega * omega);
}

namespace {
Matrix recenter(const Matrix& l, const SpectralState& rho_t) {
    const double mean = expectation(rho_t, l).real();
    return l - mean * Matrix::Identity(l.rows(), l.cols());
}
}  // namespace

Matrix sld_thermal_closed(const HermitianOperator& dh, const Matrix& v, double omega, double beta,
                          const SpectralState& rho_t) {
    if (omega <= 0.0) throw std::invalid_argument("sld_thermal_closed: omega must be positive");
    const double r_half = r_function(0.5 * beta, omega);
    const double th = std::tanh(0.5 * beta * omega);
    const Matrix l0 = beta * r_half * v - (2.0 * th / omega) * dh.mat();
    return recenter(l0, rho_t);
}

std::vector<double> bernoulli_even(int n) {
    if (n < 1) return {};
    // tangent numbers T_1..T_n, exact nonnegative recurrence in quad
    std::vector<quad::real> t;
    t.assign(size_t(n) + 1, quad::real(0));
    t[1] = 1;
    for (int k = 2; k <= n; ++k) t[size_t(k)] = quad::real(k - 1) * t[size_t(k) - 1];
    for (int k = 2; k <= n; ++k)
        for (int j = k; j <= n; ++j)
            t[size_t(j)] = quad::real(j - k) * t[size_t(j) - 1] + quad::real(j - k + 2) * t[size_t(j)];

    std::vector<double> b(static_cast<size_t>(n), 0.0);
    quad::real four_pow = 4;  // 4^n
    for (int k = 1; k <= n; ++k) {
        const quad::real mag = t[size_t(k)] * quad::real(2 * k) / (four_pow * (four_pow - 1));
        b[size_t(k) - 1] = (k % 2 == 1 ? 1.0 : -1.0) * double(mag);
        four_pow *= 4;
    }
    return b;
}

double sld_series_coefficient(int n) {
    static const std::vector<double> b = bernoulli_even(128);
    if (n < 0 || n + 1 > int(b.size())) throw std::invalid_argument("sld_series_coefficient: order out of range");
    // 4 (4^{n+1} - 1) B_{2n+2} / (2n+2)!  evaluated in quad to dodge overflow
    quad::real four_pow = 4;
    for (int k = 0; k < n; ++k) four_pow *= 4;
    quad::real fact = 1;
    for (int k = 2; k <= 2 * n + 2; ++k) fact *= quad::real(k);
    return double(quad::real(4) * (four_pow - 1) * quad::real(b[size_t(n)]) / fact);
}

SldSeriesResult sld_bernoulli_series(const HermitianOperator& g, const Matrix& dg, int n_max,
                                     double tail_tol) {
    SldSeriesResult res;
    const Spectrum s = spectral(g);
    res.radius_estimate = s.eigenvalues.maxCoeff() - s.eigenvalues.minCoeff();

    Matrix c = dg;  // (G^x)^{2n} dG
    Matrix acc = Matrix::Zero(g.dim(), g.dim());
    const bool in_radius = res.radius_estimate < 0.9 * std::numbers::pi;
    for (int n = 0; n <= n_max; ++n) {
        const double coeff = sld_series_coefficient(n);
        acc += coeff * c;
        res.terms_used = n + 1;
        res.last_term_norm = std::abs(coeff) * fro_norm(c);
        if (res.last_term_norm <= tail_tol * std::max(fro_norm(acc), 1e-300)) {
            res.converged = in_radius;
            break;
        }
        if (res.last_term_norm > 1e100) break;  // runaway divergence
        if (n < n_max) c = adjoint_power(g.mat(), c, 2);
    }
    if (!in_radius) res.converged = false;
    res.l = acc;
    return res;
}

SldSeriesResult sld_thermal_series(const HermitianOperator& h, const HermitianOperator& dh, double beta,
                                   const SpectralState& rho_t, int n_max) {
    const HermitianOperator g = HermitianOperator::from(Matrix(-beta * h.mat()), 1e-10);
    SldSeriesResult res = sld_bernoulli_series(g, Matrix(-beta * dh.mat()), n_max);
    res.l = recenter(res.l, rho_t);
    return res;
}

namespace {
struct ThermalPieces {
    double vv, dd, vd, mean_v, mean_d;
};
ThermalPieces pieces(const HermitianOperator& dh, const Matrix& v, const SpectralState& rho_t) {
    ThermalPieces p{};
    p.vv = expectation(rho_t, Matrix(v * v)).real();
    p.dd = expectation(rho_t, Matrix(dh.mat() * dh.mat())).real();
    p.vd = expectation(rho_t, anticommutator(v, dh.mat())).real();
    p.mean_v = expectation(rho_t, v).real();
    p.mean_d = expectation(rho_t, dh.mat()).real();
    return p;
}
}  // namespace

double qfi_thermal(const HermitianOperator& dh, const Matrix& v, double omega, double beta,
                   const SpectralState& rho_t) {
    if (omega <= 0.0) throw std::invalid_argument("qfi_thermal: omega must be positive");
    const auto p = pieces(dh, v, rho_t);
    const double rh = r_function(0.5 * beta, omega);
    const double th = std::tanh(0.5 * beta * omega);
    const double a = beta * rh;
    const double b = 2.0 * th / omega;
    const double second_moment = a * a * p.vv + b * b * p.dd - a * b * p.vd;
    const double mean = a * p.mean_v - b * p.mean_d;
    return second_moment - mean * mean;
}

double qfi_thermal_paper_form(const HermitianOperator& dh, const Matrix& v, double omega, double beta,
                              const SpectralState& rho_t) {
    if (omega <= 0.0) throw std::invalid_argument("qfi_thermal_paper_form: omega must be positive");
    const auto p = pieces(dh, v, rho_t);
    const double r = r_function(beta, omega);
    const double th = std::tanh(beta * omega);
    return beta * beta * r * r * p.vv + th * th / (omega * omega) * p.dd -
           beta / omega * r * th * p.vd;
}

}  // namespace qfisher
