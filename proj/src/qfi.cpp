#include "qfisher/qfi.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qfisher {

namespace {

void check_h(const Matrix& h, Eigen::Index dim, const char* who) {
    if (h.rows() != dim || h.cols() != dim) throw std::invalid_argument(std::string(who) + ": dimension mismatch");
    if (hermiticity_defect(h) > 1e-9) throw std::invalid_argument(std::string(who) + ": generator not Hermitian");
}

std::vector<std::string> default_labels(size_t n, const std::vector<std::string>& given) {
    if (!given.empty()) return given;
    std::vector<std::string> out;
    for (size_t i = 0; i < n; ++i) out.push_back("theta" + std::to_string(i));
    return out;
}

void finish_qfim(QfimMatrix& f) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(f.entries);
    f.min_eigenvalue = es.eigenvalues().minCoeff();
    f.psd_ok = f.min_eigenvalue >= -1e-9;
}

}  // namespace

double qfi_pure(const PureState& psi, const Matrix& h_theta) {
    check_h(h_theta, psi.dim(), "qfi_pure");
    return 4.0 * variance(psi, h_theta);
}

QfimMatrix qfim_pure(const PureState& psi, const std::vector<Matrix>& h_list,
                     const std::vector<std::string>& labels) {
    const size_t n = h_list.size();
    QfimMatrix f;
    f.labels = default_labels(n, labels);
    f.entries.resize(n, n);
    for (size_t m = 0; m < n; ++m)
        for (size_t k = m; k < n; ++k) {
            check_h(h_list[m], psi.dim(), "qfim_pure");
            const double v = 4.0 * covariance(psi, h_list[m], h_list[k]);
            f.entries(m, k) = v;
            f.entries(k, m) = v;
        }
    finish_qfim(f);
    return f;
}

double qfi_mixed(const SpectralState& rho0, const Matrix& h_theta) {
    check_h(h_theta, rho0.dim(), "qfi_mixed");
    const auto supp = rho0.support();
    if (supp.empty()) throw std::invalid_argument("qfi_mixed: empty support");
    const auto& p = rho0.probabilities();
    const Matrix hv = h_theta * rho0.vectors();  // columns H|psi_i>

    double acc = 0.0;
    for (auto i : supp) {
        const cplx hii = rho0.vectors().col(i).dot(hv.col(i));
        const double h2 = hv.col(i).squaredNorm();
        acc += 4.0 * p[i] * (h2 - std::norm(hii));
    }
    for (auto i : supp)
        for (auto j : supp) {
            if (i == j) continue;
            const double denom = p[i] + p[j];
            if (denom <= rho0.support_cutoff()) continue;
            const cplx hij = rho0.vectors().col(i).dot(hv.col(j));
            acc -= 8.0 * p[i] * p[j] / denom * std::norm(hij);
        }
    if (acc < -1e-10) throw std::runtime_error("qfi_mixed: negative value beyond tolerance");
    return acc < 0.0 ? 0.0 : acc;
}

QfimMatrix qfim_mixed(const SpectralState& rho0, const std::vector<Matrix>& h_list,
                      const std::vector<std::string>& labels) {
    const size_t n = h_list.size();
    QfimMatrix f;
    f.labels = default_labels(n, labels);
    f.entries.resize(n, n);
    const auto supp = rho0.support();
    if (supp.empty()) throw std::invalid_argument("qfim_mixed: empty support");
    const auto& p = rho0.probabilities();

    std::vector<Matrix> hv;
    for (const auto& h : h_list) {
        check_h(h, rho0.dim(), "qfim_mixed");
        hv.push_back(h * rho0.vectors());
    }

    for (size_t m = 0; m < n; ++m)
        for (size_t k = m; k < n; ++k) {
            double acc = 0.0;
            for (auto i : supp) {
                const cplx am = rho0.vectors().col(i).dot(hv[m].col(i));
                const cplx ak = rho0.vectors().col(i).dot(hv[k].col(i));
                const cplx mk = hv[m].col(i).dot(hv[k].col(i));  // <i|H_m H_k|i>
                const double cov_i = (0.5 * (mk + std::conj(mk)) - am * ak).real();
                acc += 4.0 * p[i] * cov_i;
            }
            for (auto i : supp)
                for (auto j : supp) {
                    if (i == j) continue;
                    const double denom = p[i] + p[j];
                    if (denom <= rho0.support_cutoff()) continue;
                    const cplx mij = rho0.vectors().col(i).dot(hv[m].col(j));
                    const cplx kji = rho0.vectors().col(j).dot(hv[k].col(i));
                    acc -= 8.0 * p[i] * p[j] / denom * (mij * kji).real();
                }
            f.entries(m, k) = acc;
            f.entries(k, m) = acc;
        }
    finish_qfim(f);
    return f;
}

SldResult sld_oracle(const SpectralState& rho_theta, const Matrix& drho) {
    if (drho.rows() != rho_theta.dim()) throw std::invalid_argument("sld_oracle: dimension mismatch");
    if (hermiticity_defect(drho) > 1e-7) throw std::invalid_argument("sld_oracle: drho not Hermitian");
    const Eigen::Index d = rho_theta.dim();
    const auto& p = rho_theta.probabilities();
    const Matrix dr = rho_theta.vectors().adjoint() * drho * rho_theta.vectors();

    Matrix l_eig = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) {
            const double denom = p[i] + p[j];
            if (denom > rho_theta.support_cutoff()) l_eig(i, j) = 2.0 * dr(i, j) / denom;
        }
    SldResult res;
    res.l = rho_theta.vectors() * l_eig * rho_theta.vectors().adjoint();
    res.l = 0.5 * (res.l + Matrix(res.l.adjoint()));
    double q = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) q += p[i] * l_eig.row(i).squaredNorm();
    res.qfi = q;
    return res;
}

namespace {
Matrix richardson_derivative(const std::function<Matrix(double)>& f, double x, double eps) {
    auto d_at = [&](double e) { return Matrix((f(x + e) - f(x - e)) / (2.0 * e)); };
    return (4.0 * d_at(0.5 * eps) - d_at(eps)) / 3.0;
}
}  // namespace

double qfi_fd_family(const std::function<Matrix(double)>& rho_of_theta, double theta, double fd_step) {
    Matrix drho = richardson_derivative(rho_of_theta, theta, fd_step);
    drho = 0.5 * (drho + Matrix(drho.adjoint()));
    const SpectralState rho = SpectralState::from_density(rho_of_theta(theta));
    return sld_oracle(rho, drho).qfi;
}

double qfi_fd_pure_family(const std::function<Vector(double)>& psi_of_theta, double theta, double fd_step) {
    auto d_at = [&](double e) { return Vector((psi_of_theta(theta + e) - psi_of_theta(theta - e)) / (2.0 * e)); };
    const Vector dpsi = (4.0 * d_at(0.5 * fd_step) - d_at(fd_step)) / 3.0;
    const Vector psi = psi_of_theta(theta);
    const cplx overlap = psi.dot(dpsi);
    return 4.0 * (dpsi.squaredNorm() - std::norm(overlap));
}

double qfi_fd_oracle(const std::function<Matrix(double)>& h_of_theta, double theta, double t,
                     const SpectralState& rho0, double fd_step) {
    auto rho_at = [&](double th) {
        const Matrix u = evolve(HermitianOperator::from(h_of_theta(th), 1e-9), t);
        return Matrix(u * rho0.density() * u.adjoint());
    };
    return qfi_fd_family(rho_at, theta, fd_step);
}

double qfi_fd_oracle(const std::function<Matrix(double)>& h_of_theta, double theta, double t,
                     const PureState& psi0, double fd_step) {
    auto psi_at = [&](double th) {
        const Matrix u = evolve(HermitianOperator::from(h_of_theta(th), 1e-9), t);
        return Vector(u * psi0.amplitudes());
    };
    return qfi_fd_pure_family(psi_at, theta, fd_step);
}

double saturation_check(const PureState& psi, const Matrix& h_plus, const Matrix& h_minus) {
    return std::abs(expectation(psi, commutator(h_plus, h_minus)));
}

std::optional<double> crb_bound(double fisher, unsigned nu) {
    if (nu == 0) throw std::invalid_argument("crb_bound: nu must be positive");
    if (fisher <= 0.0) return std::nullopt;
    return 1.0 / (double(nu) * fisher);
}

Eigen::VectorXd crb_multiparameter(const QfimMatrix& f) {
    const auto lu = f.entries.fullPivLu();
    if (!lu.isInvertible())
        return Eigen::VectorXd::Constant(f.entries.rows(), std::numeric_limits<double>::infinity());
    return lu.inverse().diagonal();
}

}  // namespace qfisher
