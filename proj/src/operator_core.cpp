#include "qfisher/operator_core.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace qfisher {

namespace {
void check_same_dim(const Matrix& a, const Matrix& b, const char* who) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
        throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}
}  // namespace

Matrix commutator(const Matrix& a, const Matrix& b) {
    check_same_dim(a, b, "commutator");
    return a * b - b * a;
}

Matrix anticommutator(const Matrix& a, const Matrix& b) {
    check_same_dim(a, b, "anticommutator");
    return a * b + b * a;
}

Matrix adjoint_power(const Matrix& h, const Matrix& a, int n, int max_n) {
    check_same_dim(h, a, "adjoint_power");
    if (n < 0) throw std::invalid_argument("adjoint_power: negative order");
    if (n > max_n) throw std::invalid_argument("adjoint_power: order exceeds maximum");
    Matrix c = a;
    for (int k = 0; k < n; ++k) c = h * c - c * h;
    return c;
}

Spectrum spectral(const HermitianOperator& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h.mat());
    if (es.info() != Eigen::Success) throw std::runtime_error("spectral: eigensolver did not converge");
    Spectrum s{es.eigenvalues(), es.eigenvectors(), 0.0};
    const Matrix rec = s.eigenvectors * s.eigenvalues.asDiagonal() * s.eigenvectors.adjoint();
    const double hn = fro_norm(h.mat());
    s.residual = hn > 0.0 ? fro_norm(h.mat() - rec) / hn : fro_norm(rec);
    if (s.residual > 1e-10)
        throw std::runtime_error("spectral: reconstruction residual " + std::to_string(s.residual));
    return s;
}

Matrix evolve(const Spectrum& s, double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("evolve: time not finite");
    const Eigen::Index d = s.eigenvectors.rows();
    Vector phases(d);
    for (Eigen::Index i = 0; i < d; ++i) phases[i] = std::exp(cplx(0.0, -t * s.eigenvalues[i]));
    Matrix u = s.eigenvectors * phases.asDiagonal() * s.eigenvectors.adjoint();
    const double defect = fro_norm(Matrix(u.adjoint() * u) - Matrix::Identity(d, d));
    if (defect > 1e-10) throw std::runtime_error("evolve: unitarity defect " + std::to_string(defect));
    return u;
}

Matrix evolve(const HermitianOperator& h, double t) { return evolve(spectral(h), t); }

cplx expectation(const PureState& psi, const Matrix& a) {
    if (a.rows() != psi.dim()) throw std::invalid_argument("expectation: dimension mismatch");
    return psi.amplitudes().dot(a * psi.amplitudes());
}

cplx expectation(const SpectralState& rho, const Matrix& a) {
    if (a.rows() != rho.dim()) throw std::invalid_argument("expectation: dimension mismatch");
    cplx acc = 0.0;
    for (Eigen::Index i = 0; i < rho.dim(); ++i) {
        const double p = rho.probabilities()[i];
        if (p != 0.0) acc += p * rho.vectors().col(i).dot(a * rho.vectors().col(i));
    }
    return acc;
}

double covariance(const PureState& psi, const Matrix& a, const Matrix& b) {
    if (hermiticity_defect(a) > 1e-10 || hermiticity_defect(b) > 1e-10)
        throw std::invalid_argument("covariance: inputs must be Hermitian");
    const cplx ab = 0.5 * expectation(psi, anticommutator(a, b));
    const cplx ea = expectation(psi, a);
    const cplx eb = expectation(psi, b);
    return (ab - ea * eb).real();
}

double variance(const PureState& psi, const Matrix& a) {
    const double v = covariance(psi, a, a);
    if (v < -1e-12) throw std::runtime_error("variance: negative beyond tolerance");
    return v < 0.0 ? 0.0 : v;
}

Matrix psd_sqrt(const SpectralState& rho) {
    const Eigen::Index d = rho.dim();
    RealVector r(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const double p = rho.probabilities()[i];
        if (p < -1e-10) throw std::invalid_argument("psd_sqrt: negative eigenvalue");
        r[i] = p > 0.0 ? std::sqrt(p) : 0.0;
    }
    Matrix s = rho.vectors() * r.asDiagonal() * rho.vectors().adjoint();
    const double res = fro_norm(Matrix(s * s) - rho.density());
    if (res > 1e-10) throw std::runtime_error("psd_sqrt: residual " + std::to_string(res));
    return s;
}

SpectralState SpectralState::from_density(const Matrix& rho, double support_cutoff) {
    HermitianOperator h = HermitianOperator::from(rho, 1e-9);
    Eigen::SelfAdjointEigenSolver<Matrix> es(h.mat());
    if (es.info() != Eigen::Success) throw std::runtime_error("from_density: eigensolver failed");
    return SpectralState::from_parts(es.eigenvalues(), es.eigenvectors(), support_cutoff);
}

}  // namespace qfisher
