// types.hpp — certified value types: Hermitian operators, spectral and pure states

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qfisher {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline double fro_norm(const Matrix& a) { return a.norm(); }
inline double max_abs(const Matrix& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

// Hermiticity defect relative to the largest entry.
inline double hermiticity_defect(const Matrix& a) {
    const double scale = max_abs(a);
    if (scale == 0.0) return 0.0;
    return (a - a.adjoint()).cwiseAbs().maxCoeff() / scale;
}

// Dense Hermitian operator. Construction symmetrizes (A + A†)/2 when the
// relative defect is below tol and rejects otherwise.
class HermitianOperator {
  public:
    static HermitianOperator from(const Matrix& a, double tol = 1e-10) {
        if (a.rows() != a.cols()) throw std::invalid_argument("HermitianOperator: matrix not square");
        if (a.rows() < 2) throw std::invalid_argument("HermitianOperator: dim must be >= 2");
        const double defect = hermiticity_defect(a);
        if (defect > tol)
            throw std::invalid_argument("HermitianOperator: hermiticity defect " + std::to_string(defect) +
                                        " exceeds tolerance");
        return HermitianOperator(0.5 * (a + Matrix(a.adjoint())));
    }

    const Matrix& mat() const { return m_; }
    Eigen::Index dim() const { return m_.rows(); }

  private:
    explicit HermitianOperator(Matrix m) : m_(std::move(m)) {}
    Matrix m_;
};

// Normalized state vector.
class PureState {
  public:
    static PureState from(const Vector& amp, double tol = 1e-12) {
        const double n = amp.norm();
        if (std::abs(n - 1.0) > tol) throw std::invalid_argument("PureState: norm deviates from 1");
        return PureState(amp / n);
    }
    // Normalizes an arbitrary nonzero vector.
    static PureState normalized(const Vector& amp) {
        const double n = amp.norm();
        if (n <= 0.0) throw std::invalid_argument("PureState: zero vector");
        return PureState(amp / n);
    }

    const Vector& amplitudes() const { return v_; }
    Eigen::Index dim() const { return v_.size(); }
    Matrix density() const { return v_ * v_.adjoint(); }

  private:
    explicit PureState(Vector v) : v_(std::move(v)) {}
    Vector v_;
};

// Quantum state as eigenvalue/eigenvector pairs {p_i, |psi_i>} with a support cutoff.
class SpectralState {
  public:
    static SpectralState from_parts(const RealVector& p, const Matrix& vecs, double support_cutoff = 1e-12) {
        if (vecs.rows() != vecs.cols() || p.size() != vecs.cols())
            throw std::invalid_argument("SpectralState: inconsistent dimensions");
        RealVector q = p;
        double sum = 0.0;
        for (Eigen::Index i = 0; i < q.size(); ++i) {
            if (q[i] < -1e-12) throw std::invalid_argument("SpectralState: negative eigenvalue beyond tolerance");
            if (q[i] < 0.0) q[i] = 0.0;
            sum += q[i];
        }
        if (std::abs(sum - 1.0) > 1e-10) throw std::invalid_argument("SpectralState: eigenvalues do not sum to 1");
        const Matrix gram = vecs.adjoint() * vecs;
        const double gdef = (gram - Matrix::Identity(vecs.cols(), vecs.cols())).cwiseAbs().maxCoeff();
        if (gdef > 1e-10) throw std::invalid_argument("SpectralState: eigenvectors not orthonormal");
        return SpectralState(std::move(q), vecs, support_cutoff);
    }

    static SpectralState from_density(const Matrix& rho, double support_cutoff = 1e-12);

    static SpectralState pure(const PureState& psi, double support_cutoff = 1e-12) {
        const Eigen::Index d = psi.dim();
        RealVector p = RealVector::Zero(d);
        p[0] = 1.0;
        Matrix vecs(d, d);
        vecs.col(0) = psi.amplitudes();
        // complete to an orthonormal basis
        Matrix q = Matrix::Identity(d, d);
        Eigen::Index k = 1;
        for (Eigen::Index j = 0; j < d && k < d; ++j) {
            Vector v = q.col(j);
            for (Eigen::Index i = 0; i < k; ++i) v -= vecs.col(i).dot(v) * vecs.col(i);
            const double n = v.norm();
            if (n > 1e-8) vecs.col(k++) = v / n;
        }
        if (k != d) throw std::runtime_error("SpectralState::pure: basis completion failed");
        return SpectralState(std::move(p), std::move(vecs), support_cutoff);
    }

    Eigen::Index dim() const { return vecs_.rows(); }
    const RealVector& probabilities() const { return p_; }
    const Matrix& vectors() const { return vecs_; }
    double support_cutoff() const { return cutoff_; }

    std::vector<Eigen::Index> support() const {
        std::vector<Eigen::Index> idx;
        for (Eigen::Index i = 0; i < p_.size(); ++i)
            if (p_[i] > cutoff_) idx.push_back(i);
        return idx;
    }

    Matrix density() const {
        Matrix rho = Matrix::Zero(dim(), dim());
        for (Eigen::Index i = 0; i < p_.size(); ++i)
            if (p_[i] != 0.0) rho += p_[i] * (vecs_.col(i) * vecs_.col(i).adjoint());
        return rho;
    }

  private:
    SpectralState(RealVector p, Matrix vecs, double cutoff)
        : p_(std::move(p)), vecs_(std::move(vecs)), cutoff_(cutoff) {}
    RealVector p_;
    Matrix vecs_;
    double cutoff_;
};

}  // namespace qfisher
