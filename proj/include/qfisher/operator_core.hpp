// operator_core.hpp — commutators, spectral decomposition, matrix functions,
// expectation statistics on dense Hermitian operators.

#pragma once

#include "qfisher/types.hpp"

namespace qfisher {

// AB - BA. Anti-Hermitian for Hermitian inputs.
Matrix commutator(const Matrix& a, const Matrix& b);
inline Matrix commutator(const HermitianOperator& a, const HermitianOperator& b) {
    return commutator(a.mat(), b.mat());
}

// AB + BA. Hermitian for Hermitian inputs.
Matrix anticommutator(const Matrix& a, const Matrix& b);
inline Matrix anticommutator(const HermitianOperator& a, const HermitianOperator& b) {
    return anticommutator(a.mat(), b.mat());
}

// (H^x)^n A by iterated commutator; n = 0 returns A. n above max_n is rejected.
Matrix adjoint_power(const Matrix& h, const Matrix& a, int n, int max_n = 128);
inline Matrix adjoint_power(const HermitianOperator& h, const Matrix& a, int n, int max_n = 128) {
    return adjoint_power(h.mat(), a, n, max_n);
}

struct Spectrum {
    RealVector eigenvalues;  // ascending
    Matrix eigenvectors;     // columns
    double residual = 0.0;   // ||H - Q L Q†||_F / ||H||_F
};

// Eigendecomposition with reconstruction-residual certificate.
Spectrum spectral(const HermitianOperator& h);

// U = exp(-i t H) via the spectral decomposition; unitarity-checked.
Matrix evolve(const HermitianOperator& h, double t);
Matrix evolve(const Spectrum& s, double t);

cplx expectation(const PureState& psi, const Matrix& a);
cplx expectation(const SpectralState& rho, const Matrix& a);

// cov = <{A,B}>/2 - <A><B>, real for Hermitian A, B. variance = cov(A, A) >= 0.
double covariance(const PureState& psi, const Matrix& a, const Matrix& b);
double variance(const PureState& psi, const Matrix& a);

// sqrt(rho) = Q diag(sqrt p) Q†. Rejects eigenvalues below -1e-10.
Matrix psd_sqrt(const SpectralState& rho);

}  // namespace qfisher
