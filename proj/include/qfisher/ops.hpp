// ops.hpp — small operator constructors: Pauli, two-spin J/S triples, spin-one
// Schwinger matrices, truncated Fock ladder and quadrature operators.

#pragma once

#include "qfisher/types.hpp"

#include <cmath>

namespace qfisher::ops {

inline Matrix identity(Eigen::Index d) { return Matrix::Identity(d, d); }

inline Matrix sigma_x() {
    Matrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

inline Matrix sigma_y() {
    Matrix m(2, 2);
    m << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
    return m;
}

inline Matrix sigma_z() {
    Matrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return k;
}

// sigma_i on the first/second qubit of a two-qubit space, basis |00>,|01>,|10>,|11>
inline Matrix pauli1(const Matrix& s) { return kron(s, identity(2)); }
inline Matrix pauli2(const Matrix& s) { return kron(identity(2), s); }

// The two commuting su(2) triples of the two-spin models.
// J_x = (sx sx - sy sy)/4, J_y = (sx sy + sy sx)/4, J_z = (sz + sz)/4
inline Matrix two_spin_jx() { return 0.25 * (pauli1(sigma_x()) * pauli2(sigma_x()) - pauli1(sigma_y()) * pauli2(sigma_y())); }
inline Matrix two_spin_jy() { return 0.25 * (pauli1(sigma_x()) * pauli2(sigma_y()) + pauli1(sigma_y()) * pauli2(sigma_x())); }
inline Matrix two_spin_jz() { return 0.25 * (pauli1(sigma_z()) + pauli2(sigma_z())); }
// S_x = (sx sy - sy sx)/4, S_y = (sx sx + sy sy)/4, S_z = (sz - sz)/4
inline Matrix two_spin_sx() { return 0.25 * (pauli1(sigma_x()) * pauli2(sigma_y()) - pauli1(sigma_y()) * pauli2(sigma_x())); }
inline Matrix two_spin_sy() { return 0.25 * (pauli1(sigma_x()) * pauli2(sigma_x()) + pauli1(sigma_y()) * pauli2(sigma_y())); }
inline Matrix two_spin_sz() { return 0.25 * (pauli1(sigma_z()) - pauli2(sigma_z())); }

// Spin-one Schwinger operators in the basis {|02>,|11>,|20>}.
inline Matrix spin1_jx() {
    Matrix m(3, 3);
    const double s = 1.0 / std::sqrt(2.0);
    m << 0, s, 0, s, 0, s, 0, s, 0;
    return m;
}

inline Matrix spin1_jy() {
    Matrix m = Matrix::Zero(3, 3);
    const cplx is(0.0, 1.0 / std::sqrt(2.0));
    m(0, 1) = is;
    m(1, 0) = -is;
    m(1, 2) = is;
    m(2, 1) = -is;
    return m;
}

inline Matrix spin1_jz() {
    Matrix m = Matrix::Zero(3, 3);
    m(0, 0) = -1.0;
    m(2, 2) = 1.0;
    return m;
}

// |02><20| + |20><02|
inline Matrix spin1_exchange() {
    Matrix m = Matrix::Zero(3, 3);
    m(0, 2) = 1.0;
    m(2, 0) = 1.0;
    return m;
}

// ---- truncated Fock space --------------------------------------------------

inline Matrix annihilate(Eigen::Index d) {
    Matrix m = Matrix::Zero(d, d);
    for (Eigen::Index n = 1; n < d; ++n) m(n - 1, n) = std::sqrt(double(n));
    return m;
}

inline Matrix create(Eigen::Index d) { return annihilate(d).adjoint(); }

inline Matrix number(Eigen::Index d) {
    Matrix m = Matrix::Zero(d, d);
    for (Eigen::Index n = 0; n < d; ++n) m(n, n) = double(n);
    return m;
}

// x = (a + a†)/sqrt(2), p = (a - a†)/(i sqrt(2))
inline Matrix position(Eigen::Index d) { return (annihilate(d) + create(d)) / std::sqrt(2.0); }
inline Matrix momentum(Eigen::Index d) { return (annihilate(d) - create(d)) / cplx(0.0, std::sqrt(2.0)); }

inline Vector fock(Eigen::Index d, Eigen::Index n) {
    Vector v = Vector::Zero(d);
    v[n] = 1.0;
    return v;
}

inline Vector coherent(Eigen::Index d, cplx alpha) {
    Vector v(d);
    cplx amp = std::exp(-0.5 * std::norm(alpha));
    for (Eigen::Index n = 0; n < d; ++n) {
        v[n] = amp;
        amp *= alpha / std::sqrt(double(n + 1));
    }
    return v / v.norm();
}

}  // namespace qfisher::ops
