// quad_linalg.hpp — minimal complex __float128 matrix arithmetic for series
// accumulation. The expanded-form series at Omega*t ~ 25 cancels ~9 decimal
// digits; double accumulation cannot reach the 1e-9 agreement bar.

#pragma once

#include "qfisher/types.hpp"

#include <vector>

namespace qfisher::quad {

using real = __float128;

struct qcplx {
    real re = 0, im = 0;
    qcplx() = default;
    qcplx(real r, real i) : re(r), im(i) {}
    qcplx(double r) : re(r), im(0) {}
};

inline qcplx operator+(qcplx a, qcplx b) { return {a.re + b.re, a.im + b.im}; }
inline qcplx operator-(qcplx a, qcplx b) { return {a.re - b.re, a.im - b.im}; }
inline qcplx operator*(qcplx a, qcplx b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
inline qcplx& operator+=(qcplx& a, qcplx b) { a = a + b; return a; }
inline qcplx& operator-=(qcplx& a, qcplx b) { a = a - b; return a; }
inline double sqnorm_d(qcplx a) { return double(a.re * a.re + a.im * a.im); }

// dense row-major square matrix
struct QMat {
    Eigen::Index d = 0;
    std::vector<qcplx> a;
    explicit QMat(Eigen::Index dim) : d(dim), a(size_t(dim) * size_t(dim)) {}
    qcplx& at(Eigen::Index r, Eigen::Index c) { return a[size_t(r) * size_t(d) + size_t(c)]; }
    const qcplx& at(Eigen::Index r, Eigen::Index c) const { return a[size_t(r) * size_t(d) + size_t(c)]; }
};

struct Triplet {
    Eigen::Index r, c;
    qcplx v;
};

inline std::vector<Triplet> sparsify(const Matrix& m, double drop = 0.0) {
    std::vector<Triplet> t;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            if (std::abs(m(r, c)) > drop) t.push_back({r, c, qcplx(m(r, c).real(), m(r, c).imag())});
    return t;
}

inline QMat from_eigen(const Matrix& m) {
    QMat q(m.rows());
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) q.at(r, c) = qcplx(m(r, c).real(), m(r, c).imag());
    return q;
}

inline Matrix to_eigen(const QMat& q) {
    Matrix m(q.d, q.d);
    for (Eigen::Index r = 0; r < q.d; ++r)
        for (Eigen::Index c = 0; c < q.d; ++c) m(r, c) = cplx(double(q.at(r, c).re), double(q.at(r, c).im));
    return m;
}

// C <- H*C - C*H with H given as triplets (exploits sparsity of model Hamiltonians)
inline QMat commutator(const std::vector<Triplet>& h, const QMat& c) {
    QMat out(c.d);
    for (const auto& t : h) {
        // (H C)[t.r, j] += v * C[t.c, j]
        for (Eigen::Index j = 0; j < c.d; ++j) out.at(t.r, j) += t.v * c.at(t.c, j);
        // (C H)[i, t.c] -= C[i, t.r] * v
        for (Eigen::Index i = 0; i < c.d; ++i) out.at(i, t.c) -= c.at(i, t.r) * t.v;
    }
    return out;
}

inline void axpy(QMat& y, qcplx alpha, const QMat& x) {
    for (size_t i = 0; i < y.a.size(); ++i) y.a[i] += alpha * x.a[i];
}

inline double fro_norm_d(const QMat& m) {
    real acc = 0;
    for (const auto& z : m.a) acc += z.re * z.re + z.im * z.im;
    return std::sqrt(double(acc));
}

}  // namespace qfisher::quad
