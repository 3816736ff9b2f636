// char_operator.hpp — the characteristic operator of a unitary family, built
// three independent ways: truncated expanded series, conserved-quantity closed
// form, and a finite-difference oracle of the defining expression, plus the
// long-time and scalar-V reductions.

#pragma once

#include "qfisher/conserved.hpp"

#include <functional>
#include <optional>

namespace qfisher {

// f(Omega, t) = (Omega t - sin(Omega t)) / Omega^3, Taylor branch below
// Omega t < 1e-4 to avoid cancellation. Requires omega > 0, t >= 0.
double f_function(double omega, double t);
// df/dt = 2 sin^2(Omega t / 2) / Omega^2
double df_dt(double omega, double t);

struct SeriesOptions {
    int n_max = 80;
    double tail_tol = 1e-12;  // relative to accumulated norm
};

struct SeriesResult {
    Matrix h;                    // accumulated sum (partial if not converged)
    bool converged = false;
    int terms_used = 0;
    double last_term_norm = 0.0;
};

// i sum_{n>=0} (it)^{n+1}/(n+1)! (H^x)^n A, accumulated in quad precision.
// Works for any square A; the Hermitian overload is the public operation.
SeriesResult char_series_matrix(const Matrix& h, const Matrix& a, double t, const SeriesOptions& opts = {});
inline SeriesResult char_series(const HermitianOperator& h, const HermitianOperator& dh, double t,
                                const SeriesOptions& opts = {}) {
    return char_series_matrix(h.mat(), dh.mat(), t, opts);
}

// f V - sin(Omega t)/Omega dH - 2i/Omega^2 sin^2(Omega t/2) [H, dH].
// Requires a passing structure with omega_sq > 0.
HermitianOperator char_closed(const HermitianOperator& h, const HermitianOperator& dh,
                              const ConservedStructure& s, double t);

struct ExactCharResult {
    Matrix h;                        // hermitized i (dU†/dθ) U
    double hermiticity_defect = 0.0; // defect before hermitization
};

// Central differences of U(theta) = exp(-i t H(theta)) with one Richardson
// level; the normative oracle for this module.
ExactCharResult char_exact(const std::function<Matrix(double)>& h_of_theta, double theta, double t,
                           double fd_step = 1e-5);

// (t / Omega^2) V
Matrix char_longtime(const Matrix& v, double omega, double t);

// -(1/Omega)[sin(Omega t) dH - (2i/Omega) sin^2(Omega t/2) [H, dH]].
// Requires V proportional to the identity (or zero); the scalar part is dropped.
HermitianOperator char_trivial_v(const HermitianOperator& h, const HermitianOperator& dh, double omega,
                                 double t);

struct CharOperatorBundle {
    double t = 0.0;
    std::optional<Matrix> series, closed, exact;
    double dev_series_closed = 0.0;
    double dev_series_exact = 0.0;
    double dev_closed_exact = 0.0;
};

CharOperatorBundle make_char_bundle(const std::function<Matrix(double)>& h_of_theta, double theta, double t,
                                    const SeriesOptions& opts = {});

}  // namespace qfisher
