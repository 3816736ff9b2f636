#include "qfisher/char_operator.hpp"

#include "quad_linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace qfisher {

double f_function(double omega, double t) {
    if (omega <= 0.0) throw std::invalid_argument("f_function: omega must be positive");
    if (t < 0.0) throw std::invalid_argument("f_function: t must be nonnegative");
    const double x = omega * t;
    if (x < 1e-4) return t * t * t / 6.0 - omega * omega * std::pow(t, 5) / 120.0;
    return (x - std::sin(x)) / (omega * omega * omega);
}

double df_dt(double omega, double t) {
    if (omega <= 0.0) throw std::invalid_argument("df_dt: omega must be positive");
    if (t < 0.0) throw std::invalid_argument("df_dt: t must be nonnegative");
    const double s = std::sin(0.5 * omega * t);
    return 2.0 * s * s / (omega * omega);
}

SeriesResult char_series_matrix(const Matrix& h, const Matrix& a, double t, const SeriesOptions& opts) {
    if (h.rows() != a.rows() || h.cols() != a.cols())
        throw std::invalid_argument("char_series: dimension mismatch");

    const auto hs = quad::sparsify(h);
    quad::QMat c = quad::from_eigen(a);  // (H^x)^n A
    quad::QMat sum(a.rows());

    // coeff_n = i (it)^{n+1} / (n+1)!
    quad::qcplx coeff(0.0, 1.0);
    const quad::qcplx it(0.0, quad::real(t));

    SeriesResult res;
    double acc_norm = 0.0;
    int small_streak = 0;
    for (int n = 0; n <= opts.n_max; ++n) {
        coeff = coeff * it;
        coeff = quad::qcplx(coeff.re / quad::real(n + 1), coeff.im / quad::real(n + 1));
        quad::axpy(sum, coeff, c);

        const double cn = quad::fro_norm_d(c);
        const double term_norm = cn * std::sqrt(quad::sqnorm_d(coeff));
        acc_norm = quad::fro_norm_d(sum);
        res.terms_used = n + 1;
        res.last_term_norm = term_norm;

        if (term_norm <= opts.tail_tol * std::max(acc_norm, 1e-300)) {
            if (++small_streak >= 2) {
                res.converged = true;
                break;
            }
        } else {
            small_streak = 0;
        }
        if (n < opts.n_max) c = quad::commutator(hs, c);
    }
    res.h = quad::to_eigen(sum);
    return res;
}

HermitianOperator char_closed(const HermitianOperator& h, const HermitianOperator& dh,
                              const ConservedStructure& s, double t) {
    if (!s.pass)
        throw std::invalid_argument("char_closed: structure not verified (eigenop residual " +
                                    std::to_string(s.eigenop_residual) + ", conservation residual " +
                                    std::to_string(s.conservation_residual) + ")");
    if (s.omega_sq <= 0.0) throw std::invalid_argument("char_closed: omega_sq must be positive");
    const double omega = s.omega();
    const double f = f_function(omega, t);
    const double sn = std::sin(omega * t);
    const double s2 = std::sin(0.5 * omega * t);
    const Matrix w = commutator(h.mat(), dh.mat());
    Matrix out = f * s.v - (sn / omega) * dh.mat() -
                 cplx(0.0, 2.0 * s2 * s2 / s.omega_sq) * w;
    return HermitianOperator::from(out, 1e-10);
}

ExactCharResult char_exact(const std::function<Matrix(double)>& h_of_theta, double theta, double t,
                           double fd_step) {
    auto u_at = [&](double th) {
        return evolve(HermitianOperator::from(h_of_theta(th), 1e-9), t);
    };
    auto d_at = [&](double eps) {
        const Matrix up = u_at(theta + eps);
        const Matrix um = u_at(theta - eps);
        const Matrix du_dag = (up.adjoint() - um.adjoint()) / (2.0 * eps);
        return Matrix(cplx(0.0, 1.0) * du_dag * u_at(theta));
    };
    const Matrix d1 = d_at(fd_step);
    const Matrix d2 = d_at(0.5 * fd_step);
    const Matrix rich = (4.0 * d2 - d1) / 3.0;
    ExactCharResult res;
    res.hermiticity_defect = hermiticity_defect(rich);
    res.h = 0.5 * (rich + Matrix(rich.adjoint()));
    return res;
}

Matrix char_longtime(const Matrix& v, double omega, double t) {
    if (omega <= 0.0) throw std::invalid_argument("char_longtime: omega must be positive");
    return (t / (omega * omega)) * v;
}

HermitianOperator char_trivial_v(const HermitianOperator& h, const HermitianOperator& dh, double omega,
                                 double t) {
    if (omega <= 0.0) throw std::invalid_argument("char_trivial_v: omega must be positive");
    const Matrix v = adjoint_power(h.mat(), dh.mat(), 2) - omega * omega * dh.mat();
    const Eigen::Index d = v.rows();
    const cplx mean = v.trace() / double(d);
    const double vn = fro_norm(v);
    const double off = fro_norm(v - mean * Matrix::Identity(d, d));
    if (vn > 0.0 && off > 1e-8 * vn)
        throw std::invalid_argument("char_trivial_v: V is not proportional to the identity");
    const double sn = std::sin(omega * t);
    const double s2 = std::sin(0.5 * omega * t);
    const Matrix w = commutator(h.mat(), dh.mat());
    // the scalar-free part of the general closed form
    Matrix out = -(sn / omega) * dh.mat() - cplx(0.0, 2.0 * s2 * s2 / (omega * omega)) * w;
    return HermitianOperator::from(out, 1e-10);
}

CharOperatorBundle make_char_bundle(const std::function<Matrix(double)>& h_of_theta, double theta, double t,
                                    const SeriesOptions& opts) {
    CharOperatorBundle b;
    b.t = t;
    const HermitianOperator h = HermitianOperator::from(h_of_theta(theta), 1e-9);

    // derivative by Richardson central differences for the closed form's inputs
    const double eps = 1e-5;
    auto dh_at = [&](double e) { return Matrix((h_of_theta(theta + e) - h_of_theta(theta - e)) / (2.0 * e)); };
    const Matrix dh_mat = (4.0 * dh_at(0.5 * eps) - dh_at(eps)) / 3.0;
    const HermitianOperator dh = HermitianOperator::from(dh_mat, 1e-7);

    const SeriesResult sr = char_series(h, dh, t, opts);
    if (sr.converged) b.series = sr.h;

    if (auto s = analyze(h, dh); s && s->pass && s->omega_sq > 0.0)
        b.closed = char_closed(h, dh, *s, t).mat();

    b.exact = char_exact(h_of_theta, theta, t).h;

    auto dev = [](const std::optional<Matrix>& a, const std::optional<Matrix>& x) {
        return (a && x) ? fro_norm(*a - *x) : 0.0;
    };
    b.dev_series_closed = dev(b.series, b.closed);
    b.dev_series_exact = dev(b.series, b.exact);
    b.dev_closed_exact = dev(b.closed, b.exact);
    return b;
}

}  // namespace qfisher
