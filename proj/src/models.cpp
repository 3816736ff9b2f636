#include "qfisher/models.hpp"

#include "qfisher/ops.hpp"
#include "qfisher/qfi.hpp"
#include "qfisher/thermal.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace qfisher {

double param(const Params& p, const std::string& key) {
    const auto it = p.find(key);
    if (it == p.end()) throw std::invalid_argument("missing parameter '" + key + "'");
    return it->second;
}

double param_or(const Params& p, const std::string& key, double fallback) {
    const auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

namespace {

// stable log(cosh x), log(sinh x) for x >= 0
double log_cosh(double x) {
    x = std::abs(x);
    return x + std::log1p(std::exp(-2.0 * x)) - std::log(2.0);
}
double log_sinh(double x) {
    if (x < 1e-8) return std::log(x);
    return x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0);
}

PureState two_qubit_state(cplx c00, cplx c01, cplx c10, cplx c11) {
    Vector v(4);
    v << c00, c01, c10, c11;
    return PureState::normalized(v);
}

}  // namespace

// ---- H1: ferromagnetic two-spin ------------------------------------------------

namespace {

Matrix h1_matrix(double b) {
    using namespace ops;
    return Matrix(-pauli1(sigma_x()) * pauli2(sigma_x()) - b * (pauli1(sigma_z()) + pauli2(sigma_z())));
}

Matrix h1_dh_matrix() {
    using namespace ops;
    return Matrix(-(pauli1(sigma_z()) + pauli2(sigma_z())));
}

double h1_v_of(double b) { return std::sqrt(1.0 + 4.0 * b * b); }

Matrix h1_v_matrix(double b) {
    using namespace ops;
    return Matrix(32.0 * b * (two_spin_jx() + 2.0 * b * two_spin_jz()));
}

}  // namespace

Eigen::Vector3d h1_xvec(double b, double t) {
    const double omega = 2.0 * h1_v_of(b);
    const double f = f_function(omega, t);
    return {8.0 * b * f, -2.0 * df_dt(omega, t), t - 4.0 * f};
}

double h1_fmax_paper(double b, double t) { return 4.0 * h1_xvec(b, t).squaredNorm(); }
double h1_fmax_oracle(double b, double t) { return 16.0 * h1_xvec(b, t).squaredNorm(); }

double h1_phi_opt(double b, double t) {
    const double omega = 2.0 * h1_v_of(b);
    return std::atan2(4.0 * b * f_function(omega, t), df_dt(omega, t));
}

double h1_opt_equation(double b, double t, double a1, double a2, double phi) {
    const Eigen::Vector3d x = h1_xvec(b, t);
    return x[0] * std::cos(phi) + x[1] * std::sin(phi) + 0.5 * x[2] * (a1 / a2 - a2 / a1);
}

double h1_opt_equation_longtime(double b, double a1, double a2, double phi) {
    return 4.0 * b * (std::cos(phi) + b * (a1 / a2 - a2 / a1));
}

double h1_correlation_zz(double b, double beta) {
    const double v = h1_v_of(b);
    // -1 + 2 cosh(v b)/(cosh(v b) + cosh b), computed through log-cosh ratios
    const double lv = log_cosh(v * beta);
    const double l1 = log_cosh(beta);
    return -1.0 + 2.0 / (1.0 + std::exp(l1 - lv));
}

namespace {
// shared shape of the thermal closed form: (16 v^2 r^2 - 8 r + 1) weight
double thermal_shape(double v, double r) { return 16.0 * v * v * r * r - 8.0 * r + 1.0; }
}  // namespace

double h1_thermal_qfi(double b, double beta) {
    const double v = h1_v_of(b);
    const double omega = 2.0 * v;
    const double r_half = r_function(0.5 * beta, omega);
    const double lv = log_cosh(v * beta);
    const double l1 = log_cosh(beta);
    const double cosh_ratio = 1.0 / (1.0 + std::exp(l1 - lv));  // cosh(v b)/(cosh(v b)+cosh b)
    const double second = thermal_shape(v, r_half) * 4.0 * beta * beta * cosh_ratio;
    // <dH>_T = -(4B/v) sinh(v beta)/(cosh(v beta) + cosh beta)
    const double sinh_ratio = std::exp(log_sinh(v * beta) - lv) * cosh_ratio;
    const double mean_dh = -(4.0 * b / v) * sinh_ratio;
    return second - beta * beta * mean_dh * mean_dh;
}

double h1_thermal_qfi_paper(double b, double beta) {
    const double v = h1_v_of(b);
    const double r = r_function(beta, 2.0 * v);
    const double lv = log_cosh(v * beta);
    const double l1 = log_cosh(beta);
    const double cosh_ratio = 1.0 / (1.0 + std::exp(l1 - lv));
    return thermal_shape(v, r) * 4.0 * beta * beta * cosh_ratio;
}

double h1_lowT_asymptote(double b, double temperature) {
    const double v = h1_v_of(b);
    return 4.0 / (temperature * temperature) * (1.0 - 1.0 / (v * v));
}

ModelBundle h1_bundle() {
    ModelBundle m;
    m.name = "h1";
    m.param_names = {"B"};
    m.estimated = {"B"};
    m.dim = [](const Params&) { return Eigen::Index(4); };
    m.build_h = [](const Params& p) { return h1_matrix(param(p, "B")); };
    m.build_dh = [](const Params&, const std::string&) { return h1_dh_matrix(); };
    m.analytic_omega = [](const Params& p, const std::string&) { return 2.0 * h1_v_of(param(p, "B")); };
    m.analytic_v = [](const Params& p, const std::string&) { return h1_v_matrix(param(p, "B")); };
    m.verify_structure = [](const Params& p, const std::string& which) {
        const HermitianOperator h = HermitianOperator::from(h1_matrix(param(p, "B")));
        const HermitianOperator dh = HermitianOperator::from(h1_dh_matrix());
        const double omega = 2.0 * h1_v_of(param(p, "B"));
        (void)which;
        return verify(h, dh, omega * omega, h1_v_matrix(param(p, "B")));
    };
    m.reference_states = [](const Params&) {
        const double s = 1.0 / std::sqrt(2.0);
        std::map<std::string, PureState> states;
        states.emplace("bell", two_qubit_state(s, 0, 0, s));
        states.emplace("bell_i", two_qubit_state(s, 0, 0, cplx(0, s)));
        states.emplace("odd_bell", two_qubit_state(0, s, s, 0));
        states.emplace("odd_bell_i", two_qubit_state(0, s, cplx(0, s), 0));
        return states;
    };
    m.char_closed_analytic = [](const Params& p, const std::string&, double t) {
        using namespace ops;
        const Eigen::Vector3d x = h1_xvec(param(p, "B"), t);
        return Matrix(4.0 * (x[0] * two_spin_jx() + x[1] * two_spin_jy() + x[2] * two_spin_jz()));
    };
    return m;
}

// ---- H2: anisotropic two-spin XY ------------------------------------------------

namespace {

Matrix h2_matrix(double gamma, double bp, double bm) {
    using namespace ops;
    return Matrix(-0.5 * (1.0 + gamma) * pauli1(sigma_x()) * pauli2(sigma_x()) -
                  0.5 * (1.0 - gamma) * pauli1(sigma_y()) * pauli2(sigma_y()) -
                  bp * (pauli1(sigma_z()) + pauli2(sigma_z())) -
                  bm * (pauli1(sigma_z()) - pauli2(sigma_z())));
}

Matrix h2_dh_matrix(const std::string& which) {
    using namespace ops;
    if (which == "Bp") return Matrix(-(pauli1(sigma_z()) + pauli2(sigma_z())));
    if (which == "Bm") return Matrix(-(pauli1(sigma_z()) - pauli2(sigma_z())));
    throw std::invalid_argument("h2: unknown parameter '" + which + "'");
}

double h2_vplus(double gamma, double bp) { return std::sqrt(gamma * gamma + 4.0 * bp * bp); }
double h2_vminus(double bm) { return std::sqrt(1.0 + 4.0 * bm * bm); }

Matrix h2_v_matrix(double gamma, double bp, double bm, const std::string& which) {
    using namespace ops;
    if (which == "Bp") return Matrix(32.0 * bp * (gamma * two_spin_jx() + 2.0 * bp * two_spin_jz()));
    if (which == "Bm") return Matrix(32.0 * bm * (two_spin_sy() + 2.0 * bm * two_spin_sz()));
    throw std::invalid_argument("h2: unknown parameter '" + which + "'");
}

}  // namespace

Eigen::Vector3d h2_xvec_plus(double gamma, double bp, double t) {
    const double omega = 2.0 * h2_vplus(gamma, bp);
    const double f = f_function(omega, t);
    return {8.0 * gamma * bp * f, -2.0 * gamma * df_dt(omega, t), t - 4.0 * gamma * gamma * f};
}

Eigen::Vector3d h2_xvec_minus(double bm, double t) {
    const double omega = 2.0 * h2_vminus(bm);
    const double f = f_function(omega, t);
    return {2.0 * df_dt(omega, t), 8.0 * bm * f, t - 4.0 * f};
}

double h2_opt_equation_longtime_plus(double gamma, double bp, double a1, double a2, double phi) {
    const double vp = h2_vplus(gamma, bp);
    return 4.0 * gamma * bp * std::cos(phi) + (vp * vp - gamma * gamma) * (a1 / a2 - a2 / a1);
}

double h2_correlation_zz(double gamma, double bp, double bm, double beta) {
    const double lp = log_cosh(h2_vplus(gamma, bp) * beta);
    const double lm = log_cosh(h2_vminus(bm) * beta);
    return -1.0 + 2.0 / (1.0 + std::exp(lm - lp));
}

namespace {
struct H2Thermal {
    double v, exch, b;           // sector speed, exchange coefficient, field
    double cosh_ratio;           // cosh(v beta)/(cosh(v+ beta) + cosh(v- beta))
    double sinh_ratio;           // sinh(v beta)/(cosh(v+ beta) + cosh(v- beta))
};

H2Thermal h2_sector(double gamma, double bp, double bm, double beta, const std::string& which) {
    const double vp = h2_vplus(gamma, bp);
    const double vm = h2_vminus(bm);
    const double lp = log_cosh(vp * beta);
    const double lm = log_cosh(vm * beta);
    const double lse = std::max(lp, lm) + std::log1p(std::exp(-std::abs(lp - lm)));
    H2Thermal s{};
    if (which == "Bp") {
        s.v = vp; s.exch = gamma; s.b = bp;
        s.cosh_ratio = std::exp(lp - lse);
        s.sinh_ratio = std::exp(log_sinh(vp * beta) - lse);
    } else if (which == "Bm") {
        s.v = vm; s.exch = 1.0; s.b = bm;
        s.cosh_ratio = std::exp(lm - lse);
        s.sinh_ratio = std::exp(log_sinh(vm * beta) - lse);
    } else {
        throw std::invalid_argument("h2: unknown parameter '" + which + "'");
    }
    return s;
}

double h2_thermal_shape(double exch, double v, double r) {
    return 16.0 * exch * exch * v * v * r * r - 8.0 * exch * exch * r + 1.0;
}
}  // namespace

double h2_thermal_qfi(double gamma, double bp, double bm, double beta, const std::string& which) {
    const H2Thermal s = h2_sector(gamma, bp, bm, beta, which);
    const double r_half = r_function(0.5 * beta, 2.0 * s.v);
    const double second = h2_thermal_shape(s.exch, s.v, r_half) * 4.0 * beta * beta * s.cosh_ratio;
    const double mean_dh = -(4.0 * s.b / s.v) * s.sinh_ratio;
    return second - beta * beta * mean_dh * mean_dh;
}

double h2_thermal_qfi_paper(double gamma, double bp, double bm, double beta, const std::string& which) {
    const H2Thermal s = h2_sector(gamma, bp, bm, beta, which);
    const double r = r_function(beta, 2.0 * s.v);
    return h2_thermal_shape(s.exch, s.v, r) * 4.0 * beta * beta * s.cosh_ratio;
}

ModelBundle h2_bundle() {
    ModelBundle m;
    m.name = "h2";
    m.param_names = {"gamma", "Bp", "Bm"};
    m.estimated = {"Bp", "Bm"};
    m.dim = [](const Params&) { return Eigen::Index(4); };
    m.build_h = [](const Params& p) { return h2_matrix(param(p, "gamma"), param(p, "Bp"), param(p, "Bm")); };
    m.build_dh = [](const Params&, const std::string& which) { return h2_dh_matrix(which); };
    m.analytic_omega = [](const Params& p, const std::string& which) {
        if (which == "Bp") return 2.0 * h2_vplus(param(p, "gamma"), param(p, "Bp"));
        if (which == "Bm") return 2.0 * h2_vminus(param(p, "Bm"));
        throw std::invalid_argument("h2: unknown parameter '" + which + "'");
    };
    m.analytic_v = [](const Params& p, const std::string& which) {
        return h2_v_matrix(param(p, "gamma"), param(p, "Bp"), param(p, "Bm"), which);
    };
    m.verify_structure = [](const Params& p, const std::string& which) {
        const double gamma = param(p, "gamma"), bp = param(p, "Bp"), bm = param(p, "Bm");
        const HermitianOperator h = HermitianOperator::from(h2_matrix(gamma, bp, bm));
        const HermitianOperator dh = HermitianOperator::from(h2_dh_matrix(which));
        const double v = which == "Bp" ? h2_vplus(gamma, bp) : h2_vminus(bm);
        return verify(h, dh, 4.0 * v * v, h2_v_matrix(gamma, bp, bm, which));
    };
    m.reference_states = h1_bundle().reference_states;
    m.char_closed_analytic = [](const Params& p, const std::string& which, double t) {
        using namespace ops;
        if (which == "Bp") {
            const Eigen::Vector3d x = h2_xvec_plus(param(p, "gamma"), param(p, "Bp"), t);
            return Matrix(4.0 * (x[0] * two_spin_jx() + x[1] * two_spin_jy() + x[2] * two_spin_jz()));
        }
        const Eigen::Vector3d x = h2_xvec_minus(param(p, "Bm"), t);
        return Matrix(4.0 * (x[0] * two_spin_sx() + x[1] * two_spin_sy() + x[2] * two_spin_sz()));
    };
    return m;
}

// ---- H3: spin-one one-axis twisting ----------------------------------------------

namespace {

Matrix h3_matrix(double chi, double b) {
    using namespace ops;
    return Matrix(chi * spin1_jx() * spin1_jx() + b * spin1_jz());
}

double h3_omega(double chi, double b) { return std::sqrt(chi * chi + 4.0 * b * b); }

Matrix h3_v_matrix(double chi, double b) {
    using namespace ops;
    const double omega_sq = chi * chi + 4.0 * b * b;
    return Matrix((chi * chi - omega_sq) * spin1_jz() - 2.0 * b * chi * spin1_exchange());
}

}  // namespace

Matrix h3_char_closed(double chi, double b, double t) {
    using namespace ops;
    const double omega = h3_omega(chi, b);
    const double f = f_function(omega, t);
    const double s2 = std::sin(0.5 * omega * t);
    const Matrix jz_ix = spin1_jz() * spin1_exchange();
    return Matrix((chi * chi * f - t) * spin1_jz() - 2.0 * b * chi * f * spin1_exchange() +
                  cplx(0.0, 2.0 * chi * s2 * s2 / (omega * omega)) * jz_ix);
}

double h3_fmax_paper(double chi, double b, double t) {
    const double omega_sq = chi * chi + 4.0 * b * b;
    return 4.0 * b * b * (4.0 * b * b * t * t / (omega_sq * omega_sq) + chi * chi);
}

double h3_fmax_oracle(double chi, double b, double t) {
    const double omega = h3_omega(chi, b);
    const double f = f_function(omega, t);
    const double alpha = chi * chi * f - t;
    const double bterm = 2.0 * b * chi * f;
    return 4.0 * (alpha * alpha + bterm * bterm);
}

double h3_chi_sq_landmark_paper(double b, double t) { return 4.0 * std::pow(b * t, 2.0 / 3.0) - 4.0 * b * b; }
double h3_chi_sq_landmark_formula(double b, double t) { return 2.0 * std::pow(b * t, 2.0 / 3.0) - 4.0 * b * b; }

ModelBundle h3_bundle() {
    ModelBundle m;
    m.name = "h3";
    m.param_names = {"chi", "B"};
    m.estimated = {"B"};
    m.dim = [](const Params&) { return Eigen::Index(3); };
    m.build_h = [](const Params& p) { return h3_matrix(param(p, "chi"), param(p, "B")); };
    m.build_dh = [](const Params&, const std::string&) { return Matrix(ops::spin1_jz()); };
    m.analytic_omega = [](const Params& p, const std::string&) {
        return h3_omega(param(p, "chi"), param(p, "B"));
    };
    m.analytic_v = [](const Params& p, const std::string&) {
        return h3_v_matrix(param(p, "chi"), param(p, "B"));
    };
    m.verify_structure = [](const Params& p, const std::string&) {
        const HermitianOperator h = HermitianOperator::from(h3_matrix(param(p, "chi"), param(p, "B")));
        const HermitianOperator dh = HermitianOperator::from(Matrix(ops::spin1_jz()));
        const double omega = h3_omega(param(p, "chi"), param(p, "B"));
        return verify(h, dh, omega * omega, h3_v_matrix(param(p, "chi"), param(p, "B")));
    };
    m.reference_states = [](const Params&) {
        std::map<std::string, PureState> states;
        Vector noon(3);
        noon << 1.0 / std::sqrt(2.0), 0.0, cplx(0.0, 1.0 / std::sqrt(2.0));
        states.emplace("noon", PureState::from(noon));
        Vector mid(3);
        mid << 0.0, 1.0, 0.0;
        states.emplace("mid", PureState::from(mid));
        return states;
    };
    m.char_closed_analytic = [](const Params& p, const std::string&, double t) {
        return h3_char_closed(param(p, "chi"), param(p, "B"), t);
    };
    return m;
}

// ---- optomechanics -----------------------------------------------------------------

OptomechConfig optomech_config(const Params& p) {
    OptomechConfig c;
    c.wa = param_or(p, "wa", c.wa);
    c.wb = param_or(p, "wb", c.wb);
    c.m = param_or(p, "m", c.m);
    c.l = param_or(p, "l", c.l);
    c.na = int(param_or(p, "na", c.na));
    c.ncut = int(param_or(p, "ncut", c.ncut));
    c.estimated = param_or(p, "param_l", 0.0) > 0.5 ? "l" : "m";
    if (c.ncut < 8) throw std::invalid_argument("optomech: ncut must be at least 8");
    return c;
}

double optomech_g(const OptomechConfig& c) {
    // g = sqrt(2) gbar with gbar = (wa/l) sqrt(1/(2 m wb))
    return c.wa / (c.l * std::sqrt(c.m * c.wb));
}

double optomech_gprime(const OptomechConfig& c) {
    if (c.estimated == "m") return -0.5 * optomech_g(c) / c.m;
    if (c.estimated == "l") return -optomech_g(c) / c.l;
    throw std::invalid_argument("optomech: estimated parameter must be m or l");
}

double optomech_vacuum_curve_paper(const OptomechConfig& c, double t) {
    const double a = c.na * optomech_gprime(c) / c.wb;
    return a * a * (1.0 - std::cos(c.wb * t));
}

double optomech_fm_max_paper(const OptomechConfig& c) {
    return c.na * c.na * c.wa * c.wa / (4.0 * std::pow(c.m, 3) * c.l * c.l * std::pow(c.wb, 5));
}

double optomech_fl_max_paper(const OptomechConfig& c) {
    return c.na * c.na * c.wa * c.wa / (c.m * std::pow(c.l, 4) * std::pow(c.wb, 3));
}

Matrix optomech_h_sector(const OptomechConfig& c, Eigen::Index dim) {
    using namespace ops;
    const double g = optomech_g(c);
    return Matrix(c.wa * double(c.na) * identity(dim) + c.wb * number(dim) -
                  g * double(c.na) * position(dim));
}

Matrix optomech_dh_sector(const OptomechConfig& c, Eigen::Index dim) {
    using namespace ops;
    return Matrix(-optomech_gprime(c) * double(c.na) * position(dim));
}

Matrix optomech_h_full(const OptomechConfig& c, Eigen::Index na_cut) {
    using namespace ops;
    const double g = optomech_g(c);
    const Matrix na = number(na_cut);
    const Matrix ib = identity(c.ncut);
    return Matrix(c.wa * kron(na, ib) + c.wb * kron(identity(na_cut), number(c.ncut)) -
                  g * kron(na, position(c.ncut)));
}

Matrix window(const Matrix& big, Eigen::Index dim) { return big.topLeftCorner(dim, dim); }

namespace {
constexpr Eigen::Index kVerifyPad = 6;

ConservedStructure optomech_verify(const Params& p, const std::string& which) {
    OptomechConfig c = optomech_config(p);
    if (!which.empty()) c.estimated = which;
    const Eigen::Index big = c.ncut + kVerifyPad;
    const Matrix h = optomech_h_sector(c, big);
    const Matrix dh = optomech_dh_sector(c, big);
    const double omega_sq = c.wb * c.wb;

    // interior identities: evaluate on the padded space, measure on the window
    const Matrix hw = window(h, c.ncut);
    const Matrix w = window(commutator(h, dh), c.ncut);
    const Matrix w2 = window(adjoint_power(h, commutator(h, dh), 2), c.ncut);
    const Matrix v = window(Matrix(adjoint_power(h, dh, 2) - omega_sq * dh), c.ncut);

    ConservedStructure s;
    s.omega_sq = omega_sq;
    s.v = v;
    const double vn = fro_norm(v);
    const double hn = fro_norm(hw);
    s.conservation_residual = (vn > 0 && hn > 0) ? fro_norm(commutator(v, hw)) / (vn * hn) : 0.0;
    const double wn = fro_norm(w);
    if (wn <= 1e-12) {
        s.eigenop_residual = 0.0;
    } else {
        const double denom = fro_norm(w2) + omega_sq * wn;
        s.eigenop_residual = denom > 0 ? fro_norm(w2 - omega_sq * w) / denom : 0.0;
    }
    s.pass = s.conservation_residual <= 1e-8 && s.eigenop_residual <= 1e-8;
    return s;
}
}  // namespace

ModelBundle optomech_bundle() {
    ModelBundle m;
    m.name = "optomech";
    m.param_names = {"wa", "wb", "m", "l", "na", "ncut", "param_l"};
    m.estimated = {"m", "l"};
    m.dim = [](const Params& p) { return Eigen::Index(optomech_config(p).ncut); };
    m.build_h = [](const Params& p) {
        const OptomechConfig c = optomech_config(p);
        return optomech_h_sector(c, c.ncut);
    };
    m.build_dh = [](const Params& p, const std::string& which) {
        OptomechConfig c = optomech_config(p);
        if (!which.empty()) c.estimated = which;
        return optomech_dh_sector(c, c.ncut);
    };
    m.analytic_omega = [](const Params& p, const std::string&) { return optomech_config(p).wb; };
    m.analytic_v = [](const Params& p, const std::string& which) {
        OptomechConfig c = optomech_config(p);
        if (!which.empty()) c.estimated = which;
        const double scalar = c.wb * optomech_g(c) * optomech_gprime(c) * double(c.na) * double(c.na);
        return Matrix(scalar * ops::identity(c.ncut));
    };
    m.verify_structure = optomech_verify;
    m.reference_states = [](const Params& p) {
        const OptomechConfig c = optomech_config(p);
        std::map<std::string, PureState> states;
        states.emplace("vacuum", PureState::from(ops::fock(c.ncut, 0)));
        states.emplace("coherent", PureState::from(ops::coherent(c.ncut, 0.3)));
        return states;
    };
    m.char_closed_analytic = [](const Params& p, const std::string& which, double t) {
        using namespace ops;
        OptomechConfig c = optomech_config(p);
        if (!which.empty()) c.estimated = which;
        const double g = optomech_g(c);
        const double gp = optomech_gprime(c);
        const double na = double(c.na);
        const double f = f_function(c.wb, t);
        const double pre = na * gp / c.wb;
        return Matrix(pre * (std::sin(c.wb * t) * position(c.ncut) +
                             (1.0 - std::cos(c.wb * t)) * momentum(c.ncut)) +
                      g * gp * c.wb * f * na * na * identity(c.ncut));
    };
    return m;
}

// ---- registry ------------------------------------------------------------------

const ModelBundle& model_by_name(const std::string& name) {
    static const std::map<std::string, ModelBundle> registry = [] {
        std::map<std::string, ModelBundle> r;
        r.emplace("h1", h1_bundle());
        r.emplace("h2", h2_bundle());
        r.emplace("h3", h3_bundle());
        r.emplace("optomech", optomech_bundle());
        return r;
    }();
    const auto it = registry.find(name);
    if (it == registry.end()) throw std::invalid_argument("unknown model '" + name + "'");
    return it->second;
}

std::vector<std::string> model_names() { return {"h1", "h2", "h3", "optomech"}; }

// ---- optimal state scan -----------------------------------------------------------

namespace {
PureState h1_family_state(double w, double phi) {
    // a1 = cos w, a2 = sin w
    return two_qubit_state(std::cos(w), 0, 0, std::polar(std::sin(w), phi));
}
}  // namespace

ScanResult optimal_state_scan(double b, double t, int ratio_points, int phi_points, int random_samples,
                              unsigned seed) {
    const ModelBundle m = h1_bundle();
    const Params p{{"B", b}};
    const Matrix h_char = m.char_closed_analytic(p, "B", t);
    const Eigen::Vector3d x = h1_xvec(b, t);

    ScanResult res;
    res.family_max_analytic = 16.0 * x.squaredNorm();

    // coarse grid over the restricted family: a1/a2 in [0.2, 1], phi in [0, 2 pi)
    double best_w = 0.0, best_phi = 0.0, best = -1.0;
    for (int i = 0; i < ratio_points; ++i) {
        const double ratio = 0.2 + 0.8 * double(i) / double(ratio_points - 1);
        const double w = std::atan2(1.0, ratio);  // a1/a2 = ratio
        for (int k = 0; k < phi_points; ++k) {
            const double phi = 2.0 * std::numbers::pi * double(k) / double(phi_points);
            const double f = qfi_pure(h1_family_state(w, phi), h_char);
            if (f > best) {
                best = f;
                best_w = w;
                best_phi = phi;
            }
        }
    }
    // refine: for the best phi, the stationarity condition x.<J> = 0 fixes the
    // amplitude mixing angle through tan(2w) = -x_z / (x_x cos phi + x_y sin phi)
    const double xperp = x[0] * std::cos(best_phi) + x[1] * std::sin(best_phi);
    double two_w = std::atan2(-x[2], xperp);
    if (two_w <= 0.0) two_w += std::numbers::pi;  // keep a1, a2 > 0
    best_w = 0.5 * two_w;
    res.best_qfi = qfi_pure(h1_family_state(best_w, best_phi), h_char);
    res.best_a1 = std::cos(best_w);
    res.best_a2 = std::sin(best_w);
    res.best_phi = best_phi;
    res.opt_equation_residual = h1_opt_equation_longtime(b, res.best_a1, res.best_a2, res.best_phi);

    // unrestricted random scan
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double rand_best = 0.0;
    for (int s = 0; s < random_samples; ++s) {
        Vector v(4);
        for (int i = 0; i < 4; ++i) v[i] = cplx(gauss(rng), gauss(rng));
        rand_best = std::max(rand_best, qfi_pure(PureState::normalized(v), h_char));
    }
    res.random_scan_max = rand_best;
    res.random_samples = random_samples;
    return res;
}

}  // namespace qfisher
