// models.hpp — the four shipped systems: ferromagnetic two-spin, anisotropic
// XY two-spin, spin-one one-axis twisting, and the optomechanical cavity in a
// fixed photon sector. Each bundle carries constructors, analytic conserved
// structure, reference states and closed-form reference scalars.

#pragma once

#include "qfisher/char_operator.hpp"
#include "qfisher/conserved.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace qfisher {

using Params = std::map<std::string, double>;

double param(const Params& p, const std::string& key);
double param_or(const Params& p, const std::string& key, double fallback);

struct ModelBundle {
    std::string name;
    std::vector<std::string> param_names;
    std::vector<std::string> estimated;  // estimable parameter labels

    std::function<Eigen::Index(const Params&)> dim;
    std::function<Matrix(const Params&)> build_h;
    std::function<Matrix(const Params&, const std::string&)> build_dh;
    std::function<double(const Params&, const std::string&)> analytic_omega;
    std::function<Matrix(const Params&, const std::string&)> analytic_v;

    // residual verification of the analytic structure (windowed for the
    // Fock-truncated model, plain otherwise)
    std::function<ConservedStructure(const Params&, const std::string&)> verify_structure;

    // named reference states at the model's dimension
    std::function<std::map<std::string, PureState>(const Params&)> reference_states;

    // closed-form characteristic operator where the model has one
    std::function<Matrix(const Params&, const std::string&, double /*t*/)> char_closed_analytic;
};

ModelBundle h1_bundle();
ModelBundle h2_bundle();
ModelBundle h3_bundle();
ModelBundle optomech_bundle();

const ModelBundle& model_by_name(const std::string& name);
std::vector<std::string> model_names();

// ---- ferromagnetic two-spin reference formulas ------------------------------

// x(t) = (8 B f, -2 df/dt, t - 4 f) with f = f(Omega, t), Omega = 2 sqrt(1+4B^2)
Eigen::Vector3d h1_xvec(double b, double t);
double h1_fmax_paper(double b, double t);   // 4 |x|^2 as published
double h1_fmax_oracle(double b, double t);  // 16 |x|^2 from the variance formula
double h1_phi_opt(double b, double t);      // arctan(4 B f / df_dt), in [0, pi]
// x_x cos(phi) + x_y sin(phi) + x_z (a1/a2 - a2/a1)/2
double h1_opt_equation(double b, double t, double a1, double a2, double phi);
// 4 B [cos(phi) + B (a1/a2 - a2/a1)]
double h1_opt_equation_longtime(double b, double a1, double a2, double phi);
double h1_correlation_zz(double b, double beta);  // -1 + 2 cosh(v b)/(cosh(v b) + cosh b)
double h1_thermal_qfi(double b, double beta);        // exact closed form (re-centered SLD)
double h1_thermal_qfi_paper(double b, double beta);  // published form, for the audit
double h1_lowT_asymptote(double b, double temperature);  // (4/T^2)(1 - 1/v^2)

// ---- anisotropic two-spin --------------------------------------------------

Eigen::Vector3d h2_xvec_plus(double gamma, double bp, double t);
Eigen::Vector3d h2_xvec_minus(double bm, double t);
// 4 gamma B+ cos(phi) + (v+^2 - gamma^2)(a1/a2 - a2/a1)
double h2_opt_equation_longtime_plus(double gamma, double bp, double a1, double a2, double phi);
double h2_correlation_zz(double gamma, double bp, double bm, double beta);
double h2_thermal_qfi(double gamma, double bp, double bm, double beta, const std::string& which);
double h2_thermal_qfi_paper(double gamma, double bp, double bm, double beta, const std::string& which);

// ---- spin-one one-axis twisting ---------------------------------------------

// (chi^2 f - t) J_z - 2 B chi f I_x + (2 i chi / Omega^2) sin^2(Omega t/2) J_z I_x
Matrix h3_char_closed(double chi, double b, double t);
double h3_fmax_paper(double chi, double b, double t);   // 4B^2[4B^2 t^2/Omega^4 + chi^2]
double h3_fmax_oracle(double chi, double b, double t);  // Eq.-level variance on the NOON state
double h3_chi_sq_landmark_paper(double b, double t);    // 4 (B t)^{2/3} - 4 B^2 as published
double h3_chi_sq_landmark_formula(double b, double t);  // 2 (B t)^{2/3} - 4 B^2 (argmin of the published F)

// ---- optomechanics -----------------------------------------------------------

struct OptomechConfig {
    double wa = 2.0, wb = 1.0, m = 4.0, l = 4.0;
    int na = 1;
    int ncut = 12;
    std::string estimated = "m";  // "m" or "l"
};
OptomechConfig optomech_config(const Params& p);

double optomech_g(const OptomechConfig& c);        // sqrt(2) * (wa/l) sqrt(1/(2 m wb))
double optomech_gprime(const OptomechConfig& c);   // d g / d (m or l)
// paper-form vacuum curve (n_a g'/wb)^2 [1 - cos(wb t)]
double optomech_vacuum_curve_paper(const OptomechConfig& c, double t);
double optomech_fm_max_paper(const OptomechConfig& c);  // n_a^2 wa^2 / (4 m^3 l^2 wb^5)
double optomech_fl_max_paper(const OptomechConfig& c);  // n_a^2 wa^2 / (m l^4 wb^3)
// in-sector Hamiltonian on dim levels (window + padding handled by the caller)
Matrix optomech_h_sector(const OptomechConfig& c, Eigen::Index dim);
Matrix optomech_dh_sector(const OptomechConfig& c, Eigen::Index dim);
// full two-mode Hamiltonian on (na_cut) x (ncut) levels for the sector oracle
Matrix optomech_h_full(const OptomechConfig& c, Eigen::Index na_cut);
// leading corner of a padded-space operator
Matrix window(const Matrix& big, Eigen::Index dim);

// ---- optimal state scan -------------------------------------------------------

struct ScanResult {
    double best_qfi = 0.0;
    double best_a1 = 0.0, best_a2 = 0.0, best_phi = 0.0;
    double opt_equation_residual = 0.0;       // long-time equation at the maximizer
    double family_max_analytic = 0.0;         // 16 |x|^2
    double random_scan_max = 0.0;             // best of the unrestricted random scan
    int random_samples = 0;
};

// Exhaustive scan of the a1|00> + a2 e^{i phi}|11> family (grid + local
// refinement) followed by a random pure-state scan, for H1-type models.
ScanResult optimal_state_scan(double b, double t, int ratio_points = 41, int phi_points = 64,
                              int random_samples = 10000, unsigned seed = 12345);

}  // namespace qfisher
