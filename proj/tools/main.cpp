// qfisher command line: structure verification, characteristic-operator
// diagnostics, QFI evaluation, thermal curves, the alternative information
// measure, deterministic sweeps and the prefactor audit.

#include "qfisher/alt_qfi.hpp"
#include "qfisher/audit.hpp"
#include "qfisher/char_operator.hpp"
#include "qfisher/models.hpp"
#include "qfisher/qfi.hpp"
#include "qfisher/sweep.hpp"
#include "qfisher/thermal.hpp"
#include "qfisher/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace {

using namespace qfisher;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct CommonArgs {
    std::string model;
    std::string config_path;
    std::map<std::string, std::string> raw;  // axis-capable raw strings per flag
    std::string which;                        // estimated parameter
    double t = 1.0;
    std::string state;
    unsigned seed = 1;
    std::string out_path;
};

void add_model_flags(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("model", args.model, "model id: h1, h2, h3, optomech, random")->required();
    cmd->add_option("--config", args.config_path, "JSON config; command-line flags win");
    for (const char* key : {"B", "gamma", "Bp", "Bm", "chi", "wa", "wb", "m", "l", "na", "ncut"})
        cmd->add_option(std::string("--") + key, args.raw[key], "model parameter (number or start:stop:points)");
    cmd->add_option("--param", args.which, "estimated parameter label (default: model's first)");
    cmd->add_option("--t", args.t, "evolution time");
    cmd->add_option("--state", args.state, "named reference state");
    cmd->add_option("--seed", args.seed, "random seed");
    cmd->add_option("--out", args.out_path, "output file (default stdout)");
}

void merge_config(CommonArgs& args) {
    if (args.config_path.empty()) return;
    std::ifstream in(args.config_path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + args.config_path);
    nlohmann::json j;
    in >> j;
    for (auto& [key, value] : j.items()) {
        if (key == "t" && args.t == 1.0) args.t = value.get<double>();
        else if (key == "state" && args.state.empty()) args.state = value.get<std::string>();
        else if (key == "param" && args.which.empty()) args.which = value.get<std::string>();
        else if (args.raw.count(key) && args.raw[key].empty())
            args.raw[key] = value.is_string() ? value.get<std::string>() : std::to_string(value.get<double>());
    }
}

Params fixed_params(const CommonArgs& args) {
    Params p;
    for (const auto& [key, text] : args.raw) {
        if (text.empty()) continue;
        if (text.find(':') != std::string::npos || text.find(',') != std::string::npos) continue;
        if (key == "dim") continue;
        p[key] = std::stod(text);
    }
    return p;
}

// the single swept axis, if any flag carries a range
std::optional<Axis> swept_axis(const CommonArgs& args) {
    for (const auto& [key, text] : args.raw)
        if (!text.empty() && (text.find(':') != std::string::npos || text.find(',') != std::string::npos))
            return Axis::parse(key, text);
    return std::nullopt;
}

std::string pick_which(const ModelBundle& m, const CommonArgs& args) {
    if (!args.which.empty()) return args.which;
    return m.estimated.front();
}

std::ostream& open_out(const CommonArgs& args, std::ofstream& file) {
    if (args.out_path.empty()) return std::cout;
    file.open(args.out_path);
    if (!file) throw CLI::ValidationError("--out", "cannot open " + args.out_path);
    return file;
}

int cmd_verify(const CommonArgs& args) {
    if (args.model == "random") {
        // negative control: a generic Hermitian pair has no conserved structure
        int dim = 4;
        if (const auto d = args.raw.find("dim"); d != args.raw.end() && !d->second.empty())
            dim = int(std::stod(d->second));
        std::mt19937 rng(args.seed);
        std::normal_distribution<double> gauss;
        auto rand_herm = [&] {
            Matrix a(dim, dim);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) a(i, j) = cplx(gauss(rng), gauss(rng));
            return Matrix(0.5 * (a + a.adjoint()));
        };
        const HermitianOperator h = HermitianOperator::from(rand_herm());
        const HermitianOperator dh = HermitianOperator::from(rand_herm());
        const auto est = estimate_omega_sq(h, dh);
        if (est.parameter_commuting) {
            std::cout << "random pair: parameter-commuting (degenerate draw)\n";
            return kExitCheckFailed;
        }
        const auto s = verify(h, dh, est.omega_sq, build_v(h, dh, est.omega_sq).mat());
        std::printf("random dim=%d seed=%u omega_sq=%.6e conservation=%.3e eigenop=%.3e pass=%d\n", dim,
                    args.seed, s.omega_sq, s.conservation_residual, s.eigenop_residual, int(s.pass));
        return s.pass ? kExitPass : kExitCheckFailed;
    }

    const ModelBundle& m = model_by_name(args.model);
    const std::vector<std::string> which_list =
        args.which.empty() ? m.estimated : std::vector<std::string>{args.which};
    const Params base = fixed_params(args);
    const auto axis = swept_axis(args);
    const std::vector<double> values = axis ? axis->values() : std::vector<double>{0.0};

    bool all_pass = true;
    for (const auto& which : which_list) {
        std::printf("model=%s param=%s\n", args.model.c_str(), which.c_str());
        std::printf("%-14s %-14s %-14s %-14s %s\n", axis ? axis->name.c_str() : "point", "omega_sq",
                    "conservation", "eigenop", "pass");
        for (double v : values) {
            Params p = base;
            if (axis) p[axis->name] = v;
            const auto s = m.verify_structure(p, which);
            all_pass = all_pass && s.pass;
            std::printf("%-14.6g %-14.6g %-14.3e %-14.3e %d\n", axis ? v : 0.0, s.omega_sq,
                        s.conservation_residual, s.eigenop_residual, int(s.pass));
        }
    }
    return all_pass ? kExitPass : kExitCheckFailed;
}

int cmd_charop(const CommonArgs& args) {
    const ModelBundle& m = model_by_name(args.model);
    const std::string which = pick_which(m, args);
    Params p = fixed_params(args);
    auto h_of = [&](double th) {
        Params q = p;
        q[which] = th;
        return m.build_h(q);
    };
    const CharOperatorBundle b = make_char_bundle(h_of, param(p, which), args.t);
    std::printf("model=%s param=%s t=%.6g\n", args.model.c_str(), which.c_str(), args.t);
    std::printf("series:  %s\n", b.series ? "built" : "unavailable (did not converge)");
    std::printf("closed:  %s\n", b.closed ? "built" : "unavailable (structure not verified)");
    std::printf("exact:   built\n");
    std::printf("dev_series_closed = %.6e\n", b.dev_series_closed);
    std::printf("dev_series_exact  = %.6e\n", b.dev_series_exact);
    std::printf("dev_closed_exact  = %.6e\n", b.dev_closed_exact);
    const double scale = b.closed ? 1.0 + b.closed->norm() : 1.0;
    const bool pass = (!b.series || !b.closed || b.dev_series_closed <= 1e-9 * scale) &&
                      (!b.closed || b.dev_closed_exact <= 1e-6 * scale);
    return pass ? kExitPass : kExitCheckFailed;
}

int cmd_qfi(const CommonArgs& args, bool thermal_state_flag, double temperature) {
    const ModelBundle& m = model_by_name(args.model);
    const std::string which = pick_which(m, args);
    Params p = fixed_params(args);
    const Matrix hc = m.char_closed_analytic(p, which, args.t);
    auto h_of = [&](double th) {
        Params q = p;
        q[which] = th;
        return m.build_h(q);
    };

    if (thermal_state_flag) {
        const ThermalState ts = thermal_state(HermitianOperator::from(m.build_h(p)), 1.0 / temperature);
        const double f = qfi_mixed(ts.state, hc);
        const double f_fd = qfi_fd_oracle(h_of, param(p, which), args.t, ts.state);
        std::printf("qfi_mixed=%.12e fd_oracle=%.12e abs_diff=%.3e\n", f, f_fd, std::abs(f - f_fd));
        return std::abs(f - f_fd) <= 1e-6 * (1.0 + f) ? kExitPass : kExitCheckFailed;
    }

    const auto states = m.reference_states(p);
    const PureState psi = args.state.empty() ? states.begin()->second : states.at(args.state);
    const double f = qfi_pure(psi, hc);
    const double f_fd = qfi_fd_oracle(h_of, param(p, which), args.t, psi);
    const auto bound = crb_bound(f, 1);
    std::printf("qfi=%.12e fd_oracle=%.12e abs_diff=%.3e crb=%s\n", f, f_fd, std::abs(f - f_fd),
                bound ? format_double(*bound).c_str() : "unestimable");
    return std::abs(f - f_fd) <= 1e-5 * (1.0 + f) ? kExitPass : kExitCheckFailed;
}

int cmd_qfim(const CommonArgs& args) {
    const ModelBundle& m = model_by_name(args.model);
    if (m.estimated.size() < 2) {
        std::cerr << "qfim: model '" << args.model << "' exposes a single parameter\n";
        return kExitUsage;
    }
    Params p = fixed_params(args);
    std::vector<Matrix> gens;
    for (const auto& which : m.estimated) gens.push_back(m.char_closed_analytic(p, which, args.t));

    const auto states = m.reference_states(p);
    const PureState psi = args.state.empty() ? states.begin()->second : states.at(args.state);
    const QfimMatrix f = qfim_pure(psi, gens, m.estimated);
    std::printf("labels:");
    for (const auto& l : f.labels) std::printf(" %s", l.c_str());
    std::printf("\n");
    for (Eigen::Index i = 0; i < f.entries.rows(); ++i) {
        for (Eigen::Index j = 0; j < f.entries.cols(); ++j) std::printf(" %.12e", f.entries(i, j));
        std::printf("\n");
    }
    std::printf("psd_ok=%d min_eigenvalue=%.3e\n", int(f.psd_ok), f.min_eigenvalue);
    const double sat = saturation_check(psi, gens[0], gens[1]);
    std::printf("saturation |<[H+,H-]>| = %.3e\n", sat);
    const Eigen::VectorXd bounds = crb_multiparameter(f);
    for (Eigen::Index i = 0; i < bounds.size(); ++i)
        std::printf("var_bound[%s] = %.12e\n", f.labels[size_t(i)].c_str(), bounds[i]);
    return kExitPass;
}

int cmd_thermal(const CommonArgs& args, double temperature) {
    const ModelBundle& m = model_by_name(args.model);
    const std::string which = pick_which(m, args);
    Params p = fixed_params(args);
    const double beta = 1.0 / temperature;
    const HermitianOperator h = HermitianOperator::from(m.build_h(p));
    const HermitianOperator dh = HermitianOperator::from(m.build_dh(p, which));
    const double omega = m.analytic_omega(p, which);
    const Matrix v = m.analytic_v(p, which);
    const ThermalState ts = thermal_state(h, beta);
    const double f = qfi_thermal(dh, v, omega, beta, ts.state);
    const double f_paper = qfi_thermal_paper_form(dh, v, omega, beta, ts.state);
    auto rho_at = [&](double th) {
        Params q = p;
        q[which] = th;
        return thermal_state(HermitianOperator::from(m.build_h(q)), beta).state.density();
    };
    const double f_oracle = qfi_fd_family(rho_at, param(p, which));
    std::printf("T=%.6g beta=%.6g\n", temperature, beta);
    std::printf("f_thermal=%.12e f_sld_oracle=%.12e abs_diff=%.3e\n", f, f_oracle, std::abs(f - f_oracle));
    std::printf("f_published_form=%.12e ratio_vs_oracle=%.6e\n", f_paper,
                f_oracle != 0.0 ? f_paper / f_oracle : 0.0);
    return std::abs(f - f_oracle) <= 1e-6 * (1.0 + f) ? kExitPass : kExitCheckFailed;
}

int cmd_altqfi(const CommonArgs& args, bool thermal_family, double temperature) {
    const ModelBundle& m = model_by_name(args.model);
    const std::string which = pick_which(m, args);
    Params p = fixed_params(args);

    if (thermal_family) {
        const double beta = 1.0 / temperature;
        const HermitianOperator h = HermitianOperator::from(m.build_h(p));
        const HermitianOperator dh = HermitianOperator::from(m.build_dh(p, which));
        const ThermalState ts = thermal_state(h, beta);
        const GammaPair g =
            gamma_thermal_closed(h, dh, m.analytic_v(p, which), m.analytic_omega(p, which), beta);
        const AltQfiThermal i = alt_qfi_thermal(g, ts.state);
        auto rho_at = [&](double th) {
            Params q = p;
            q[which] = th;
            return thermal_state(HermitianOperator::from(m.build_h(q)), beta).state.density();
        };
        const AltQfiOracleResult direct = alt_qfi_direct_oracle(rho_at, param(p, which));
        std::printf("alt_qfi=%.12e direct_oracle=%.12e raw_published_order=%.12e\n", i.value, direct.value,
                    i.raw_published);
        return std::abs(i.value - direct.value) <= 1e-5 * (1.0 + std::abs(direct.value)) ? kExitPass
                                                                                         : kExitCheckFailed;
    }

    const Matrix hc = m.char_closed_analytic(p, which, args.t);
    const auto states = m.reference_states(p);
    const PureState psi = args.state.empty() ? states.begin()->second : states.at(args.state);
    const AltQfiValue i = alt_qfi_unitary(SpectralState::pure(psi), hc);
    const double f = qfi_pure(psi, hc);
    std::printf("alt_qfi_trace=%.12e alt_qfi_spectral=%.12e qfi=%.12e ratio=%.6f\n", i.trace_form,
                i.spectral_form, f, f > 0 ? i.trace_form / f : 0.0);
    return kExitPass;
}

int cmd_sweep(const CommonArgs& args, SweepSpec spec) {
    const ModelBundle& m = model_by_name(args.model);
    spec.model = args.model;
    spec.base = fixed_params(args);
    spec.estimated = pick_which(m, args);
    spec.t = args.t;
    spec.state = args.state;
    spec.seed = args.seed;
    const auto axis = swept_axis(args);
    if (!axis) {
        std::cerr << "sweep: provide one ranged parameter flag (start:stop:points or a,b,c)\n";
        return kExitUsage;
    }
    spec.param_axis = *axis;
    if (spec.thermal && spec.temperatures.empty()) spec.temperatures = {0.5, 1.0, 1.5};
    std::ofstream file;
    std::ostream& out = open_out(args, file);
    run_sweep(spec, out);
    return kExitPass;
}

int cmd_audit(const CommonArgs& args) {
    const auto rows = run_factor_audit();
    std::ofstream file;
    std::ostream& out = open_out(args, file);
    out << format_audit_table(rows);
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum Fisher information with conserved-quantity closed forms"};
    app.set_version_flag("--version", qfisher::kVersion);
    app.require_subcommand(1);

    CommonArgs args;
    bool flag_thermal = false, flag_optimal = false, flag_longtime = false, flag_altqfi = false,
         flag_charop = false;
    double temperature = 1.0;
    std::string temps_text;
    std::string time_axis_text;

    auto* verify_cmd = app.add_subcommand("verify", "conserved-structure residuals");
    add_model_flags(verify_cmd, args);
    verify_cmd->add_option("--dim", args.raw["dim"], "dimension for the random negative control");

    auto* charop_cmd = app.add_subcommand("charop", "three-way characteristic operator check");
    add_model_flags(charop_cmd, args);

    auto* qfi_cmd = app.add_subcommand("qfi", "QFI for a reference state");
    add_model_flags(qfi_cmd, args);
    qfi_cmd->add_flag("--thermal", flag_thermal, "use the Gibbs state as the initial state");
    qfi_cmd->add_option("--T", temperature, "temperature for --thermal");

    auto* qfim_cmd = app.add_subcommand("qfim", "QFI matrix for two-parameter models");
    add_model_flags(qfim_cmd, args);

    auto* thermal_cmd = app.add_subcommand("thermal", "thermal-family QFI against the SLD oracle");
    add_model_flags(thermal_cmd, args);
    thermal_cmd->add_option("--T", temperature, "temperature")->required();

    auto* altqfi_cmd = app.add_subcommand("altqfi", "alternative information measure");
    add_model_flags(altqfi_cmd, args);
    altqfi_cmd->add_flag("--thermal", flag_thermal, "thermal family instead of unitary");
    altqfi_cmd->add_option("--T", temperature, "temperature for --thermal");

    auto* sweep_cmd = app.add_subcommand("sweep", "deterministic CSV sweep");
    add_model_flags(sweep_cmd, args);
    sweep_cmd->add_flag("--thermal", flag_thermal, "thermal-family sweep");
    sweep_cmd->add_option("--T", temps_text, "temperature list for --thermal (a,b,c)");
    sweep_cmd->add_flag("--optimal-points", flag_optimal, "emit optimal-state loci");
    sweep_cmd->add_flag("--longtime", flag_longtime, "use the long-time optimality equation");
    sweep_cmd->add_flag("--altqfi", flag_altqfi, "append alternative-information columns");
    sweep_cmd->add_flag("--charop-deviation", flag_charop, "append characteristic-operator deviations");
    sweep_cmd->add_option("--time-axis", time_axis_text, "time axis start:stop:points");

    auto* audit_cmd = app.add_subcommand("audit", "prefactor audit table");
    audit_cmd->add_option("--out", args.out_path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        merge_config(args);
        if (verify_cmd->parsed()) return cmd_verify(args);
        if (charop_cmd->parsed()) return cmd_charop(args);
        if (qfi_cmd->parsed()) return cmd_qfi(args, flag_thermal, temperature);
        if (qfim_cmd->parsed()) return cmd_qfim(args);
        if (thermal_cmd->parsed()) return cmd_thermal(args, temperature);
        if (altqfi_cmd->parsed()) return cmd_altqfi(args, flag_thermal, temperature);
        if (sweep_cmd->parsed()) {
            SweepSpec spec;
            spec.thermal = flag_thermal;
            spec.optimal_points = flag_optimal;
            spec.longtime = flag_longtime;
            spec.altqfi = flag_altqfi;
            spec.charop_deviation = flag_charop;
            if (!temps_text.empty()) {
                std::istringstream is(temps_text);
                std::string tok;
                while (std::getline(is, tok, ',')) spec.temperatures.push_back(std::stod(tok));
            }
            if (!time_axis_text.empty()) spec.time_axis = Axis::parse("t", time_axis_text);
            std::ostringstream cmdline;
            for (int i = 0; i < argc; ++i) {
                if (std::string(argv[i]) == "--out") {  // output path is not part of the data
                    ++i;
                    continue;
                }
                cmdline << (cmdline.tellp() > 0 ? " " : "") << argv[i];
            }
            spec.command_line = cmdline.str();
            return cmd_sweep(args, spec);
        }
        if (audit_cmd->parsed()) return cmd_audit(args);
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitUsage;
}
