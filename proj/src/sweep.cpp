#include "qfisher/sweep.hpp"

#include "qfisher/alt_qfi.hpp"
#include "qfisher/qfi.hpp"
#include "qfisher/thermal.hpp"
#include "qfisher/version.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>

namespace qfisher {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

std::vector<double> Axis::values() const {
    if (!explicit_values.empty()) return explicit_values;
    std::vector<double> out;
    if (points < 2) {
        out.push_back(start);
        return out;
    }
    for (int i = 0; i < points; ++i) {
        const double u = double(i) / double(points - 1);
        if (log_scale)
            out.push_back(start * std::pow(stop / start, u));
        else
            out.push_back(start + (stop - start) * u);
    }
    return out;
}

Axis Axis::parse(const std::string& name, const std::string& text) {
    Axis a;
    a.name = name;
    const auto colons = std::count(text.begin(), text.end(), ':');
    if (colons == 2) {
        std::istringstream is(text);
        std::string s1, s2, s3;
        std::getline(is, s1, ':');
        std::getline(is, s2, ':');
        std::getline(is, s3, ':');
        a.start = std::stod(s1);
        a.stop = std::stod(s2);
        a.points = std::stoi(s3);
        return a;
    }
    if (text.find(',') != std::string::npos) {
        a.explicit_values.clear();
        std::istringstream is(text);
        std::string tok;
        while (std::getline(is, tok, ',')) a.explicit_values.push_back(std::stod(tok));
        a.points = int(a.explicit_values.size());
        return a;
    }
    a.start = std::stod(text);
    a.stop = a.start;
    a.points = 1;
    return a;
}

int worker_count() {
    const char* env = std::getenv("QFISHER_WORKERS");
    if (!env) return int(std::max(1u, std::thread::hardware_concurrency()));
    const int n = std::atoi(env);
    return n <= 1 ? 1 : n;
}

namespace {

struct Row {
    std::vector<std::string> cells;
    std::string status = "ok";
};

std::string join_row(const Row& r) {
    std::string out;
    for (size_t i = 0; i < r.cells.size(); ++i) {
        out += r.cells[i];
        out += ',';
    }
    out += r.status;
    return out;
}

void write_header(const SweepSpec& spec, const std::vector<std::string>& columns, std::ostream& out) {
    out << "# qfisher " << kVersion << " sweep\n";
    out << "# command: " << (spec.command_line.empty() ? "(library call)" : spec.command_line) << "\n";
    out << "# model: " << spec.model << ", estimated: " << spec.estimated << ", seed: " << spec.seed << "\n";
    out << "# float format: %.12e; grid order deterministic and worker-count independent\n";
    for (size_t i = 0; i < columns.size(); ++i) out << columns[i] << ",";
    out << "status\n";
}

// evaluates grid points [0, n) with a deterministic result slot per index
void parallel_for(int n, const std::function<void(int)>& body) {
    const int workers = std::min(worker_count(), n > 0 ? n : 1);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
        });
    for (auto& th : pool) th.join();
}

Row sweep_point_unitary(const SweepSpec& spec, const ModelBundle& m, double pval, double t) {
    Row row;
    row.cells.push_back(format_double(pval));
    row.cells.push_back(format_double(t));
    try {
        Params p = spec.base;
        p[spec.param_axis.name] = pval;
        const auto states = m.reference_states(p);
        const PureState psi = spec.state.empty() ? states.begin()->second : states.at(spec.state);
        const Matrix hc = m.char_closed_analytic(p, spec.estimated, t);
        const double f = qfi_pure(psi, hc);
        auto h_of = [&](double th) {
            Params q = p;
            q[spec.estimated] = th;
            return m.build_h(q);
        };
        const double f_fd = qfi_fd_oracle(h_of, param(p, spec.estimated), t, psi);
        row.cells.push_back(format_double(f));
        row.cells.push_back(format_double(f_fd));
        row.cells.push_back(format_double(std::abs(f - f_fd)));
        if (spec.altqfi) {
            const AltQfiValue i = alt_qfi_unitary(SpectralState::pure(psi), hc);
            row.cells.push_back(format_double(i.trace_form));
            row.cells.push_back(format_double(f > 0 ? i.trace_form / f : 0.0));
        }
        if (spec.charop_deviation) {
            const CharOperatorBundle cb = make_char_bundle(h_of, param(p, spec.estimated), t);
            row.cells.push_back(format_double(cb.dev_series_closed));
            row.cells.push_back(format_double(cb.dev_closed_exact));
        }
        if (spec.model == "h1") row.cells.push_back(format_double(h1_phi_opt(param(p, "B"), t)));
    } catch (const std::exception& e) {
        row.status = std::string("flagged:") + e.what();
        return row;
    }
    return row;
}

Row sweep_point_thermal(const SweepSpec& spec, const ModelBundle& m, double pval, double temperature) {
    Row row;
    row.cells.push_back(format_double(pval));
    row.cells.push_back(format_double(temperature));
    try {
        Params p = spec.base;
        p[spec.param_axis.name] = pval;
        const double beta = 1.0 / temperature;
        const HermitianOperator h = HermitianOperator::from(m.build_h(p));
        const HermitianOperator dh = HermitianOperator::from(m.build_dh(p, spec.estimated));
        const double omega = m.analytic_omega(p, spec.estimated);
        const Matrix v = m.analytic_v(p, spec.estimated);
        const ThermalState ts = thermal_state(h, beta);
        const double f_closed = qfi_thermal(dh, v, omega, beta, ts.state);
        const double f_paper = qfi_thermal_paper_form(dh, v, omega, beta, ts.state);
        auto rho_at = [&](double th) {
            Params q = p;
            q[spec.estimated] = th;
            return thermal_state(HermitianOperator::from(m.build_h(q)), beta).state.density();
        };
        const double f_oracle = qfi_fd_family(rho_at, param(p, spec.estimated));
        row.cells.push_back(format_double(f_closed));
        row.cells.push_back(format_double(f_paper));
        row.cells.push_back(format_double(f_oracle));
        row.cells.push_back(format_double(std::abs(f_closed - f_oracle)));
        if (spec.altqfi) {
            const GammaPair g = gamma_thermal_closed(h, dh, v, omega, beta);
            const AltQfiThermal i = alt_qfi_thermal(g, ts.state);
            row.cells.push_back(format_double(i.value));
            row.cells.push_back(format_double(i.raw_published));
        }
    } catch (const std::exception& e) {
        row.status = std::string("flagged:") + e.what();
        return row;
    }
    return row;
}

// loci of the restricted-family maximizers: one row per (param, amplitude ratio)
std::vector<Row> optimal_rows(const SweepSpec& spec, double b) {
    std::vector<Row> rows;
    const int ratio_points = 33;
    for (int i = 0; i < ratio_points; ++i) {
        const double ratio = 0.2 + 0.8 * double(i) / double(ratio_points - 1);
        Row row;
        row.cells.push_back(format_double(b));
        row.cells.push_back(format_double(ratio));
        double c;
        if (spec.longtime) {
            c = b * (1.0 / ratio - ratio);  // cos(phi) from the long-time condition
        } else {
            const Eigen::Vector3d x = h1_xvec(b, spec.t);
            const double rhs = -0.5 * x[2] * (ratio - 1.0 / ratio);
            const double r2 = std::hypot(x[0], x[1]);
            if (std::abs(rhs) <= r2) {
                const double delta = std::atan2(x[1], x[0]);
                const double phi = delta + std::acos(rhs / r2);
                row.cells.push_back(format_double(phi));
                const double a2 = 1.0 / std::sqrt(1.0 + ratio * ratio);
                row.cells.push_back(format_double(h1_opt_equation(b, spec.t, ratio * a2, a2, phi)));
                rows.push_back(row);
                continue;
            }
            row.cells.push_back("");
            row.cells.push_back("");
            row.status = "flagged:no_real_phase";
            rows.push_back(row);
            continue;
        }
        if (std::abs(c) <= 1.0) {
            const double phi = std::acos(c);
            row.cells.push_back(format_double(phi));
            row.cells.push_back(format_double(h1_opt_equation_longtime(b, ratio / std::hypot(1.0, ratio),
                                                                       1.0 / std::hypot(1.0, ratio), phi)));
        } else {
            row.cells.push_back("");
            row.cells.push_back("");
            row.status = "flagged:no_real_phase";
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

void run_sweep(const SweepSpec& spec, std::ostream& out) {
    const ModelBundle& m = model_by_name(spec.model);

    if (spec.optimal_points) {
        std::vector<std::string> cols{spec.param_axis.name, "a1_over_a2", "phi", "opt_equation_residual"};
        write_header(spec, cols, out);
        const auto pvals = spec.param_axis.values();
        std::vector<std::vector<Row>> blocks(pvals.size());
        parallel_for(int(pvals.size()), [&](int i) { blocks[size_t(i)] = optimal_rows(spec, pvals[size_t(i)]); });
        for (const auto& block : blocks)
            for (const auto& row : block) out << join_row(row) << "\n";
        return;
    }

    if (spec.thermal) {
        std::vector<std::string> cols{spec.param_axis.name, "T", "f_thermal", "f_thermal_paper_form",
                                      "f_sld_oracle", "abs_diff"};
        if (spec.altqfi) {
            cols.push_back("alt_qfi");
            cols.push_back("alt_qfi_raw");
        }
        write_header(spec, cols, out);
        const auto pvals = spec.param_axis.values();
        const auto& temps = spec.temperatures;
        const int n = int(pvals.size() * temps.size());
        std::vector<Row> rows(static_cast<size_t>(n));
        parallel_for(n, [&](int i) {
            const size_t pi = size_t(i) / temps.size();
            const size_t ti = size_t(i) % temps.size();
            rows[size_t(i)] = sweep_point_thermal(spec, m, pvals[pi], temps[ti]);
        });
        for (const auto& row : rows) out << join_row(row) << "\n";
        return;
    }

    std::vector<std::string> cols{spec.param_axis.name, "t", "qfi", "qfi_fd_oracle", "abs_diff"};
    if (spec.altqfi) {
        cols.push_back("alt_qfi");
        cols.push_back("alt_qfi_over_qfi");
    }
    if (spec.charop_deviation) {
        cols.push_back("dev_series_closed");
        cols.push_back("dev_closed_exact");
    }
    if (spec.model == "h1") cols.push_back("phi_opt");
    write_header(spec, cols, out);
    const auto pvals = spec.param_axis.values();
    const std::vector<double> tvals = spec.time_axis ? spec.time_axis->values() : std::vector<double>{spec.t};
    const int n = int(pvals.size() * tvals.size());
    std::vector<Row> rows(static_cast<size_t>(n));
    parallel_for(n, [&](int i) {
        const size_t pi = size_t(i) / tvals.size();
        const size_t ti = size_t(i) % tvals.size();
        rows[size_t(i)] = sweep_point_unitary(spec, m, pvals[pi], tvals[ti]);
    });
    for (const auto& row : rows) out << join_row(row) << "\n";
}

}  // namespace qfisher
