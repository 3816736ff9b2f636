#include "qfisher/audit.hpp"

#include "qfisher/models.hpp"
#include "qfisher/ops.hpp"
#include "qfisher/qfi.hpp"
#include "qfisher/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace qfisher {

namespace {

AuditRow make_audit_row(const std::string& id, const std::string& note, const std::vector<double>& paper,
                const std::vector<double>& oracle) {
    AuditRow row;
    row.id = id;
    row.note = note;
    row.grid_points = int(paper.size());
    row.paper_value = paper.back();
    row.oracle_value = oracle.back();
    std::vector<double> ratios;
    for (size_t i = 0; i < paper.size(); ++i) ratios.push_back(oracle[i] / paper[i]);
    std::vector<double> sorted = ratios;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[sorted.size() / 2];
    row.ratio = median;
    double spread = 0.0;
    for (double r : ratios) spread = std::max(spread, std::abs(r - median) / std::abs(median));
    row.ratio_spread = spread;
    row.ratio_stable = spread <= 1e-6;
    return row;
}

PureState random_pure(std::mt19937& rng, Eigen::Index d) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector v(d);
    for (Eigen::Index i = 0; i < d; ++i) v[i] = cplx(gauss(rng), gauss(rng));
    return PureState::normalized(v);
}

}  // namespace

std::vector<AuditRow> run_factor_audit() {
    std::vector<AuditRow> rows;
    std::mt19937 rng(20240901u);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const ModelBundle h1 = h1_bundle();
    const ModelBundle h3 = h3_bundle();

    {  // H1 state-resolved QFI: (16/3)[|x|^2 <|J|^2> - 3 (x.<J>)^2] vs 4 <D^2 H>
        using namespace ops;
        const Matrix jx = two_spin_jx(), jy = two_spin_jy(), jz = two_spin_jz();
        const Matrix j2 = Matrix(jx * jx + jy * jy + jz * jz);
        std::vector<double> paper, oracle;
        for (int i = 0; i < 10; ++i) {
            const double b = 0.2 + 2.0 * unit(rng);
            const double t = 0.3 + 3.0 * unit(rng);
            const PureState psi = random_pure(rng, 4);
            const Eigen::Vector3d x = h1_xvec(b, t);
            const Eigen::Vector3d mj(expectation(psi, jx).real(), expectation(psi, jy).real(),
                                     expectation(psi, jz).real());
            const double pf = 16.0 / 3.0 *
                              (x.squaredNorm() * expectation(psi, j2).real() - 3.0 * std::pow(x.dot(mj), 2));
            paper.push_back(pf);
            oracle.push_back(qfi_pure(psi, h1_bundle().char_closed_analytic({{"B", b}}, "B", t)));
        }
        rows.push_back(make_audit_row("h1.state_qfi", "published state-resolved QFI vs variance formula", paper, oracle));
    }

    {  // H1 maximum QFI: 4|x|^2 vs the family maximum of the variance formula
        std::vector<double> paper, oracle;
        for (int i = 0; i < 10; ++i) {
            const double b = 0.2 + 2.0 * unit(rng);
            const double t = 0.5 + 4.0 * unit(rng);
            paper.push_back(h1_fmax_paper(b, t));
            const ScanResult scan = optimal_state_scan(b, t, 21, 32, 0);
            oracle.push_back(scan.best_qfi);
        }
        rows.push_back(make_audit_row("h1.fmax", "published maximum QFI vs scanned family maximum", paper, oracle));
    }

    {  // H3 maximum QFI, published form (constant coefficient on the exchange term)
        std::vector<double> paper, oracle, restored;
        const double chi = 0.8, b = 0.6;
        for (int i = 0; i < 10; ++i) {
            const double t = 1.0 + 2.0 * double(i);
            const PureState noon = h3.reference_states({}).at("noon");
            const double q = qfi_pure(noon, h3_char_closed(chi, b, t));
            paper.push_back(h3_fmax_paper(chi, b, t));
            restored.push_back(h3_fmax_oracle(chi, b, t) / 4.0);  // f-restored published-style form
            oracle.push_back(q);
        }
        rows.push_back(make_audit_row("h3.fbmax_published", "published maximum (t-independent exchange coefficient)",
                              paper, oracle));
        rows.push_back(make_audit_row("h3.fbmax_f_restored", "published maximum with the f factor restored", restored,
                              oracle));
    }

    {  // optomechanics vacuum curve and printed maxima
        Params p{{"wa", 2.0}, {"wb", 1.0}, {"m", 4.0}, {"l", 4.0}, {"na", 1.0}, {"ncut", 14.0}};
        const ModelBundle om = optomech_bundle();
        const OptomechConfig c = optomech_config(p);
        const PureState vac = om.reference_states(p).at("vacuum");
        std::vector<double> paper, oracle;
        for (int i = 0; i < 10; ++i) {
            const double t = (0.25 + 0.35 * double(i)) / c.wb;
            paper.push_back(optomech_vacuum_curve_paper(c, t));
            oracle.push_back(qfi_pure(vac, om.char_closed_analytic(p, "m", t)));
        }
        rows.push_back(make_audit_row("optomech.vacuum_curve", "published vacuum QFI curve vs variance formula",
                              paper, oracle));

        std::vector<double> fm_paper, fl_paper, peak;
        for (int i = 0; i < 10; ++i) {
            Params q = p;
            q["m"] = 2.0 + 0.5 * double(i);
            const OptomechConfig cc = optomech_config(q);
            const double tpk = std::numbers::pi / cc.wb;
            const PureState v2 = om.reference_states(q).at("vacuum");
            fm_paper.push_back(optomech_fm_max_paper(cc));
            peak.push_back(qfi_pure(v2, om.char_closed_analytic(q, "m", tpk)));
        }
        rows.push_back(make_audit_row("optomech.fm_max", "printed maximum for m; ratio = 8 wb^2 at fixed wb",
                              fm_paper, peak));

        std::vector<double> peak_l;
        for (int i = 0; i < 10; ++i) {
            Params q = p;
            q["l"] = 3.0 + 0.5 * double(i);
            q["param_l"] = 1.0;
            const OptomechConfig cc = optomech_config(q);
            const double tpk = std::numbers::pi / cc.wb;
            const PureState v2 = om.reference_states(q).at("vacuum");
            fl_paper.push_back(optomech_fl_max_paper(cc));
            peak_l.push_back(qfi_pure(v2, om.char_closed_analytic(q, "l", tpk)));
        }
        rows.push_back(make_audit_row("optomech.fl_max", "printed maximum for l; curve peak is twice the printed max",
                              fl_paper, peak_l));
    }

    {  // H2 QFIM off-diagonal prefactor
        const ModelBundle h2 = h2_bundle();
        const Params p{{"gamma", 0.7}, {"Bp", 0.4}, {"Bm", 0.9}};
        std::vector<double> paper, oracle;
        for (int i = 0; i < 10; ++i) {
            const double t = 0.4 + 0.5 * double(i);
            PureState psi = random_pure(rng, 4);
            const Matrix hp = h2.char_closed_analytic(p, "Bp", t);
            const Matrix hm = h2.char_closed_analytic(p, "Bm", t);
            const double mean_prod = expectation(psi, hp).real() * expectation(psi, hm).real();
            const QfimMatrix f = qfim_pure(psi, {hp, hm}, {"Bp", "Bm"});
            paper.push_back(-mean_prod);
            oracle.push_back(f.entries(0, 1));
        }
        rows.push_back(make_audit_row("h2.qfim_offdiag", "published -<H+><H-> vs the covariance-formula entry",
                              paper, oracle));
    }

    {  // thermal H1: published closed form and corrected closed form vs SLD oracle
        std::vector<double> paper, corrected, oracle;
        for (int i = 0; i < 10; ++i) {
            const double b = 0.3 + 0.25 * double(i);
            const double temperature = 0.5 + 0.1 * double(i);
            const double beta = 1.0 / temperature;
            auto rho_at = [&](double bb) {
                return thermal_state(HermitianOperator::from(h1.build_h({{"B", bb}})), beta).state.density();
            };
            paper.push_back(h1_thermal_qfi_paper(b, beta));
            corrected.push_back(h1_thermal_qfi(b, beta));
            oracle.push_back(qfi_fd_family(rho_at, b));
        }
        rows.push_back(make_audit_row("thermal_h1.published", "published thermal closed form vs SLD oracle", paper,
                              oracle));
        rows.push_back(make_audit_row("thermal_h1.resummed", "half-argument resummation with trace re-centering",
                              corrected, oracle));
    }

    return rows;
}

std::string format_audit_table(const std::vector<AuditRow>& rows) {
    std::ostringstream os;
    os << "id,note,paper_value,oracle_value,ratio,ratio_spread,ratio_stable,grid_points\n";
    char buf[512];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%s,\"%s\",%.12e,%.12e,%.12e,%.12e,%d,%d\n", r.id.c_str(),
                      r.note.c_str(), r.paper_value, r.oracle_value, r.ratio, r.ratio_spread,
                      int(r.ratio_stable), r.grid_points);
        os << buf;
    }
    return os.str();
}

}  // namespace qfisher
