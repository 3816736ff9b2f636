#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qfisher/alt_qfi.hpp"
#include "qfisher/models.hpp"
#include "qfisher/ops.hpp"
#include "qfisher/qfi.hpp"
#include "qfisher/thermal.hpp"
#include "test_util.hpp"

#include <random>

using namespace qfisher;
using namespace qfisher::ops;
using qfisher::testutil::max_abs_diff;
using qfisher::testutil::random_state;
using qfisher::testutil::rel_fro_diff;

TEST_CASE("unitary-case value: trace form, spectral form, pure reduction") {
    std::mt19937 rng(3);
    const ModelBundle m = h1_bundle();
    const Matrix hc = m.char_closed_analytic({{"B", 0.6}}, "B", 1.3);

    // pure state: I = 2F
    const PureState psi = random_state(rng, 4);
    const AltQfiValue pure = alt_qfi_unitary(SpectralState::pure(psi), hc);
    CHECK(pure.trace_form == doctest::Approx(2.0 * qfi_pure(psi, hc)).epsilon(1e-9));
    CHECK(pure.spectral_form == doctest::Approx(pure.trace_form).epsilon(1e-9));

    // maximally mixed initial state: direct 4x4 evaluation (both vanish at I/d)
    RealVector quarter = RealVector::Constant(4, 0.25);
    const SpectralState mixed = SpectralState::from_parts(quarter, identity(4));
    const AltQfiValue mm = alt_qfi_unitary(mixed, hc);
    const Matrix sq = 0.5 * identity(4);  // sqrt of I/4
    const double direct = 8.0 * ((hc * hc * mixed.density()).trace().real() -
                                 (hc * sq * hc * sq).trace().real());
    CHECK(mm.trace_form == doctest::Approx(direct).epsilon(1e-12));
    CHECK(std::abs(mm.spectral_form - direct) < 1e-9);

    // on a non-uniform mixture the cross terms enter with sqrt(p_i p_j)
    // instead of the harmonic weight, so the two information measures differ
    RealVector skewp(4);
    skewp << 0.6, 0.25, 0.1, 0.05;
    const SpectralState skew = SpectralState::from_parts(skewp, identity(4));
    const AltQfiValue sv = alt_qfi_unitary(skew, hc);
    const double usual = qfi_mixed(skew, hc);
    CHECK(sv.trace_form != doctest::Approx(usual).epsilon(1e-3));

    // theta-independent family
    const AltQfiValue zero = alt_qfi_unitary(mixed, Matrix::Zero(4, 4));
    CHECK(zero.trace_form == doctest::Approx(0.0));

    // the two forms agree on random mixtures
    for (int k = 0; k < 10; ++k) {
        RealVector p(4);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        for (int i = 0; i < 4; ++i) p[i] = uni(rng) + 1e-3;
        p /= p.sum();
        const SpectralState rho = SpectralState::from_parts(p, qfisher::testutil::random_unitary(rng, 4));
        const AltQfiValue v = alt_qfi_unitary(rho, hc);
        CHECK(std::abs(v.trace_form - v.spectral_form) <= 1e-9 * (1.0 + std::abs(v.trace_form)));
        CHECK(v.trace_form >= -1e-10);
    }
}

TEST_CASE("direct oracle on families") {
    const ModelBundle m = h1_bundle();
    const double b = 0.6, t = 1.3, beta = 1.1;
    const Matrix hc = m.char_closed_analytic({{"B", b}}, "B", t);
    const ThermalState ts = thermal_state(HermitianOperator::from(m.build_h({{"B", b}})), beta);

    // unitary family of a fixed mixed initial state
    auto rho_unitary = [&](double th) {
        const Matrix u = evolve(HermitianOperator::from(m.build_h({{"B", th}})), t);
        return Matrix(u * ts.state.density() * u.adjoint());
    };
    const AltQfiOracleResult direct = alt_qfi_direct_oracle(rho_unitary, b);
    const AltQfiValue closed = alt_qfi_unitary(ts.state, hc);
    CHECK(std::abs(direct.value - closed.trace_form) <= 1e-5 * (1.0 + std::abs(closed.trace_form)));

    // pure family: twice the fidelity-oracle QFI
    Vector bell(4);
    bell << 1, 0, 0, 1;
    const PureState psi = PureState::normalized(bell);
    auto rho_pure = [&](double th) {
        const Matrix u = evolve(HermitianOperator::from(m.build_h({{"B", th}})), t);
        const Vector v = u * psi.amplitudes();
        return Matrix(v * v.adjoint());
    };
    auto h_of = [&](double th) { return m.build_h({{"B", th}}); };
    const double f_fd = qfi_fd_oracle(h_of, b, t, psi);
    CHECK(alt_qfi_direct_oracle(rho_pure, b).value == doctest::Approx(2.0 * f_fd).epsilon(1e-5));

    // classical coin family at theta = 0
    auto rho_coin = [](double th) {
        Matrix r = Matrix::Zero(2, 2);
        r(0, 0) = 0.5 * (1.0 + th);
        r(1, 1) = 0.5 * (1.0 - th);
        return r;
    };
    CHECK(alt_qfi_direct_oracle(rho_coin, 0.0).value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("gamma series") {
    std::mt19937 rng(9);
    const Matrix h = qfisher::testutil::random_hermitian(rng, 4);

    // commuting pair: both gammas equal dG at any order
    const HermitianOperator g = HermitianOperator::from(Matrix(-0.8 * h));
    const Matrix dg = -0.8 * 2.0 * h;
    const GammaPair commuting = gamma_series(g, dg);
    CHECK(max_abs_diff(commuting.plus, dg) < 1e-13);
    CHECK(max_abs_diff(commuting.minus, dg) < 1e-13);
    CHECK(max_abs_diff(commuting.plus, commuting.minus) < 1e-13);

    // n_max = 0 truncation returns dG
    const ModelBundle m = h1_bundle();
    const HermitianOperator g1 =
        HermitianOperator::from(Matrix(-1.0 * m.build_h({{"B", 0.5}})));
    const Matrix dg1 = -1.0 * m.build_dh({{"B", 0.5}}, "B");
    const GammaPair zeroth = gamma_series(g1, dg1, 0);
    CHECK(max_abs_diff(zeroth.plus, dg1) < 1e-14);

    // thermal closed form matches the series and the quadrature
    const double b = 0.5, beta = 1.0;
    const Params p{{"B", b}};
    const HermitianOperator hh = HermitianOperator::from(m.build_h(p));
    const HermitianOperator dh = HermitianOperator::from(m.build_dh(p, "B"));
    const double omega = m.analytic_omega(p, "B");
    const Matrix v = m.analytic_v(p, "B");
    const HermitianOperator gt = HermitianOperator::from(Matrix(-beta * hh.mat()));
    const Matrix dgt = -beta * dh.mat();
    const GammaPair series = gamma_series(gt, dgt);
    const GammaPair closed = gamma_thermal_closed(hh, dh, v, omega, beta);
    CHECK(rel_fro_diff(series.plus, closed.plus) < 1e-8);
    CHECK(rel_fro_diff(series.minus, closed.minus) < 1e-8);

    const GammaPair quad = gamma_integral(gt, dgt);
    CHECK(rel_fro_diff(quad.plus, series.plus) < 1e-10);
    CHECK(rel_fro_diff(quad.minus, series.minus) < 1e-10);
}

TEST_CASE("f_I and its beta derivative") {
    const double omega = 1.7;
    for (double beta : {0.3, 1.0, 2.4}) {
        const double u = 0.5 * beta * omega;
        CHECK(f_i_function(omega, beta) ==
              doctest::Approx(2.0 / std::pow(omega, 3) * (u - std::sinh(u))).epsilon(1e-13));
        const double eps = 1e-6;
        const double numeric =
            (f_i_function(omega, beta + eps) - f_i_function(omega, beta - eps)) / (2.0 * eps);
        CHECK(df_i_dbeta(omega, beta) == doctest::Approx(numeric).epsilon(1e-8));
    }
}

TEST_CASE("thermal gamma limits") {
    const ModelBundle m = h1_bundle();
    const Params p{{"B", 0.5}};
    const HermitianOperator h = HermitianOperator::from(m.build_h(p));
    const HermitianOperator dh = HermitianOperator::from(m.build_dh(p, "B"));
    const double omega = m.analytic_omega(p, "B");
    const Matrix v = m.analytic_v(p, "B");

    // small beta: Gamma_+ -> -beta dH + (beta^2/4)[H, dH], and I -> beta^2 Tr(dH^2)/d
    const double beta = 1e-3;
    const GammaPair g = gamma_thermal_closed(h, dh, v, omega, beta);
    const Matrix w = commutator(h.mat(), dh.mat());
    const Matrix second_order = -beta * dh.mat() + 0.25 * beta * beta * w;
    CHECK((g.plus - second_order).norm() / (beta * dh.mat().norm()) < 1e-5);
    const ThermalState ts = thermal_state(h, beta);
    const AltQfiThermal i = alt_qfi_thermal(g, ts.state);
    const double leading = beta * beta * (dh.mat() * dh.mat()).trace().real() / 4.0;
    CHECK(i.value == doctest::Approx(leading).epsilon(1e-4));

    // commuting case: the structure puts V = -Omega^2 dH, and the closed form
    // collapses to -beta dH exactly, with both gammas equal
    const HermitianOperator hc = HermitianOperator::from(Matrix(2.0 * sigma_z()));
    const HermitianOperator dhc = HermitianOperator::from(Matrix(1.5 * sigma_z()));
    const double om = 1.0, bc = 0.7;
    const GammaPair gc = gamma_thermal_closed(hc, dhc, Matrix(-om * om * dhc.mat()), om, bc);
    CHECK(max_abs_diff(gc.plus, Matrix(-bc * dhc.mat())) < 1e-13);
    CHECK(max_abs_diff(gc.minus, gc.plus) < 1e-13);
}

TEST_CASE("thermal family: gamma correlation matches the direct oracle") {
    const ModelBundle m = h1_bundle();
    for (double b : {0.4, 0.9})
        for (double beta : {0.6, 1.4}) {
            const Params p{{"B", b}};
            const HermitianOperator h = HermitianOperator::from(m.build_h(p));
            const HermitianOperator dh = HermitianOperator::from(m.build_dh(p, "B"));
            const double omega = m.analytic_omega(p, "B");
            const Matrix v = m.analytic_v(p, "B");
            const ThermalState ts = thermal_state(h, beta);
            const GammaPair g = gamma_thermal_closed(h, dh, v, omega, beta);
            const AltQfiThermal i = alt_qfi_thermal(g, ts.state);

            auto rho_at = [&](double th) {
                return thermal_state(HermitianOperator::from(m.build_h({{"B", th}})), beta).state.density();
            };
            const AltQfiOracleResult direct = alt_qfi_direct_oracle(rho_at, b);
            CHECK(std::abs(i.value - direct.value) <= 1e-5 * (1.0 + std::abs(direct.value)));
            CHECK(i.value >= -1e-10);
        }
}
