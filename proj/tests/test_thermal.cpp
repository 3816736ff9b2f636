#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qfisher/models.hpp"
#include "qfisher/ops.hpp"
#include "qfisher/qfi.hpp"
#include "qfisher/thermal.hpp"
#include "test_util.hpp"

#include <cmath>
#include <numbers>

using namespace qfisher;
using namespace qfisher::ops;
using qfisher::testutil::max_abs_diff;
using qfisher::testutil::rel_fro_diff;

namespace {

Matrix finite_diff_drho(const std::function<Matrix(double)>& rho_at, double theta, double eps = 1e-5) {
    auto d_at = [&](double e) { return Matrix((rho_at(theta + e) - rho_at(theta - e)) / (2.0 * e)); };
    Matrix d = (4.0 * d_at(0.5 * eps) - d_at(eps)) / 3.0;
    return Matrix(0.5 * (d + Matrix(d.adjoint())));
}

}  // namespace

TEST_CASE("thermal state construction") {
    const HermitianOperator sz = HermitianOperator::from(sigma_z());

    // infinite-temperature limit
    const ThermalState hot = thermal_state(sz, 1e-8);
    CHECK(hot.state.probabilities()[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(hot.state.probabilities()[1] == doctest::Approx(0.5).epsilon(1e-6));

    // two-level arithmetic, ground state first
    const ThermalState qb = thermal_state(sz, 1.0);
    const double z = std::exp(1.0) + std::exp(-1.0);
    CHECK(qb.state.probabilities()[0] == doctest::Approx(std::exp(1.0) / z).epsilon(1e-12));
    CHECK(qb.state.probabilities()[1] == doctest::Approx(std::exp(-1.0) / z).epsilon(1e-12));

    // dense cross-check: diagonal in the energy eigenbasis, unit trace
    const ModelBundle m = h1_bundle();
    const HermitianOperator h = HermitianOperator::from(m.build_h({{"B", 0.5}}));
    const ThermalState ts = thermal_state(h, 2.0);
    CHECK(ts.state.probabilities().sum() == doctest::Approx(1.0).epsilon(1e-12));
    const auto spec = spectral(h);
    Matrix expected = Matrix::Zero(4, 4);
    double z4 = 0.0;
    for (int i = 0; i < 4; ++i) z4 += std::exp(-2.0 * spec.eigenvalues[i]);
    for (int i = 0; i < 4; ++i)
        expected += std::exp(-2.0 * spec.eigenvalues[i]) / z4 *
                    (spec.eigenvectors.col(i) * spec.eigenvectors.col(i).adjoint());
    CHECK(max_abs_diff(ts.state.density(), expected) < 1e-12);

    CHECK_THROWS_AS(thermal_state(sz, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(thermal_state(sz, -1.0), std::invalid_argument);
}

TEST_CASE("r function") {
    CHECK(r_function(1e4, 2.0) == doctest::Approx(0.25).epsilon(1e-3));   // zero-temperature limit
    CHECK(r_function(1e-9, 2.0) == doctest::Approx(0.0).epsilon(1e-12));  // high-temperature limit
    CHECK(r_function(1.0, 2.0) == doctest::Approx(0.25 * (1.0 - std::tanh(2.0) / 2.0)).epsilon(1e-14));

    // stays inside [0, Omega^-2] and the Taylor branch joins smoothly
    for (double beta : {1e-6, 1e-4, 1e-2, 0.5, 2.0, 50.0}) {
        const double r = r_function(beta, 1.7);
        CHECK(r >= 0.0);
        CHECK(r <= 1.0 / (1.7 * 1.7) + 1e-15);
    }
    const double below = r_function(0.99e-4 / 1.7, 1.7);
    const double above = r_function(1.01e-4 / 1.7, 1.7);
    CHECK(below == doctest::Approx(above * std::pow(0.99 / 1.01, 2)).epsilon(1e-6));
}

TEST_CASE("Bernoulli numbers and series coefficients") {
    const auto b = bernoulli_even(8);
    CHECK(b[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(b[1] == doctest::Approx(-1.0 / 30.0).epsilon(1e-14));
    CHECK(b[2] == doctest::Approx(1.0 / 42.0).epsilon(1e-14));
    CHECK(b[3] == doctest::Approx(-1.0 / 30.0).epsilon(1e-14));
    CHECK(b[4] == doctest::Approx(5.0 / 66.0).epsilon(1e-14));
    CHECK(b[5] == doctest::Approx(-691.0 / 2730.0).epsilon(1e-14));

    CHECK(sld_series_coefficient(0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sld_series_coefficient(1) == doctest::Approx(-1.0 / 12.0).epsilon(1e-14));
    CHECK(sld_series_coefficient(2) == doctest::Approx(1.0 / 120.0).epsilon(1e-14));

    // the coefficients resum to 2 tanh(x/2)/x inside the radius
    for (double x : {0.5, 1.5, 2.5}) {
        double acc = 0.0;
        for (int n = 0; n < 60; ++n) acc += sld_series_coefficient(n) * std::pow(x, 2 * n);
        CHECK(acc == doctest::Approx(2.0 * std::tanh(0.5 * x) / x).epsilon(1e-12));
    }
}

TEST_CASE("SLD closed form satisfies the defining equation") {
    struct Case {
        std::string model;
        Params p;
        std::string which;
    };
    const std::vector<Case> cases = {
        {"h1", {{"B", 0.5}}, "B"},
        {"h1", {{"B", 1.7}}, "B"},
        {"h2", {{"gamma", 0.6}, {"Bp", 0.4}, {"Bm", 0.8}}, "Bp"},
        {"h2", {{"gamma", 0.6}, {"Bp", 0.4}, {"Bm", 0.8}}, "Bm"},
        {"h3", {{"chi", 0.9}, {"B", 0.7}}, "B"},
    };
    for (const auto& c : cases)
        for (double beta : {0.4, 1.0, 2.5}) {
            const ModelBundle& m = model_by_name(c.model);
            const HermitianOperator h = HermitianOperator::from(m.build_h(c.p));
            const HermitianOperator dh = HermitianOperator::from(m.build_dh(c.p, c.which));
            const double omega = m.analytic_omega(c.p, c.which);
            const Matrix v = m.analytic_v(c.p, c.which);
            const ThermalState ts = thermal_state(h, beta);
            const Matrix l = sld_thermal_closed(dh, v, omega, beta, ts.state);

            auto rho_at = [&](double th) {
                Params q = c.p;
                q[c.which] = th;
                return thermal_state(HermitianOperator::from(m.build_h(q)), beta).state.density();
            };
            const Matrix drho = finite_diff_drho(rho_at, param(c.p, c.which));
            const Matrix rho = ts.state.density();
            const double residual = (drho - 0.5 * (rho * l + l * rho)).norm();
            CHECK(residual <= 1e-7);

            // Tr(rho L) = 0 after re-centering
            CHECK(std::abs((rho * l).trace().real()) < 1e-12);
        }
}

TEST_CASE("SLD limits") {
    const ModelBundle m = h1_bundle();
    const Params p{{"B", 0.5}};
    const HermitianOperator h = HermitianOperator::from(m.build_h(p));
    const HermitianOperator dh = HermitianOperator::from(m.build_dh(p, "B"));
    const double omega = m.analytic_omega(p, "B");
    const Matrix v = m.analytic_v(p, "B");

    // zero temperature: the traceless part is dominated by the conserved quantity
    const double beta_cold = 2.0e2;
    const ThermalState cold = thermal_state(h, beta_cold);
    const Matrix l_cold = sld_thermal_closed(dh, v, omega, beta_cold, cold.state);
    const Matrix l_traceless = l_cold - l_cold.trace() / 4.0 * Matrix::Identity(4, 4);
    const Matrix lead = beta_cold / (omega * omega) * v;
    CHECK((l_traceless - lead).norm() / lead.norm() < 2e-2);

    // high temperature: L -> -beta (dH - <dH>)
    const double beta_hot = 1e-4;
    const ThermalState hot = thermal_state(h, beta_hot);
    const Matrix l_hot = sld_thermal_closed(dh, v, omega, beta_hot, hot.state);
    const double mean_dh = expectation(hot.state, dh.mat()).real();
    const Matrix lead_hot = -beta_hot * (dh.mat() - mean_dh * Matrix::Identity(4, 4));
    CHECK((l_hot - lead_hot).norm() / l_hot.norm() < 1e-6);
}

TEST_CASE("Bernoulli series SLD") {
    const ModelBundle m = h1_bundle();
    const Params p{{"B", 0.5}};
    const HermitianOperator h = HermitianOperator::from(m.build_h(p));
    const HermitianOperator dh = HermitianOperator::from(m.build_dh(p, "B"));
    const double omega = m.analytic_omega(p, "B");
    const Matrix v = m.analytic_v(p, "B");

    // commuting pair truncates at the leading term
    const HermitianOperator g0 = HermitianOperator::from(Matrix(-0.7 * h.mat()));
    const SldSeriesResult commuting = sld_bernoulli_series(g0, Matrix(-0.7 * 2.0 * h.mat()));
    CHECK(commuting.converged);
    CHECK(max_abs_diff(commuting.l, Matrix(-1.4 * h.mat())) < 1e-12);

    // inside the radius the series matches the closed form
    const double beta = 0.3;
    const ThermalState ts = thermal_state(h, beta);
    const SldSeriesResult series = sld_thermal_series(h, dh, beta, ts.state, 40);
    CHECK(series.converged);
    const Matrix closed = sld_thermal_closed(dh, v, omega, beta, ts.state);
    CHECK(rel_fro_diff(series.l, closed) < 1e-8);

    // outside the radius the non-convergence is reported
    const double beta_big = 1.5;  // beta * spread = 1.5 * 2(v+1) > pi
    const ThermalState far = thermal_state(h, beta_big);
    const SldSeriesResult diverging = sld_thermal_series(h, dh, beta_big, far.state, 40);
    CHECK_FALSE(diverging.converged);
    CHECK(diverging.last_term_norm > 0.0);
}

TEST_CASE("thermal QFI closed form") {
    const ModelBundle m = h1_bundle();
    for (double b : {0.3, 0.8, 2.0})
        for (double temperature : {0.5, 1.0, 1.5}) {
            const double beta = 1.0 / temperature;
            const Params p{{"B", b}};
            const HermitianOperator h = HermitianOperator::from(m.build_h(p));
            const HermitianOperator dh = HermitianOperator::from(m.build_dh(p, "B"));
            const double omega = m.analytic_omega(p, "B");
            const Matrix v = m.analytic_v(p, "B");
            const ThermalState ts = thermal_state(h, beta);

            const double f = qfi_thermal(dh, v, omega, beta, ts.state);

            // identical to Tr(rho L^2) with the closed-form L
            const Matrix l = sld_thermal_closed(dh, v, omega, beta, ts.state);
            const double via_l = (ts.state.density() * l * l).trace().real();
            CHECK(f == doctest::Approx(via_l).epsilon(1e-12));

            // matches the analytic expression and the SLD oracle
            CHECK(f == doctest::Approx(h1_thermal_qfi(b, beta)).epsilon(1e-10));
            auto rho_at = [&](double bb) {
                return thermal_state(HermitianOperator::from(m.build_h({{"B", bb}})), beta).state.density();
            };
            const double f_oracle = qfi_fd_family(rho_at, b);
            CHECK(std::abs(f - f_oracle) <= 1e-6 * (1.0 + f));
        }
}

TEST_CASE("correlation function") {
    CHECK(h1_correlation_zz(0.0, 1.3) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(h1_correlation_zz(50.0, 10.0) == doctest::Approx(1.0).epsilon(1e-8));

    const ModelBundle m = h1_bundle();
    const Matrix zz = Matrix(pauli1(sigma_z()) * pauli2(sigma_z()));
    for (double b : {0.4, 1.1, 2.7})
        for (double beta : {0.5, 1.0, 2.0}) {
            const ThermalState ts = thermal_state(HermitianOperator::from(m.build_h({{"B", b}})), beta);
            const double dense = expectation(ts.state, zz).real();
            CHECK(h1_correlation_zz(b, beta) == doctest::Approx(dense).epsilon(1e-10));
        }
}

TEST_CASE("published thermal curve: monotone on the plotted grid") {
    // the published closed form increases with B and decreases with T there
    for (double temperature : {0.5, 1.0, 1.5}) {
        double prev = -1.0;
        for (int i = 0; i <= 30; ++i) {
            const double b = 3.0 * i / 30.0;
            const double f = h1_thermal_qfi_paper(b, 1.0 / temperature);
            CHECK(f >= prev - 1e-12);
            prev = f;
        }
    }
    for (double b : {0.5, 1.5, 3.0}) {
        CHECK(h1_thermal_qfi_paper(b, 1.0 / 0.5) >= h1_thermal_qfi_paper(b, 1.0 / 1.0));
        CHECK(h1_thermal_qfi_paper(b, 1.0 / 1.0) >= h1_thermal_qfi_paper(b, 1.0 / 1.5));
    }
}

TEST_CASE("anisotropic thermal closed forms") {
    const ModelBundle m = h2_bundle();
    const double gamma = 0.6, bp = 0.4, bm = 0.8, beta = 1.2;
    const Params p{{"gamma", gamma}, {"Bp", bp}, {"Bm", bm}};
    for (const std::string which : {"Bp", "Bm"}) {
        const HermitianOperator h = HermitianOperator::from(m.build_h(p));
        const HermitianOperator dh = HermitianOperator::from(m.build_dh(p, which));
        const ThermalState ts = thermal_state(h, beta);
        const double f = qfi_thermal(dh, m.analytic_v(p, which), m.analytic_omega(p, which), beta, ts.state);
        const double analytic = h2_thermal_qfi(gamma, bp, bm, beta, which);
        CHECK(f == doctest::Approx(analytic).epsilon(1e-10));

        auto rho_at = [&](double th) {
            Params q = p;
            q[which] = th;
            return thermal_state(HermitianOperator::from(m.build_h(q)), beta).state.density();
        };
        const double f_oracle = qfi_fd_family(rho_at, param(p, which));
        CHECK(std::abs(f - f_oracle) <= 1e-6 * (1.0 + f));
    }

    // dense cross-check of the two-speed correlation function
    const Matrix zz = Matrix(pauli1(sigma_z()) * pauli2(sigma_z()));
    const ThermalState ts = thermal_state(HermitianOperator::from(m.build_h(p)), beta);
    CHECK(h2_correlation_zz(gamma, bp, bm, beta) ==
          doctest::Approx(expectation(ts.state, zz).real()).epsilon(1e-10));
}
