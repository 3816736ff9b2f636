#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qfisher/char_operator.hpp"
#include "qfisher/models.hpp"
#include "qfisher/ops.hpp"
#include "qfisher/qfi.hpp"
#include "qfisher/thermal.hpp"
#include "test_util.hpp"

#include <numbers>
#include <random>

using namespace qfisher;
using namespace qfisher::ops;
using qfisher::testutil::max_abs_diff;
using qfisher::testutil::random_hermitian;
using qfisher::testutil::random_state;
using qfisher::testutil::random_unitary;

TEST_CASE("pure-state QFI") {
    // eigenstate of the generator carries no information
    const auto s = spectral(HermitianOperator::from(sigma_z()));
    CHECK(qfi_pure(PureState::from(Vector(s.eigenvectors.col(0))), sigma_z()) ==
          doctest::Approx(0.0).epsilon(1e-14));

    // optimal family state at long time reaches 16 |x|^2
    const double b = 0.8;
    const double t = 4.0e3;
    const ModelBundle m = h1_bundle();
    const Matrix hc = m.char_closed_analytic({{"B", b}}, "B", t);
    const ScanResult scan = optimal_state_scan(b, t, 21, 32, 0);
    CHECK(scan.best_qfi == doctest::Approx(h1_fmax_oracle(b, t)).epsilon(1e-9));
    CHECK(scan.best_qfi == doctest::Approx(4.0 * h1_fmax_paper(b, t)).epsilon(1e-9));

    // generic state against the fidelity oracle
    Vector bell(4);
    bell << 1, 0, 0, 1;
    const PureState psi = PureState::normalized(bell);
    const Matrix hc2 = m.char_closed_analytic({{"B", 0.8}}, "B", 2.0);
    auto h_of = [&](double bb) { return m.build_h({{"B", bb}}); };
    const double f = qfi_pure(psi, hc2);
    const double f_fd = qfi_fd_oracle(h_of, 0.8, 2.0, psi);
    CHECK(std::abs(f - f_fd) <= 1e-5 * (1.0 + f));
}

TEST_CASE("pure-state QFIM") {
    const ModelBundle m = h2_bundle();
    const Params p{{"gamma", 0.6}, {"Bp", 0.5}, {"Bm", 0.3}};
    const double t = 1.2;
    const Matrix hp = m.char_closed_analytic(p, "Bp", t);
    const Matrix hm = m.char_closed_analytic(p, "Bm", t);

    std::mt19937 rng(71);
    const PureState psi = random_state(rng, 4);

    // single-parameter reduction
    const QfimMatrix f1 = qfim_pure(psi, {hp});
    CHECK(f1.entries(0, 0) == doctest::Approx(qfi_pure(psi, hp)).epsilon(1e-12));

    // off-diagonal equals -4 <H+><H-> (the generators multiply to zero)
    const QfimMatrix f = qfim_pure(psi, {hp, hm}, {"Bp", "Bm"});
    const double expected = -4.0 * expectation(psi, hp).real() * expectation(psi, hm).real();
    CHECK(f.entries(0, 1) == doctest::Approx(expected).epsilon(1e-10));
    CHECK(max_abs_diff(Matrix(hp * hm), Matrix::Zero(4, 4)) < 1e-12);

    // vanishes on the even-sector optimal family
    Vector opt(4);
    opt << 0.6, 0, 0, std::polar(0.8, 1.1);
    const QfimMatrix fo = qfim_pure(PureState::normalized(opt), {hp, hm});
    CHECK(std::abs(fo.entries(0, 1)) < 1e-12);

    // identical generators give a rank-one matrix
    const QfimMatrix fr = qfim_pure(psi, {hp, hp});
    CHECK(fr.entries(0, 1) * fr.entries(0, 1) ==
          doctest::Approx(fr.entries(0, 0) * fr.entries(1, 1)).epsilon(1e-10));
}

TEST_CASE("mixed-state QFI") {
    const ModelBundle m = h1_bundle();
    const Matrix hc = m.char_closed_analytic({{"B", 0.5}}, "B", 1.0);

    // rank-1 reduction is exact
    std::mt19937 rng(5);
    const PureState psi = random_state(rng, 4);
    CHECK(qfi_mixed(SpectralState::pure(psi), hc) == doctest::Approx(qfi_pure(psi, hc)).epsilon(1e-12));

    // maximally mixed state carries nothing
    RealVector quarter = RealVector::Constant(4, 0.25);
    CHECK(qfi_mixed(SpectralState::from_parts(quarter, identity(4)), hc) ==
          doctest::Approx(0.0).epsilon(1e-12));

    // thermal initial state against the SLD oracle
    const HermitianOperator h = HermitianOperator::from(m.build_h({{"B", 0.5}}));
    const ThermalState ts = thermal_state(h, 1.0);
    const double f = qfi_mixed(ts.state, hc);
    auto h_of = [&](double bb) { return m.build_h({{"B", bb}}); };
    const double f_fd = qfi_fd_oracle(h_of, 0.5, 1.0, ts.state);
    CHECK(std::abs(f - f_fd) <= 1e-7 * std::max(1.0, f));

    // never exceeds the classical-average bound
    double sum = 0.0;
    for (Eigen::Index i = 0; i < 4; ++i) {
        const PureState ei = PureState::from(Vector(ts.state.vectors().col(i)));
        sum += 4.0 * ts.state.probabilities()[i] * variance(ei, hc);
    }
    CHECK(f <= sum + 1e-12);
}

TEST_CASE("mixed-state QFIM") {
    const ModelBundle m = h2_bundle();
    const Params p{{"gamma", 0.6}, {"Bp", 0.5}, {"Bm", 0.3}};
    const double t = 0.9, beta = 1.0;
    const Matrix hp = m.char_closed_analytic(p, "Bp", t);
    const Matrix hm = m.char_closed_analytic(p, "Bm", t);
    const ThermalState ts = thermal_state(HermitianOperator::from(m.build_h(p)), beta);

    const QfimMatrix f = qfim_mixed(ts.state, {hp, hm}, {"Bp", "Bm"});
    CHECK(f.entries(0, 1) == doctest::Approx(f.entries(1, 0)));
    CHECK(f.psd_ok);
    CHECK(f.entries(0, 0) == doctest::Approx(qfi_mixed(ts.state, hp)).epsilon(1e-12));

    // pure initial state reduces to the pure-state matrix
    std::mt19937 rng(6);
    const PureState psi = random_state(rng, 4);
    const QfimMatrix fp = qfim_mixed(SpectralState::pure(psi), {hp, hm});
    const QfimMatrix fq = qfim_pure(psi, {hp, hm});
    CHECK(max_abs_diff(Matrix(fp.entries.cast<cplx>()), Matrix(fq.entries.cast<cplx>())) < 1e-10);

    // pairwise agreement with the SLD route: F_mn = Tr(rho {L_m, L_n})/2
    auto rho_at2 = [&](const std::string& key, double val) {
        Params q = p;
        q[key] = val;
        const Matrix u = evolve(HermitianOperator::from(m.build_h(q)), t);
        return Matrix(u * ts.state.density() * u.adjoint());
    };
    const double eps = 1e-5;
    auto sld_for = [&](const std::string& key) {
        auto d_at = [&](double e) {
            return Matrix((rho_at2(key, param(p, key) + e) - rho_at2(key, param(p, key) - e)) / (2.0 * e));
        };
        Matrix drho = (4.0 * d_at(0.5 * eps) - d_at(eps)) / 3.0;
        drho = 0.5 * (drho + Matrix(drho.adjoint()));
        return sld_oracle(SpectralState::from_density(rho_at2(key, param(p, key))), drho);
    };
    const SldResult lp = sld_for("Bp");
    const SldResult lm = sld_for("Bm");
    const Matrix rho = rho_at2("Bp", param(p, "Bp"));
    const double f01 = 0.5 * (rho * anticommutator(lp.l, lm.l)).trace().real();
    CHECK(std::abs(f.entries(0, 1) - f01) <= 1e-6 * (1.0 + std::abs(f01)));
    CHECK(std::abs(f.entries(0, 0) - lp.qfi) <= 1e-6 * (1.0 + lp.qfi));
}

TEST_CASE("SLD oracle") {
    // theta-independent state
    RealVector p(2);
    p << 0.7, 0.3;
    const SpectralState rho = SpectralState::from_parts(p, identity(2));
    const SldResult r0 = sld_oracle(rho, Matrix::Zero(2, 2));
    CHECK(r0.qfi == 0.0);
    CHECK(max_abs_diff(r0.l, Matrix::Zero(2, 2)) == 0.0);

    // classical coin family rho = diag((1+theta)/2, (1-theta)/2) at theta = 0
    RealVector half = RealVector::Constant(2, 0.5);
    Matrix drho = Matrix::Zero(2, 2);
    drho(0, 0) = 0.5;
    drho(1, 1) = -0.5;
    const SldResult r = sld_oracle(SpectralState::from_parts(half, identity(2)), drho);
    CHECK(r.qfi == doctest::Approx(1.0).epsilon(1e-12));

    // thermal family in the field parameter matches the closed form
    const double b = 0.5, beta = 1.0;
    auto rho_at = [&](double bb) {
        return thermal_state(HermitianOperator::from(h1_bundle().build_h({{"B", bb}})), beta).state.density();
    };
    const double f_oracle = qfi_fd_family(rho_at, b);
    CHECK(std::abs(f_oracle - h1_thermal_qfi(b, beta)) <= 1e-7 * (1.0 + f_oracle));
}

TEST_CASE("fidelity oracle") {
    const ModelBundle m = h1_bundle();
    auto h_of = [&](double bb) { return m.build_h({{"B", bb}}); };

    Vector bell(4);
    bell << 1, 0, 0, 1;
    const PureState psi = PureState::normalized(bell);
    CHECK(qfi_fd_oracle(h_of, 0.4, 0.0, psi) == doctest::Approx(0.0).epsilon(1e-10));

    const HermitianOperator h = HermitianOperator::from(h_of(0.4));
    const HermitianOperator dh = HermitianOperator::from(m.build_dh({{"B", 0.4}}, "B"));
    const ExactCharResult ex = char_exact(h_of, 0.4, 1.0);
    const double via_char = qfi_pure(psi, ex.h);
    const double via_fd = qfi_fd_oracle(h_of, 0.4, 1.0, psi);
    CHECK(std::abs(via_char - via_fd) <= 1e-5 * (1.0 + via_fd));
}

TEST_CASE("saturation check") {
    const ModelBundle m = h2_bundle();
    const Params p{{"gamma", 0.7}, {"Bp", 0.4}, {"Bm", 0.9}};
    const Matrix hp = m.char_closed_analytic(p, "Bp", 1.7);
    const Matrix hm = m.char_closed_analytic(p, "Bm", 1.7);
    std::mt19937 rng(8);
    for (int k = 0; k < 5; ++k) CHECK(saturation_check(random_state(rng, 4), hp, hm) < 1e-10);
    CHECK(saturation_check(random_state(rng, 4), hp, hp) < 1e-12);

    Vector zero2(2);
    zero2 << 1, 0;
    CHECK(saturation_check(PureState::from(zero2), sigma_x(), sigma_y()) == doctest::Approx(2.0));
}

TEST_CASE("Cramer-Rao bounds") {
    CHECK(crb_bound(4.0, 1).value() == doctest::Approx(0.25));
    CHECK_FALSE(crb_bound(0.0, 3).has_value());
    CHECK_FALSE(crb_bound(-1.0, 1).has_value());
    CHECK_THROWS_AS(crb_bound(1.0, 0), std::invalid_argument);

    // two-parameter bound: diagonal of the inverse matrix
    QfimMatrix f;
    f.labels = {"Bp", "Bm"};
    f.entries.resize(2, 2);
    f.entries << 5.0, 1.0, 1.0, 3.0;
    const Eigen::VectorXd bound = crb_multiparameter(f);
    const double det = 5.0 * 3.0 - 1.0;
    CHECK(bound[0] == doctest::Approx(3.0 / det));
    CHECK(bound[1] == doctest::Approx(5.0 / det));
}

TEST_CASE("basis covariance") {
    std::mt19937 rng(17);
    const ModelBundle m = h1_bundle();
    const Matrix hc = m.char_closed_analytic({{"B", 0.0}}, "B", 1.0);  // degenerate spectrum at B=0
    const ThermalState ts = thermal_state(HermitianOperator::from(m.build_h({{"B", 0.0}})), 0.8);
    const double f0 = qfi_mixed(ts.state, hc);
    for (int k = 0; k < 5; ++k) {
        const Matrix u = random_unitary(rng, 4);
        const Matrix rho_u = u * ts.state.density() * u.adjoint();
        const Matrix hc_u = u * hc * u.adjoint();
        const double fu = qfi_mixed(SpectralState::from_density(rho_u), Matrix(0.5 * (hc_u + Matrix(hc_u.adjoint()))));
        CHECK(fu == doctest::Approx(f0).epsilon(1e-9));
    }
}

TEST_CASE("oracle triangle across the zoo") {
    std::mt19937 rng(123);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (const std::string name : {"h1", "h2", "h3"}) {
        const ModelBundle& m = model_by_name(name);
        for (int k = 0; k < 4; ++k) {
            Params p;
            if (name == "h1") p = {{"B", 0.2 + uni(rng)}};
            if (name == "h2") p = {{"gamma", 0.3 + 0.6 * uni(rng)}, {"Bp", 0.2 + uni(rng)}, {"Bm", 0.2 + uni(rng)}};
            if (name == "h3") p = {{"chi", 0.4 + uni(rng)}, {"B", 0.3 + uni(rng)}};
            const std::string which = m.estimated.front();
            const double t = 0.3 + 2.0 * uni(rng);
            const PureState psi = random_state(rng, m.dim(p));
            const double f_closed = qfi_pure(psi, m.char_closed_analytic(p, which, t));
            auto h_of = [&](double th) {
                Params q = p;
                q[which] = th;
                return m.build_h(q);
            };
            const double f_fd = qfi_fd_oracle(h_of, param(p, which), t, psi);
            CHECK(std::abs(f_closed - f_fd) <= 1e-5 * (1.0 + f_closed));
        }
    }
}
