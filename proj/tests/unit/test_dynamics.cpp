#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "ssbh/dynamics.hpp"
#include "ssbh/error.hpp"
#include "ssbh/numerics.hpp"
#include "ssbh/rates.hpp"

using namespace ssbh;
using testutil::setup;

TEST_CASE("rate matrix structure") {
    const Setup s = setup(1.0, 4.0, 2.0);
    const RateMatrix m = build_rate_matrix(s);
    CHECK(m.size() == m.n_max() + 1);
    for (std::size_t k = 0; k < m.size(); ++k) CHECK(std::abs(m.column_sum(k)) < 1e-14 * m.diag[k] + 1e-300);
    for (std::size_t n = 0; n + 1 < m.size(); ++n) {
        const LevelRates lo = level_rates(n, s), hi = level_rates(n + 1, s);
        CHECK(m.lower[n] == doctest::Approx(-lo.c).epsilon(1e-15));
        CHECK(m.upper[n] == doctest::Approx(-hi.d).epsilon(1e-15));
    }
    CHECK(m.truncation_ratio < 1e-6);
    CHECK(m.c_bath[0].back() == 0.0);
}

TEST_CASE("two-level window") {
    const Setup s = setup(50.0, 1.5, 0.5);
    const RateMatrix m = build_rate_matrix(s, 1);
    const LevelRates r0 = level_rates(0, s), r1 = level_rates(1, s);
    REQUIRE(m.size() == 2);
    CHECK(m.diag[0] == doctest::Approx(r0.c).epsilon(1e-15));
    CHECK(m.diag[1] == doctest::Approx(r1.d).epsilon(1e-15));
    CHECK(m.lower[0] == doctest::Approx(-r0.c).epsilon(1e-15));
    CHECK(m.upper[0] == doctest::Approx(-r1.d).epsilon(1e-15));

    const auto e = numerics::eig_sym_tridiag(m.diag, {-std::sqrt(r0.c * r1.d)});
    CHECK(std::abs(e.values[0]) < 1e-14 * e.values[1]);
    CHECK(e.values[1] == doctest::Approx(r0.c + r1.d).epsilon(1e-14));
}

TEST_CASE("inadmissible truncation") {
    try {
        build_rate_matrix(setup(0.0, 10.0, 10.0), 20);
        FAIL("expected InadmissibleTruncation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InadmissibleTruncation);
    }
    CHECK_THROWS_AS(build_rate_matrix(setup(1.0, 1.0, 1.0), 0), Error);
}

TEST_CASE("time grid") {
    const auto t = log_time_grid(1e-2, 1e3, 200);
    REQUIRE(t.size() == 200);
    CHECK(t.front() == doctest::Approx(1e-2).epsilon(1e-14));
    CHECK(t.back() == doctest::Approx(1e3).epsilon(1e-14));
    for (std::size_t k = 1; k < t.size(); ++k) CHECK(t[k] / t[k - 1] == doctest::Approx(t[1] / t[0]).epsilon(1e-12));
    CHECK_THROWS_AS(log_time_grid(0.0, 1.0, 10), Error);
    CHECK_THROWS_AS(log_time_grid(1.0, 1.0, 10), Error);
    CHECK_THROWS_AS(log_time_grid(1.0, 2.0, 1), Error);
}

TEST_CASE("evolution endpoints") {
    const Setup s = setup(1.0, 4.0, 2.0);
    const RateMatrix m = build_rate_matrix(s);
    const auto rho0 = vacuum_state(m.size());
    const TssResult tss = relaxation_time(m, 0.1);
    const auto ts = evolve(m, rho0, {0.0, 50.0 * tss.t_ss}, 0.1);
    CHECK(ts.populations[0] == rho0);
    const auto d = steady_populations_at(s, m.n_max());
    for (std::size_t n = 0; n < m.size(); ++n) CHECK(std::abs(ts.populations[1][n] - d.rho[n]) < 1e-8);
    // Long-time currents equal the steady-state values.
    const auto c = steady_currents(s, d);
    CHECK(ts.particle_current[0][1] == doctest::Approx(c.total.particle).epsilon(1e-8));
    CHECK(ts.particle_current[1][1] == doctest::Approx(-c.total.particle).epsilon(1e-8));
    CHECK(ts.energy_current[0][1] == doctest::Approx(c.total.energy).epsilon(1e-8));
}

TEST_CASE("equilibrium state is stationary") {
    const Setup s = setup(0.7, 2.0, 2.0);
    const RateMatrix m = build_rate_matrix(s);
    std::vector<double> g(m.size());
    double z = 0.0;
    for (std::size_t n = 0; n < g.size(); ++n) z += (g[n] = std::exp(-level_energy(n, s.system) / 2.0));
    for (double& x : g) x /= z;
    const auto ts = evolve(m, g, log_time_grid(1e-2, 1e4, 30), 0.1);
    for (const auto& p : ts.populations)
        for (std::size_t n = 0; n < g.size(); ++n) CHECK(std::abs(p[n] - g[n]) < 1e-10);
}

TEST_CASE("relaxation from vacuum is monotone") {
    const auto times = log_time_grid(1e-2, 1e3, 200);
    for (double chi : {0.5, 1.0, 2.0, 4.0}) {
        const RateMatrix m = build_rate_matrix(setup(chi, 4.0, 2.0));
        const auto ts = evolve(m, vacuum_state(m.size()), times, 0.1);
        for (std::size_t k = 1; k < times.size(); ++k) {
            CHECK(ts.occupation[k] >= ts.occupation[k - 1] - 1e-13);
            double mass = 0.0;
            for (double x : ts.populations[k]) mass += x;
            CHECK(std::abs(mass - 1.0) < 1e-10);
        }
        // dN/dt = I_1 + I_2 at an interior time, by central differences.
        const double t = 30.0, h = 1e-3;
        const auto mid = evolve(m, vacuum_state(m.size()), {t - h, t, t + h}, 0.1);
        const double dndt = (mid.occupation[2] - mid.occupation[0]) / (2 * h);
        CHECK(dndt == doctest::Approx(mid.particle_current[0][1] + mid.particle_current[1][1]).epsilon(1e-6));
    }
}

TEST_CASE("evolve rejects bad input") {
    const RateMatrix m = build_rate_matrix(setup(1.0, 4.0, 2.0));
    CHECK_THROWS_AS(evolve(m, {0.5, 0.4}, {1.0}, 0.1), Error);
    CHECK_THROWS_AS(evolve(m, {-0.1, 1.1}, {1.0}, 0.1), Error);
    CHECK_THROWS_AS(evolve(m, vacuum_state(m.size() + 1), {1.0}, 0.1), Error);
    CHECK_THROWS_AS(evolve(m, vacuum_state(m.size()), {2.0, 1.0}, 0.1), Error);
    CHECK_THROWS_AS(evolve(m, vacuum_state(m.size()), {1.0}, 0.0), Error);
    const auto short_state = evolve(m, {1.0}, {0.0}, 0.1);
    CHECK(short_state.populations[0].size() == m.size());
}

TEST_CASE("relaxation time") {
    SUBCASE("two-level regime") {
        const Setup s = setup(50.0, 1.5, 0.5);
        const TssResult r = relaxation_time(build_rate_matrix(s), 0.1);
        const double w = 51.0, j = w * std::exp(-w / 1000.0);
        const double exact = j * (0.4 * (2 * testutil::bose(w, 1.5) + 1) + 1.6 * (2 * testutil::bose(w, 0.5) + 1));
        CHECK(r.lambda1 == doctest::Approx(exact).epsilon(1e-10));
        CHECK(r.t_ss == doctest::Approx(1.0 / (0.01 * r.lambda1)).epsilon(1e-15));
        const NesbRelaxation nesb = tss_nesb(s);
        CHECK(nesb.t_ss == doctest::Approx(r.t_ss).epsilon(1e-10));
    }
    SUBCASE("eps scaling") {
        const RateMatrix m = build_rate_matrix(setup(1.0, 4.0, 2.0));
        CHECK(relaxation_time(m, 0.1).t_ss / relaxation_time(m, 0.2).t_ss == doctest::Approx(4.0).epsilon(1e-13));
    }
    SUBCASE("depends on the temperatures") {
        const double a = relaxation_time(build_rate_matrix(setup(1.0, 4.0, 2.0)), 0.1).t_ss;
        const double b = relaxation_time(build_rate_matrix(setup(1.0, 8.0, 4.0)), 0.1).t_ss;
        CHECK(std::abs(a - b) / a > 0.05);
    }
    SUBCASE("real spectrum") {
        const TssResult r = relaxation_time(build_rate_matrix(setup(2.0, 4.0, 2.0)), 0.1);
        CHECK(r.imag_checked);
        CHECK(r.max_imag < 1e-8 * r.spectral_radius);
    }
}

TEST_CASE("harmonic relaxation") {
    const Setup s = setup(0.0, 4.0, 2.0);
    const HarmonicRelaxation h = tss_harmonic(s);
    CHECK(h.t_ss == doctest::Approx(1.0 / (0.01 * 2.0 * std::exp(-0.001))).epsilon(1e-14));
    CHECK(h.t_ss == doctest::Approx(50.05).epsilon(1e-4));
    const double nss = (0.4 * testutil::bose(1.0, 4.0) + 1.6 * testutil::bose(1.0, 2.0)) / 2.0;
    CHECK(h.n_ss == doctest::Approx(nss).epsilon(1e-14));
    CHECK(h.occupation(0.0, 0.3) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(h.occupation(1e6, 0.3) == doctest::Approx(nss).epsilon(1e-14));
    const CurrentPair c = h.from_bath(0, 10.0, 0.0);
    CHECK(c.energy == c.particle);
    CHECK(h.from_bath(0, 1e6, 0.0).particle == doctest::Approx(-h.from_bath(1, 1e6, 0.0).particle).epsilon(1e-12));
    CHECK_THROWS_AS(tss_harmonic(setup(0.5, 4.0, 2.0)), Error);
}

TEST_CASE("two-level relaxation asymptote") {
    const NesbRelaxation r = tss_nesb(setup(50.0, 1.5, 0.5, 0.4, 1.6));
    CHECK(r.t_ss_asymptote == doctest::Approx(1.0 / (0.01 * 51.0 * 2.0)).epsilon(1e-14));
    const double a = tss_nesb(setup(5.0, 1.0, 1.0, 1.0, 1.0, 0.0)).t_ss_asymptote;
    const double b = tss_nesb(setup(50.0, 1.0, 1.0, 1.0, 1.0, 0.0)).t_ss_asymptote;
    CHECK(a == b);
}
