#include <doctest.h>

#include <cmath>

#include "nosm/gains.hpp"
#include "nosm/sim.hpp"
#include "nosm/sliding.hpp"
#include "test_helpers.hpp"

using namespace nosm;
using nosm::testutil::Rng;

TEST_SUITE_BEGIN("sliding");

namespace {

GainSet example41_gains() {
    const GainConfig cfg = testutil::config_sec4();
    const ReachParams rp = select_reach_params(cfg, 6.0, 2.0, 5.0);
    return determine_gains({2.0, -5.0}, cfg, rp);
}

GainSet example42_gains() {
    GainSet g = example41_gains();
    const GainConfig cfg = testutil::config_sec4();
    const RhoResult r = determine_rho({2.0, -5.0}, g.k1, g.k2, cfg);
    g.rho = r.rho;
    return g;
}

}  // namespace

TEST_CASE("ideal_rhs first-subsystem branch") {
    const GainSet g = example41_gains();
    // |e1| = 100 > e1c: de2 = -kc sign(e2 + e2c sign(e1)) = -6 sign(-10+5) = +6
    const Deriv2 d = ideal_rhs({100.0, -10.0}, g, 0.0);
    CHECK(d.de1 == -10.0);
    CHECK(d.de2 == doctest::Approx(6.0));
}

TEST_CASE("ideal_rhs equilibrium and on-surface cases use sign(0) = 0") {
    GainSet g = example41_gains();
    const Deriv2 d0 = ideal_rhs({0.0, 0.0}, g, 0.0);
    CHECK(d0.de1 == 0.0);
    CHECK(d0.de2 == 0.0);

    g.k1 = 1.0;
    g.k2 = 5.44;
    const Deriv2 d1 = ideal_rhs({0.5, -0.5}, g, 0.0);  // sigma = 0
    CHECK(d1.de2 == 0.0);
}

TEST_CASE("smooth_rhs saturates to the ideal branch value") {
    const GainSet g = example42_gains();
    const Deriv2 d = smooth_rhs({100.0, -10.0}, g, 0.0);
    CHECK(d.de2 == doctest::Approx(6.0).epsilon(1e-12));
    const Deriv2 dz = smooth_rhs({0.0, 0.0}, g, 0.0);
    CHECK(dz.de1 == 0.0);
    CHECK(dz.de2 == 0.0);
}

TEST_CASE("tanh identity tanh(rho x) = 1 - 2/(e^{2 rho x} + 1)") {
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        const double rho = rng.uniform(0.1, 60.0);
        const double x = rng.uniform(-2.0, 2.0);
        const double lhs = std::tanh(rho * x);
        const double rhs = 1.0 - 2.0 / (std::exp(2.0 * rho * x) + 1.0);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("smooth_rhs approaches ideal_rhs as rho grows (off the switching sets)") {
    GainSet g = example42_gains();
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        ErrorState s{rng.uniform(-3.0, 3.0), rng.uniform(-8.0, 8.0)};
        if (std::abs(s.sigma(g.k1)) < 1e-2) continue;
        if (std::abs(std::abs(s.e1) - g.e1c) < 1e-6) continue;
        if (std::abs(s.e2 + g.e2c * sgn(s.e1)) < 1e-2) continue;
        GainSet gBig = g;
        gBig.rho = 1e5;
        gBig.rhoC = 1e5;
        const Deriv2 di = ideal_rhs(s, g, 0.3);
        const Deriv2 ds = smooth_rhs(s, gBig, 0.3);
        CHECK(ds.de2 == doctest::Approx(di.de2).epsilon(1e-9));
    }
}

TEST_CASE("both rhs are odd: f(-e1,-e2,-d) = -f(e1,e2,d)") {
    const GainSet g = example42_gains();
    Rng rng(13);
    for (int i = 0; i < 200; ++i) {
        const ErrorState s{rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0)};
        const double d = rng.uniform(-5.0, 5.0);
        const Deriv2 a = ideal_rhs(s, g, d);
        const Deriv2 b = ideal_rhs({-s.e1, -s.e2}, g, -d);
        CHECK(b.de1 == doctest::Approx(-a.de1));
        CHECK(b.de2 == doctest::Approx(-a.de2));
        const Deriv2 as = smooth_rhs(s, g, d);
        const Deriv2 bs = smooth_rhs({-s.e1, -s.e2}, g, -d);
        CHECK(bs.de1 == doctest::Approx(-as.de1));
        CHECK(bs.de2 == doctest::Approx(-as.de2).epsilon(1e-12));
    }
}

TEST_CASE("parabola_from_switch coefficients") {
    const ParabolaSegment p = parabola_from_switch({2.0, -5.0}, 1.25, 16.93);
    CHECK(p.c1 == 2.0);
    CHECK(p.b1 == -5.0);
    CHECK(p.a1 == doctest::Approx(8.465));  // k2bar/2, sigma(tc) < 0
    CHECK(p.c == doctest::Approx(-2.5));
    CHECK(p.b == doctest::Approx(16.93 - 6.25));
    CHECK(p.a == doctest::Approx(1.25 * 16.93 / 2.0));
}

TEST_CASE("sigma vertex is negative for valid zone II-2 gains") {
    const ParabolaSegment p = parabola_from_switch({2.0, -5.0}, 1.25, 16.875 - 5.0);
    CHECK((4.0 * p.a * p.c - p.b * p.b) / (4.0 * p.a) < 0.0);
}

TEST_CASE("parabola mirror case negates the coefficients") {
    const ParabolaSegment p = parabola_from_switch({2.0, -5.0}, 1.25, 16.93);
    const ParabolaSegment m = parabola_from_switch({-2.0, 5.0}, 1.25, 16.93);
    CHECK(m.c1 == -p.c1);
    CHECK(m.b1 == -p.b1);
    CHECK(m.a1 == doctest::Approx(-p.a1));
    CHECK(m.c == doctest::Approx(-p.c));
    CHECK(m.b == doctest::Approx(-p.b));
    CHECK(m.a == doctest::Approx(-p.a));
}

TEST_CASE("parabola_from_switch rejects sigma(tc) = 0") {
    CHECK_THROWS_AS(parabola_from_switch({1.0, -1.0}, 1.0, 10.0), InvalidContext);
}

TEST_CASE("settling_time closed form matches the quadratic root") {
    // Frozen from the independent root computation.
    CHECK(settling_time({2.0, -5.0}, 1.25, 16.93) ==
          doctest::Approx(0.19601555838767348).epsilon(1e-12));
    // Equivalent formulation through the sigma parabola root.
    const ParabolaSegment p = parabola_from_switch({2.0, -5.0}, 1.25, 16.93);
    const double root = (-p.b + std::sqrt(p.b * p.b - 4.0 * p.a * p.c)) / (2.0 * p.a);
    CHECK(settling_time({2.0, -5.0}, 1.25, 16.93) == doctest::Approx(root).epsilon(1e-12));
}

TEST_CASE("settling_time cross-checked against direct integration") {
    // Ideal mode, d = 0, start on the switch values: integrate until sigma
    // crosses zero and compare.
    const GainSet g = example41_gains();
    const double k2bar = g.k2;  // d = 0
    const double tsA = settling_time({2.0, -5.0}, g.k1, k2bar);
    double e1 = 2.0, e2 = -5.0, t = 0.0;
    const double dt = 1e-6;
    while (ErrorState{e1, e2}.sigma(g.k1) < 0.0) {
        // exact integration of the constant-acceleration segment
        e1 += e2 * dt + 0.5 * k2bar * dt * dt;
        e2 += k2bar * dt;
        t += dt;
        REQUIRE(t < 1.0);
    }
    CHECK(t == doctest::Approx(tsA).epsilon(1e-4));
}

TEST_CASE("settling_time trivial and error cases") {
    CHECK(settling_time({0.0, 0.0}, 1.0, 10.0) == 0.0);
    // For sigma(tc) < 0 and a positive effective gain the radicand is provably
    // nonnegative; it turns negative exactly when the disturbance overpowers
    // k2 (effective gain k2bar < 0), the invalid-gain signal.
    CHECK_THROWS_AS(settling_time({-2.0, 0.1}, 5.0, -0.5), NoRealRoot);
}

TEST_CASE("zone IV-1: surface hit precedes the e1 zero") {
    const double k1 = 1.15;
    // Minimum effective gain for the zone, with margin.
    const double bound = (k1 * k1 / 3.0) * (2.0 + std::sqrt(4.0 + 3.0 / (k1 * k1)));
    const double k2bar = 1.2 * bound;
    const double ts = settling_time({-2.0, 1.0}, k1, k2bar);
    const ParabolaSegment p = parabola_from_switch({-2.0, 1.0}, k1, k2bar);
    const auto tz = e1_zero_time(p);
    REQUIRE(tz.has_value());
    CHECK(ts == doctest::Approx(0.32664010615891725).epsilon(1e-9));
    CHECK(*tz == doctest::Approx(0.9422929333251968).epsilon(1e-9));
    CHECK(ts < *tz);
}

TEST_CASE("e1_zero_time absent when the vertex clears zero") {
    // zone II-2 with k2bar > e2tc^2/(2 e1tc): upward parabola, min above 0
    const double k2bar = 25.0 / 4.0 + 1.0;
    const ParabolaSegment p = parabola_from_switch({2.0, -5.0}, 1.25, k2bar);
    CHECK_FALSE(e1_zero_time(p).has_value());
    // at exactly the critical gain the vertex touches zero
    const ParabolaSegment pc = parabola_from_switch({2.0, -5.0}, 1.25, 25.0 / 4.0);
    CHECK(e1_zero_time(pc).has_value());
}

TEST_CASE("e1_zero_time trivial case returns t0") {
    ParabolaSegment p;
    p.t0 = 3.0;
    p.a1 = 1.0;
    CHECK(e1_zero_time(p) == 3.0);
}

TEST_CASE("steady_state_bounds on the section-6 controller listing") {
    GainSet g;
    g.k1 = 1.01;
    g.k2 = 5.33;
    g.rho = 32.19;
    const SteadyBounds b = steady_state_bounds(g, 2.0, 1.62);
    CHECK(b.b1 == doctest::Approx(0.025669941577325883).epsilon(1e-9));
    CHECK(b.b2 == doctest::Approx(2.0 * 1.01 * b.b1).epsilon(1e-12));
}

TEST_CASE("steady_state_bounds scale as 1/rho and vanish in the limit") {
    GainSet g;
    g.k1 = 1.0;
    g.k2 = 10.0;
    g.rho = 20.0;
    const SteadyBounds b = steady_state_bounds(g, 2.0, 1.0);
    GainSet g2 = g;
    g2.rho = 40.0;
    const SteadyBounds b2 = steady_state_bounds(g2, 2.0, 1.0);
    CHECK(b2.b1 == doctest::Approx(b.b1 / 2.0).epsilon(1e-12));
    g2.rho = 1e12;
    CHECK(steady_state_bounds(g2, 2.0, 1.0).b1 < 1e-11);
}

TEST_CASE("steady_state_bounds trivial and error cases") {
    GainSet g;
    g.k1 = 1.0;
    g.k2 = 10.0;
    g.rho = 20.0;
    CHECK(steady_state_bounds(g, 0.0, 0.0).b1 == 0.0);
    CHECK_THROWS_AS(steady_state_bounds(g, 9.0, 1.5), SaturatedGain);
}

TEST_CASE("oracle equivalence: constant-d integration follows the parabola") {
    // For constant d the effective gain is k2 - sign(sigma(tc)) d; the
    // simulated trajectory must ride the closed-form segment until the hit.
    Rng rng(21);
    const GainConfig cfg = testutil::config_sec4();
    const ReachParams rp = select_reach_params(cfg, 6.0, 2.0, 5.0);
    for (int trial = 0; trial < 25; ++trial) {
        const SwitchErrors se{rng.uniform(-1.0, 1.0) * rp.e1c,
                              rng.uniform(-1.0, 1.0) * rp.e2c};
        if (std::abs(se.sigma(1.0)) < 0.2) continue;
        GainSet g;
        try {
            g = determine_gains(se, cfg, rp);
        } catch (const GainError&) {
            continue;
        }
        if (se.sigma(g.k1) == 0.0) continue;
        const double d = rng.uniform(-cfg.Ld, cfg.Ld);
        const double k2bar = g.k2 - sgn(se.sigma(g.k1)) * d;
        const ParabolaSegment p = parabola_from_switch(se, g.k1, k2bar);
        const double ts = settling_time(se, g.k1, k2bar);

        // The closed form describes the second subsystem only; skip draws
        // whose e1 arc leaves the |e1| <= e1c band before the hit.
        {
            double lo = std::min(p.e1_at(0.0), p.e1_at(ts));
            double hi = std::max(p.e1_at(0.0), p.e1_at(ts));
            const double tv = -p.b1 / (2.0 * p.a1);
            if (tv > 0.0 && tv < ts) {
                lo = std::min(lo, p.e1_at(tv));
                hi = std::max(hi, p.e1_at(tv));
            }
            if (hi > rp.e1c || lo < -rp.e1c) continue;
        }

        std::array<double, 2> y{se.e1tc, se.e2tc};
        const double dt = 1e-5;
        auto rhs = [&](double, const std::array<double, 2>& s) -> std::array<double, 2> {
            return {s[1], ideal_rhs({s[0], s[1]}, g, d).de2};
        };
        double t = 0.0;
        while (t + dt < ts) {
            y = step_rk4<2>(rhs, y, t, dt);
            t += dt;
            CHECK(std::abs(y[0] - p.e1_at(t)) < 1e-9);
            CHECK(std::abs(y[1] - p.e2_at(t)) < 1e-9);
        }
    }
}

TEST_SUITE_END();
