#include <doctest.h>

#include <cmath>
#include <complex>

#include "nosm/control.hpp"
#include "nosm/plant.hpp"
#include "nosm/sliding.hpp"
#include "test_helpers.hpp"

using namespace nosm;
using nosm::testutil::Rng;

TEST_SUITE_BEGIN("control");

namespace {

GainSet example61_gains() {
    const GainConfig cfg = testutil::config_sec6();
    const ReachParams rp = select_reach_params(cfg, 2.5, 1.0, 2.0);
    return determine_gains({-1.0, 2.0}, cfg, rp);
}

// Independent root oracle for the stability gate: Durand-Kerner on the monic
// cubic s^3 + kd s^2 + kp s + ki.
bool cubic_stable_by_roots(double kp, double ki, double kd) {
    using C = std::complex<double>;
    const C a(kd, 0.0), b(kp, 0.0), c(ki, 0.0);
    auto f = [&](C s) { return ((s + a) * s + b) * s + c; };
    C r0(0.4, 0.9), r1 = r0 * r0, r2 = r1 * r0;
    for (int it = 0; it < 200; ++it) {
        const C n0 = r0 - f(r0) / ((r0 - r1) * (r0 - r2));
        const C n1 = r1 - f(r1) / ((r1 - r0) * (r1 - r2));
        const C n2 = r2 - f(r2) / ((r2 - r0) * (r2 - r1));
        r0 = n0;
        r1 = n1;
        r2 = n2;
    }
    const double m = std::max({r0.real(), r1.real(), r2.real()});
    return m < 0.0;
}

}  // namespace

TEST_CASE("ideal_control direct substitution") {
    GainSet g;
    g.k1 = 1.0;
    g.k2 = 5.44;
    g.kc = 2.5;
    g.e1c = 1.0;
    g.e2c = 2.0;
    CHECK(ideal_control({0.5, 0.0}, g, 0.0) == doctest::Approx(5.44));
}

TEST_CASE("ideal_control reaching branch on the section-6 initial errors") {
    const GainSet g = example61_gains();
    // |e1| = 8 > e1c = 1: u = kc sign(e2 + e2c sign(e1)) - h = 2.5 sign(1.4 - 2)
    const double h0 = 5.0 * std::cbrt(10.0) * std::sin(0.0);
    CHECK(ideal_control({-8.0, 1.4}, g, h0) == doctest::Approx(-2.5));
}

TEST_CASE("closed-loop error dynamics equal the desired rhs (structural identity)") {
    const GainSet g = example61_gains();
    Rng rng(3);
    for (int i = 0; i < 2000; ++i) {
        const double x1 = rng.uniform(-10.0, 10.0);
        const double x2 = rng.uniform(-10.0, 10.0);
        const double t = rng.uniform(0.0, 20.0);
        const double xd = 2.0 + 0.5 * std::sin(0.8 * t);
        const double xd1 = 0.4 * std::cos(0.8 * t);
        const double xd2 = -0.32 * std::sin(0.8 * t);
        const double h = 5.0 * std::cbrt(x1) * std::sin(0.5 * t);
        const double delta = 1.0 + 0.3 * std::sin(0.3 * t) * std::sin(1.6 * t);
        const ErrorState e{xd - x1, xd1 - x2};

        for (bool smoothed : {false, true}) {
            const double u = smoothed ? smooth_control(e, g, h) : ideal_control(e, g, h);
            const PlantDeriv pd = double_integrator_rhs(x1, x2, u, h, delta);
            const double de2Loop = xd2 - pd.dx2;
            const Deriv2 want =
                smoothed ? smooth_rhs(e, g, xd2 + delta) : ideal_rhs(e, g, xd2 + delta);
            CHECK(std::abs(de2Loop - want.de2) < 1e-12);
        }
    }
}

TEST_CASE("smooth_control basics") {
    const GainSet g = example61_gains();
    CHECK(smooth_control({0.0, 0.0}, g, 3.7) == doctest::Approx(-3.7));

    // convergence to the ideal law off the switching sets
    GainSet gBig = g;
    gBig.rho = 1e6;
    gBig.rhoC = 1e6;
    const ErrorState e{0.4, 0.7};
    CHECK(smooth_control(e, gBig, 1.0) ==
          doctest::Approx(ideal_control(e, g, 1.0)).epsilon(1e-9));
}

TEST_CASE("section-6 smoothed controller listing reproduces") {
    const GainConfig cfg = testutil::config_sec6();
    const ReachParams rp = select_reach_params(cfg, 2.5, 1.0, 2.0);
    CHECK(std::abs(rp.rhoC - 15.44) < 1e-2);
    GainSet g = determine_gains({-1.0, 2.0}, cfg, rp);
    // spot value: u = k2 tanh(rho sigma) - h at a sample state
    const ErrorState e{0.3, -0.1};
    const double u = smooth_control(e, g, 0.2);
    CHECK(u == doctest::Approx(g.k2 * std::tanh(g.rho * (e.e2 + g.k1 * e.e1)) - 0.2));
}

TEST_CASE("controller output bound |u + h| <= max(kc, k2)") {
    const GainSet g = example61_gains();
    Rng rng(17);
    for (int i = 0; i < 500; ++i) {
        const ErrorState e{rng.uniform(-20.0, 20.0), rng.uniform(-20.0, 20.0)};
        const double h = rng.uniform(-10.0, 10.0);
        CHECK(std::abs(smooth_control(e, g, h) + h) <= std::max(g.kc, g.k2) + 1e-12);
    }
}

TEST_CASE("pid_control / pi_control direct forms") {
    CHECK(pid_control(1.0, 0.0, 0.0, {2.0, 1.0, 1.0}, 0.0) == doctest::Approx(2.0));
    CHECK(pi_control(1.0, 0.0, 3.0, 2.0, 0.0) == doctest::Approx(3.0));
}

TEST_CASE("pid_stable worked triples") {
    CHECK(pid_stable(2.0, 1.0, 1.0, 3));   // 2*1 > 1
    CHECK_FALSE(pid_stable(1.0, 2.0, 1.0, 3));  // 1*1 < 2
    CHECK(pid_stable(1.0, 1.0, 0.0, 2));
    CHECK_FALSE(pid_stable(-1.0, 1.0, 0.0, 2));
}

TEST_CASE("pid_stable agrees with the cubic-root oracle") {
    Rng rng(29);
    int checked = 0;
    while (checked < 100) {
        const double kp = rng.uniform(-4.0, 4.0);
        const double ki = rng.uniform(-4.0, 4.0);
        const double kd = rng.uniform(-4.0, 4.0);
        // keep clear of the stability boundary where both sides are fragile
        if (std::abs(kd * kp - ki) < 1e-3 || std::abs(kd) < 1e-3 || std::abs(ki) < 1e-3)
            continue;
        CHECK(pid_stable(kp, ki, kd, 3) == cubic_stable_by_roots(kp, ki, kd));
        ++checked;
    }
}

TEST_CASE("gain scheduling: reset inside the band determines gains at t = 0") {
    const GainConfig cfg = testutil::config_sec8();
    const ReachParams rp = select_reach_params(cfg, 5.5, 1.0, 1.2);
    SlidingController ctl(cfg, rp, true);
    const auto ev = ctl.reset({0.95, -0.01}, 0.0);
    REQUIRE(ev.size() == 2);
    CHECK(ev[0].kind == ControllerEvent::Kind::Tc);
    CHECK(ctl.mode() == ControlMode::Sliding);
    CHECK(ctl.gains().k1 == doctest::Approx(1.0));
    CHECK(std::abs(ctl.gains().k2 / 7.70 - 1.0) < 0.05);
}

TEST_CASE("gain scheduling: reaching until |e1| <= e1c") {
    const GainConfig cfg = testutil::config_sec4();
    const ReachParams rp = select_reach_params(cfg, 6.0, 2.0, 5.0);
    SlidingController ctl(cfg, rp, false);
    CHECK(ctl.reset({100.0, -10.0}, 0.0).empty());
    CHECK(ctl.mode() == ControlMode::Reaching);
    CHECK_FALSE(ctl.has_gains());
    CHECK(ctl.observe({50.0, -5.0}, 1.0).empty());
    const auto ev = ctl.observe({1.999, -5.001}, 2.0);
    REQUIRE(ev.size() == 2);
    CHECK(ctl.mode() == ControlMode::Sliding);
    CHECK(ctl.tc_event() == 2.0);
    CHECK(ctl.gains().k1 == doctest::Approx(0.5 * 5.001 / 1.999));
}

TEST_CASE("on_reference_jump re-enters reaching for large errors") {
    // k2M raised to 10: the post-jump gain class (~8.55) exceeds the hover
    // ceiling of 8, and the ceiling is an error by design.
    GainConfig cfg = testutil::config_sec8();
    cfg.k2M = 10.0;
    const ReachParams rp = select_reach_params(cfg, 5.5, 1.0, 1.2);
    SlidingController ctl(cfg, rp, true);
    ctl.reset({-0.3, 0.02}, 0.0);
    const GainSet before = ctl.gains();
    CHECK(std::abs(before.k2 / 7.05 - 1.0) < 0.05);

    // a 2 m step with e1c = 1 forces a new reaching phase
    const auto ev = ctl.on_reference_jump({2.0, 0.02}, 6.0);
    REQUIRE(ev.size() == 1);
    CHECK(ev[0].kind == ControllerEvent::Kind::ReReach);
    CHECK(ctl.mode() == ControlMode::Reaching);
    CHECK_FALSE(ctl.tc_event().has_value());

    // once back inside, the gains are redetermined from the new tc values
    const auto ev2 = ctl.observe({1.0, -1.2}, 9.0);
    REQUIRE(ev2.size() == 2);
    CHECK(ctl.gains().k2 == doctest::Approx(1.5 * (1.2 + 4.5)));  // 8.55-class
}

TEST_CASE("on_reference_jump with zero errors keeps the previous gains (floors applied)") {
    const GainConfig cfg = testutil::config_sec8();
    const ReachParams rp = select_reach_params(cfg, 5.5, 1.0, 1.2);
    SlidingController ctl(cfg, rp, true);
    ctl.reset({0.95, -0.01}, 0.0);
    const GainSet before = ctl.gains();
    const auto ev = ctl.on_reference_jump({0.0, 0.0}, 6.0);
    REQUIRE(ev.size() == 1);
    CHECK(ev[0].kind == ControllerEvent::Kind::GainUpdate);
    CHECK(ctl.gains().k1 == before.k1);
    CHECK(ctl.gains().k2 == before.k2);
    CHECK(ctl.gains().rho == before.rho);
}

TEST_CASE("reference segments differentiate correctly (finite differences)") {
    const Reference r = Reference::sinusoid(2.0, 0.5, 0.8);
    const double h = 1e-6;
    for (double t : {0.3, 1.7, 9.2}) {
        const double d1 = (r.value(t + h) - r.value(t - h)) / (2.0 * h);
        const double d2 = (r.d1(t + h) - r.d1(t - h)) / (2.0 * h);
        CHECK(r.d1(t) == doctest::Approx(d1).epsilon(1e-6));
        CHECK(r.d2(t) == doctest::Approx(d2).epsilon(1e-6));
        CHECK(std::abs(r.d2(t)) <= r.Lx() + 1e-12);
    }
}

TEST_SUITE_END();
