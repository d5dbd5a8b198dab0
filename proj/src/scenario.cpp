#include "nosm/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace nosm {

using nlohmann::json;

std::string to_string(PlantKind k) {
    switch (k) {
        case PlantKind::SlidingMode: return "sliding-mode";
        case PlantKind::DoubleIntegrator: return "double-integrator";
        case PlantKind::FirstOrder: return "first-order";
        case PlantKind::Uav: return "uav";
    }
    return "?";
}

std::string to_string(ControllerSel c) {
    switch (c) {
        case ControllerSel::Ideal: return "ideal";
        case ControllerSel::Smooth: return "smooth";
        case ControllerSel::Pid: return "pid";
        case ControllerSel::Pi: return "pi";
    }
    return "?";
}

ControllerSel controller_from_string(const std::string& s) {
    if (s == "ideal") return ControllerSel::Ideal;
    if (s == "smooth") return ControllerSel::Smooth;
    if (s == "pid") return ControllerSel::Pid;
    if (s == "pi") return ControllerSel::Pi;
    throw std::invalid_argument("unknown controller: " + s);
}

Disturbance DisturbanceSpec::build() const {
    if (kind == "zero") return Disturbance::zero();
    if (kind == "constant") return Disturbance::constant(value);
    if (kind == "sinusoidalProduct")
        return Disturbance::sinusoidal_product(value, amplitude, w1, w2);
    if (kind == "boundedRandom") return Disturbance::bounded_random(amplitude, holdDt, stream);
    if (kind == "gust") return Disturbance::gust(value, t0, duration);
    throw std::invalid_argument("unknown disturbance kind: " + kind);
}

NoiseModel NoiseSpec::build() const {
    if (kind == "none") return NoiseModel::none();
    if (kind == "sinusoid") return NoiseModel::sinusoid(amplitude, omega, phase);
    if (kind == "boundedRandom") return NoiseModel::bounded_random(amplitude, holdDt, stream);
    throw std::invalid_argument("unknown noise kind: " + kind);
}

Reference RefSpec::build() const {
    if (kind == "constant") return Reference::constant(offset);
    if (kind == "sinusoid") return Reference::sinusoid(offset, amplitude, omega);
    throw std::invalid_argument("unknown reference kind: " + kind);
}

UavMission UavMissionSpec::build() const {
    UavMission m;
    const double R = circleRadius;
    const double wMax = circleOmega;
    const double tRamp = omegaRampT;
    const double tCirc = circleStart;
    const double tJump = jumpTime;

    // circle angle with a linear angular-rate ramp (alpha(tCirc) = 0,
    // alphadot(tCirc) = 0: the transition from the line segment is C1)
    auto alpha = [=](double t) {
        const double tau = t - tCirc;
        if (tau <= 0.0) return 0.0;
        if (tau < tRamp) return wMax * tau * tau / (2.0 * tRamp);
        return wMax * (tau - tRamp / 2.0);
    };
    auto alphaDot = [=](double t) {
        const double tau = t - tCirc;
        if (tau <= 0.0) return 0.0;
        return wMax * std::min(tau / tRamp, 1.0);
    };
    auto alphaDdot = [=](double t) {
        const double tau = t - tCirc;
        return (tau > 0.0 && tau < tRamp) ? wMax / tRamp : 0.0;
    };

    // x: hover at 0, jump to the cruise/circle-entry abscissa, then circle
    Reference::Segment xHover{0.0, [](double) { return 0.0; }, [](double) { return 0.0; },
                              [](double) { return 0.0; }};
    const double X = lineX;
    Reference::Segment xCruise{tJump, [=](double) { return X; }, [](double) { return 0.0; },
                               [](double) { return 0.0; }};
    Reference::Segment xCircle{
        tCirc, [=](double t) { return R * std::cos(alpha(t)); },
        [=](double t) { return -R * std::sin(alpha(t)) * alphaDot(t); },
        [=](double t) {
            const double a = alpha(t), ad = alphaDot(t);
            return -R * std::cos(a) * ad * ad - R * std::sin(a) * alphaDdot(t);
        }};
    const double LxX = R * (wMax * wMax + wMax / tRamp);
    m.x = Reference({xHover, xCruise, xCircle}, {tJump}, LxX);

    Reference::Segment yHover{0.0, [](double) { return 0.0; }, [](double) { return 0.0; },
                              [](double) { return 0.0; }};
    Reference::Segment yCircle{
        tCirc, [=](double t) { return R * std::sin(alpha(t)); },
        [=](double t) { return R * std::cos(alpha(t)) * alphaDot(t); },
        [=](double t) {
            const double a = alpha(t), ad = alphaDot(t);
            return -R * std::sin(a) * ad * ad + R * std::cos(a) * alphaDdot(t);
        }};
    m.y = Reference({yHover, yCircle}, {tJump}, LxX);

    // z: hover height, then a smoothstep climb over [circleStart, +climbT]
    const double z0 = hoverZ, tc0 = circleStart, dz = climbZ - hoverZ, T = climbT;
    Reference::Segment zHover{0.0, [=](double) { return z0; }, [](double) { return 0.0; },
                              [](double) { return 0.0; }};
    Reference::Segment zClimb{
        tc0,
        [=](double t) {
            const double u = std::clamp((t - tc0) / T, 0.0, 1.0);
            return z0 + dz * u * u * (3.0 - 2.0 * u);
        },
        [=](double t) {
            const double u = std::clamp((t - tc0) / T, 0.0, 1.0);
            return dz * 6.0 * u * (1.0 - u) / T;
        },
        [=](double t) {
            const double u = std::clamp((t - tc0) / T, 0.0, 1.0);
            return (u <= 0.0 || u >= 1.0) ? 0.0 : dz * (6.0 - 12.0 * u) / (T * T);
        }};
    m.z = Reference({zHover, zClimb}, {}, std::abs(dz) * 6.0 / (T * T));

    m.psi = Reference::constant(0.0);
    m.jumpTimes = {tJump};
    return m;
}

void ScenarioSpec::apply_override(const std::string& key, double v) {
    if (key == "rho") rhoOverride = v;
    else if (key == "dt") sim.dt = v;
    else if (key == "Ld") gains.Ld = v;
    else if (key == "e1_0") { e1_0 = v; x1_0 = -v; drawInitialFromSeed = false; }
    else if (key == "e2_0") { e2_0 = v; x2_0 = -v; drawInitialFromSeed = false; }
    else if (key == "seed") sim.seed = static_cast<std::uint64_t>(v);
    else if (key == "tEnd") sim.tEnd = v;
    else if (key == "rho0") gains.rho0 = v;
    else if (key == "k2M") gains.k2M = v;
    else throw std::invalid_argument("unknown override parameter: " + key);
}

// --- JSON ------------------------------------------------------------------

namespace {

json gains_to_json(const GainConfig& g) {
    return json{{"Ld", g.Ld},         {"k2M", g.k2M},       {"rhoC0", g.rhoC0},
                {"rho0", g.rho0},     {"beta11", g.beta11}, {"beta12", g.beta12},
                {"beta13", g.beta13}, {"beta2", g.beta2},   {"fastK1Floor", g.fastK1Floor}};
}

void gains_from_json(const json& j, GainConfig& g) {
    g.Ld = j.value("Ld", g.Ld);
    g.k2M = j.value("k2M", g.k2M);
    g.rhoC0 = j.value("rhoC0", g.rhoC0);
    g.rho0 = j.value("rho0", g.rho0);
    g.beta11 = j.value("beta11", g.beta11);
    g.beta12 = j.value("beta12", g.beta12);
    g.beta13 = j.value("beta13", g.beta13);
    g.beta2 = j.value("beta2", g.beta2);
    g.fastK1Floor = j.value("fastK1Floor", g.fastK1Floor);
}

json dist_to_json(const DisturbanceSpec& d) {
    return json{{"kind", d.kind}, {"value", d.value},   {"amplitude", d.amplitude},
                {"w1", d.w1},     {"w2", d.w2},         {"holdDt", d.holdDt},
                {"t0", d.t0},     {"duration", d.duration}, {"stream", d.stream}};
}

void dist_from_json(const json& j, DisturbanceSpec& d) {
    d.kind = j.value("kind", d.kind);
    d.value = j.value("value", d.value);
    d.amplitude = j.value("amplitude", d.amplitude);
    d.w1 = j.value("w1", d.w1);
    d.w2 = j.value("w2", d.w2);
    d.holdDt = j.value("holdDt", d.holdDt);
    d.t0 = j.value("t0", d.t0);
    d.duration = j.value("duration", d.duration);
    d.stream = j.value("stream", d.stream);
}

void merge_json(ScenarioSpec& s, const json& j) {
    s.name = j.value("name", s.name);
    s.summary = j.value("summary", s.summary);
    if (j.contains("plant")) {
        const std::string p = j["plant"];
        if (p == "sliding-mode") s.plant = PlantKind::SlidingMode;
        else if (p == "double-integrator") s.plant = PlantKind::DoubleIntegrator;
        else if (p == "first-order") s.plant = PlantKind::FirstOrder;
        else if (p == "uav") s.plant = PlantKind::Uav;
        else throw std::invalid_argument("unknown plant kind: " + p);
    }
    if (j.contains("controller")) s.controller = controller_from_string(j["controller"]);
    if (j.contains("gains")) gains_from_json(j["gains"], s.gains);
    if (j.contains("attGains")) gains_from_json(j["attGains"], s.attGains);
    if (j.contains("reach")) {
        const json& r = j["reach"];
        s.reach.kc = r.value("kc", s.reach.kc);
        if (r.contains("e1c")) s.reach.e1c = r["e1c"].get<double>();
        if (r.contains("e2c")) s.reach.e2c = r["e2c"].get<double>();
    }
    if (j.contains("attReach")) {
        const json& r = j["attReach"];
        s.attReach.kc = r.value("kc", s.attReach.kc);
        if (r.contains("e1c")) s.attReach.e1c = r["e1c"].get<double>();
        if (r.contains("e2c")) s.attReach.e2c = r["e2c"].get<double>();
    }
    if (j.contains("pid")) {
        s.pid.kp = j["pid"].value("kp", s.pid.kp);
        s.pid.ki = j["pid"].value("ki", s.pid.ki);
        s.pid.kd = j["pid"].value("kd", s.pid.kd);
    }
    if (j.contains("rhoOverride")) s.rhoOverride = j["rhoOverride"].get<double>();
    s.e1_0 = j.value("e1_0", s.e1_0);
    s.e2_0 = j.value("e2_0", s.e2_0);
    s.x1_0 = j.value("x1_0", s.x1_0);
    s.x2_0 = j.value("x2_0", s.x2_0);
    s.drawInitialFromSeed = j.value("drawInitialFromSeed", s.drawInitialFromSeed);
    s.drawRange = j.value("drawRange", s.drawRange);
    if (j.contains("ref")) {
        const json& r = j["ref"];
        s.ref.kind = r.value("kind", s.ref.kind);
        s.ref.offset = r.value("offset", s.ref.offset);
        s.ref.amplitude = r.value("amplitude", s.ref.amplitude);
        s.ref.omega = r.value("omega", s.ref.omega);
    }
    s.hKind = j.value("h", s.hKind);
    if (j.contains("disturbance")) dist_from_json(j["disturbance"], s.disturbance);
    if (j.contains("noise1")) {
        const json& r = j["noise1"];
        s.noise1.kind = r.value("kind", s.noise1.kind);
        s.noise1.amplitude = r.value("amplitude", s.noise1.amplitude);
        s.noise1.omega = r.value("omega", s.noise1.omega);
        s.noise1.phase = r.value("phase", s.noise1.phase);
    }
    if (j.contains("sim")) {
        const json& r = j["sim"];
        s.sim.dt = r.value("dt", s.sim.dt);
        s.sim.tEnd = r.value("tEnd", s.sim.tEnd);
        s.sim.seed = r.value("seed", s.sim.seed);
        s.sim.eventTolerance = r.value("eventTolerance", s.sim.eventTolerance);
        if (r.contains("integrator"))
            s.sim.integrator = r["integrator"] == "euler" ? SimConfig::Integrator::Euler
                                                          : SimConfig::Integrator::Rk4;
    }
}

}  // namespace

std::string to_json(const ScenarioSpec& s) {
    json j;
    j["name"] = s.name;
    j["summary"] = s.summary;
    j["plant"] = to_string(s.plant);
    j["controller"] = to_string(s.controller);
    j["gains"] = gains_to_json(s.gains);
    j["reach"] = json{{"kc", s.reach.kc}};
    if (s.reach.e1c) j["reach"]["e1c"] = *s.reach.e1c;
    if (s.reach.e2c) j["reach"]["e2c"] = *s.reach.e2c;
    j["pid"] = json{{"kp", s.pid.kp}, {"ki", s.pid.ki}, {"kd", s.pid.kd}};
    if (s.rhoOverride) j["rhoOverride"] = *s.rhoOverride;
    j["e1_0"] = s.e1_0;
    j["e2_0"] = s.e2_0;
    j["x1_0"] = s.x1_0;
    j["x2_0"] = s.x2_0;
    j["ref"] = json{{"kind", s.ref.kind},
                    {"offset", s.ref.offset},
                    {"amplitude", s.ref.amplitude},
                    {"omega", s.ref.omega}};
    j["h"] = s.hKind;
    j["disturbance"] = dist_to_json(s.disturbance);
    j["sim"] = json{{"dt", s.sim.dt},
                    {"tEnd", s.sim.tEnd},
                    {"seed", s.sim.seed},
                    {"eventTolerance", s.sim.eventTolerance},
                    {"integrator",
                     s.sim.integrator == SimConfig::Integrator::Euler ? "euler" : "rk4"}};
    return j.dump(2);
}

ScenarioSpec scenario_from_json(const std::string& text) {
    ScenarioSpec s;
    merge_json(s, json::parse(text));
    return s;
}

void merge_json_into(ScenarioSpec& spec, const std::string& text) {
    merge_json(spec, json::parse(text));
}

// --- runner ----------------------------------------------------------------

namespace {

std::function<double(double, double, double)> build_h(const std::string& kind) {
    if (kind == "zero") return {};
    if (kind == "cubeRootSine")
        return [](double t, double x1, double) { return 5.0 * std::cbrt(x1) * std::sin(0.5 * t); };
    throw std::invalid_argument("unknown h kind: " + kind);
}

// Seed-derived initial errors for the Monte-Carlo scenarios.
ErrorState draw_initial(std::uint64_t seed, double range) {
    auto mix = [](std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    };
    const double u1 = static_cast<double>(mix(seed * 2 + 1) >> 11) * 0x1.0p-53;
    const double u2 = static_cast<double>(mix(seed * 2 + 2) >> 11) * 0x1.0p-53;
    return {range * (2.0 * u1 - 1.0), range * (2.0 * u2 - 1.0)};
}

}  // namespace

ScenarioOutcome run_scenario(const ScenarioSpec& spec) {
    ScenarioOutcome out;
    out.plant = spec.plant;

    switch (spec.plant) {
        case PlantKind::SlidingMode: {
            SlidingModeLoop loop;
            loop.config = spec.gains;
            loop.reach = select_reach_params(spec.gains, spec.reach.kc, spec.reach.e1c,
                                             spec.reach.e2c);
            loop.smoothed = spec.controller == ControllerSel::Smooth;
            loop.e0 = spec.drawInitialFromSeed ? draw_initial(spec.sim.seed, spec.drawRange)
                                               : ErrorState{spec.e1_0, spec.e2_0};
            loop.d = spec.disturbance.build();
            loop.sim = spec.sim;
            loop.rhoOverride = spec.rhoOverride;
            out.scalar = run_sliding_mode(loop);
            out.metrics = compute_metrics(out.scalar.trace, spec.sim.eventTolerance);
            break;
        }
        case PlantKind::DoubleIntegrator: {
            TrackingLoop loop;
            loop.config = spec.gains;
            loop.reach = select_reach_params(spec.gains, spec.reach.kc, spec.reach.e1c,
                                             spec.reach.e2c);
            switch (spec.controller) {
                case ControllerSel::Ideal: loop.controller = ControllerKind::Ideal; break;
                case ControllerSel::Smooth: loop.controller = ControllerKind::Smooth; break;
                case ControllerSel::Pid: loop.controller = ControllerKind::Pid; break;
                case ControllerSel::Pi:
                    throw std::invalid_argument("pi controller needs the first-order plant");
            }
            loop.pidGains = spec.pid;
            loop.fixedGains = spec.fixedGains;
            loop.rhoOverride = spec.rhoOverride;
            loop.ref = spec.ref.build();
            loop.h = build_h(spec.hKind);
            loop.delta = spec.disturbance.build();
            loop.n1 = spec.noise1.build();
            loop.n2 = spec.noise2.build();
            loop.x1_0 = spec.x1_0;
            loop.x2_0 = spec.x2_0;
            loop.sim = spec.sim;
            out.scalar = run_tracking(loop);
            out.metrics = compute_metrics(out.scalar.trace, spec.sim.eventTolerance);
            break;
        }
        case PlantKind::FirstOrder: {
            if (spec.controller != ControllerSel::Pi)
                throw std::invalid_argument("first-order plant pairs with the pi controller");
            PiLoop loop;
            loop.kp = spec.pid.kp;
            loop.ki = spec.pid.ki;
            loop.d = spec.disturbance.build();
            loop.e0 = spec.e1_0;
            loop.sim = spec.sim;
            out.scalar = run_pi_loop(loop);
            out.metrics = compute_metrics(out.scalar.trace, spec.sim.eventTolerance);
            break;
        }
        case PlantKind::Uav: {
            if (!spec.uav) throw std::invalid_argument("uav scenario lacks a mission spec");
            UavLoop loop;
            loop.params = UavParams{};
            loop.s0.pos = {0.3, 0.2, 0.05, 0.0, 0.0, 0.0};
            loop.s0.vel = {-0.02, -0.01, 0.01, 0.0, 0.0, 0.0};
            loop.posConfig = spec.gains;
            loop.attConfig = spec.attGains;
            loop.posReach = select_reach_params(spec.gains, spec.reach.kc, spec.reach.e1c,
                                                spec.reach.e2c);
            loop.attReach = select_reach_params(spec.attGains, spec.attReach.kc,
                                                spec.attReach.e1c, spec.attReach.e2c);
            for (int c = 0; c < kNumChannels; ++c)
                loop.uncertainty[c] = spec.uncertainty[c].build();
            loop.mission = spec.uav->build();
            loop.sim = spec.sim;
            out.uav = run_uav(loop);
            for (int c = 0; c < kNumChannels; ++c)
                out.channelMetrics[c] =
                    compute_metrics(out.uav.channel_trace(c), spec.sim.eventTolerance);
            out.metrics = out.channelMetrics[0];
            break;
        }
    }
    return out;
}

// --- registry ---------------------------------------------------------------

namespace {

ScenarioSpec make_example41() {
    ScenarioSpec s;
    s.name = "example41";
    s.summary = "ideal sliding mode, e0 = (100, -10), product-sine disturbance";
    s.plant = PlantKind::SlidingMode;
    s.controller = ControllerSel::Ideal;
    s.gains.Ld = 5.0;
    s.gains.k2M = 20.0;
    s.gains.rhoC0 = 50.0;
    s.gains.rho0 = 20.0;
    s.gains.beta13 = 1.0;
    s.reach = {6.0, 2.0, 5.0};
    s.e1_0 = 100.0;
    s.e2_0 = -10.0;
    s.disturbance.kind = "sinusoidalProduct";
    s.disturbance.value = 3.0;
    s.disturbance.amplitude = 2.0;
    s.disturbance.w1 = 0.3;
    s.disturbance.w2 = 1.6;
    s.sim.dt = 1e-4;
    s.sim.tEnd = 35.0;
    s.sim.eventTolerance = 5e-3;
    return s;
}

ScenarioSpec make_example42() {
    ScenarioSpec s = make_example41();
    s.name = "example42";
    s.summary = "tanh-smoothed sliding mode on the example41 setup";
    s.controller = ControllerSel::Smooth;
    s.sim.dt = 1e-3;
    s.sim.eventTolerance = 1e-2;
    return s;
}

ScenarioSpec make_example61() {
    ScenarioSpec s;
    s.name = "example61";
    s.summary = "ideal non-overshooting tracking of 2 + 0.5 sin(0.8 t)";
    s.plant = PlantKind::DoubleIntegrator;
    s.controller = ControllerSel::Ideal;
    s.gains.Ld = 1.62;
    s.gains.k2M = 10.0;
    s.gains.rhoC0 = 20.0;
    s.gains.rho0 = 20.0;
    s.gains.beta13 = 2.0;
    s.reach = {2.5, 1.0, 2.0};
    s.x1_0 = 10.0;
    s.x2_0 = -1.0;
    s.ref = {"sinusoid", 2.0, 0.5, 0.8};
    s.hKind = "cubeRootSine";
    s.disturbance.kind = "sinusoidalProduct";
    s.disturbance.value = 1.0;
    s.disturbance.amplitude = 0.3;
    s.disturbance.w1 = 0.3;
    s.disturbance.w2 = 1.6;
    s.sim.dt = 1e-3;
    s.sim.tEnd = 20.0;
    s.sim.eventTolerance = 5e-3;
    return s;
}

ScenarioSpec make_example62() {
    ScenarioSpec s = make_example61();
    s.name = "example62";
    s.summary = "smoothed non-overshooting tracking on the example61 setup";
    s.controller = ControllerSel::Smooth;
    s.sim.eventTolerance = 1e-2;
    return s;
}

ScenarioSpec make_pid_windup() {
    ScenarioSpec s;
    s.name = "pid-windup";
    s.summary = "PID baseline with a large initial error: integral windup overshoot";
    s.plant = PlantKind::DoubleIntegrator;
    s.controller = ControllerSel::Pid;
    s.gains.Ld = 3.5;
    s.gains.k2M = 20.0;
    s.reach = {6.0, 2.0, 5.0};
    s.pid = {2.0, 1.0, 1.0};
    s.ref.kind = "constant";
    s.disturbance.kind = "constant";
    s.disturbance.value = 3.0;
    s.x1_0 = -100.0;
    s.sim.dt = 1e-3;
    s.sim.tEnd = 40.0;
    return s;
}

ScenarioSpec make_pid_const() {
    ScenarioSpec s = make_pid_windup();
    s.name = "pid-const";
    s.summary = "PID baseline absorbing a constant disturbance (integral limit)";
    s.pid = {2.0, 1.0, 2.0};
    s.x1_0 = -1.0;
    s.sim.tEnd = 60.0;
    return s;
}

ScenarioSpec make_pi_const() {
    ScenarioSpec s;
    s.name = "pi-const";
    s.summary = "first-order PI loop absorbing a constant disturbance";
    s.plant = PlantKind::FirstOrder;
    s.controller = ControllerSel::Pi;
    s.pid = {3.0, 2.0, 0.0};
    s.disturbance.kind = "constant";
    s.disturbance.value = 2.0;
    s.e1_0 = 1.0;
    s.sim.dt = 1e-3;
    s.sim.tEnd = 40.0;
    return s;
}

ScenarioSpec make_noise_filter() {
    ScenarioSpec s;
    s.name = "noise-filter";
    s.summary = "sinusoidal position noise through the sliding surface filter";
    s.plant = PlantKind::DoubleIntegrator;
    s.controller = ControllerSel::Smooth;
    s.gains.Ld = 2.0;
    s.gains.k2M = 30.0;
    GainSet g;
    g.k1 = 1.0;
    g.k2 = 10.0;
    g.kc = 6.0;
    g.rho = 500.0;
    g.rhoC = 10.0;
    g.e1c = 10.0;
    g.e2c = 12.0;
    s.fixedGains = g;
    s.reach = {6.0, 10.0, 12.0};
    s.ref.kind = "constant";
    s.noise1 = {"sinusoid", 0.1, 50.0, 0.0, 0.001, 0};
    s.sim.dt = 1e-4;
    s.sim.tEnd = 20.0;
    return s;
}

ScenarioSpec make_mc(bool smoothed) {
    ScenarioSpec s;
    s.name = smoothed ? "mc-smooth" : "mc-ideal";
    s.summary = "Monte-Carlo non-overshoot draw (seed-derived initial errors)";
    s.plant = PlantKind::SlidingMode;
    s.controller = smoothed ? ControllerSel::Smooth : ControllerSel::Ideal;
    s.gains.Ld = 5.0;
    // Ceiling sized for the +-100 draw box: draws starting inside the band
    // with |e1(0)| small and |e2(0)| large genuinely need e2^2/(2|e1|)-scale
    // deceleration, so the admissible ceiling must be generous.
    s.gains.k2M = 1e6;
    s.gains.rhoC0 = 50.0;
    // rho0 sized so the smoothed residual ln(.)/(2 rho k1) <= 1/(2 rho0)
    // stays below the overshoot tolerance floor of 1e-3.
    s.gains.rho0 = 600.0;
    s.gains.beta13 = 1.0;
    // kc large enough to compress |e2| ~ 100 within a few seconds of travel.
    s.reach = {110.0, 2.0, 5.0};
    s.drawInitialFromSeed = true;
    s.drawRange = 100.0;
    s.disturbance.kind = "boundedRandom";
    s.disturbance.amplitude = 5.0;
    s.disturbance.holdDt = 0.05;
    s.sim.dt = smoothed ? 2e-4 : 5e-4;
    s.sim.tEnd = 40.0;
    s.sim.eventTolerance = 1e-3;
    return s;
}

ScenarioSpec make_uav_mission() {
    ScenarioSpec s;
    s.name = "uav-mission";
    s.summary = "hover -> line cruise -> climbing circle with a reference jump at t = 6 s";
    s.plant = PlantKind::Uav;
    s.controller = ControllerSel::Smooth;
    // Flight-test parameter group. The printed flight ceiling (8) already
    // conflicts with the flight's own post-jump gain group (8.75); on top of
    // that the simulated attitude loop lags the tilt targets, so the band is
    // entered somewhat faster than e2c and the determined k2 runs higher.
    // The mission ceiling is therefore 16 under the ceiling-as-error policy.
    s.gains.Ld = 4.5;
    s.gains.k2M = 16.0;
    s.gains.rhoC0 = 6.0;
    s.gains.rho0 = 3.0;
    s.gains.beta13 = 2.0;
    s.reach = {5.5, 1.0, 1.2};
    // attitude channels run on the torque scale: their disturbance budget
    // (drag + torque uncertainty over J) is far below the crosswind force
    // bound, and modest angular-acceleration gains keep the rotor-force
    // split feasible
    s.attGains = s.gains;
    s.attGains.Ld = 1.0;
    s.attReach = {3.0, 1.0, 1.5};
    s.uav = UavMissionSpec{};
    for (int c = 0; c < 3; ++c) {
        s.uncertainty[c].kind = "sinusoidalProduct";
        s.uncertainty[c].value = 0.25;
        s.uncertainty[c].amplitude = 0.2;
        s.uncertainty[c].w1 = 0.37 + 0.05 * c;
        s.uncertainty[c].w2 = 1.3;
        s.uncertainty[c].stream = static_cast<std::uint64_t>(c);
    }
    for (int c = 3; c < kNumChannels; ++c) {
        s.uncertainty[c].kind = "sinusoidalProduct";
        s.uncertainty[c].value = 0.02;
        s.uncertainty[c].amplitude = 0.03;
        s.uncertainty[c].w1 = 0.5;
        s.uncertainty[c].w2 = 1.1;
        s.uncertainty[c].stream = static_cast<std::uint64_t>(c);
    }
    s.sim.dt = 1e-3;
    s.sim.tEnd = 45.0;
    s.sim.eventTolerance = 0.02;
    return s;
}

}  // namespace

const std::map<std::string, ScenarioSpec>& scenario_registry() {
    static const std::map<std::string, ScenarioSpec> reg = [] {
        std::map<std::string, ScenarioSpec> m;
        for (const ScenarioSpec& s :
             {make_example41(), make_example42(), make_example61(), make_example62(),
              make_pid_windup(), make_pid_const(), make_pi_const(), make_noise_filter(),
              make_mc(false), make_mc(true), make_uav_mission()})
            m.emplace(s.name, s);
        return m;
    }();
    return reg;
}

ScenarioSpec get_scenario(const std::string& name) {
    const auto& reg = scenario_registry();
    const auto it = reg.find(name);
    if (it == reg.end()) throw std::out_of_range("unknown scenario: " + name);
    return it->second;
}

}  // namespace nosm
