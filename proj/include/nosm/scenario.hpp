/**
 * @file scenario.hpp
 * @brief Declarative scenario specs, the named registry, and the runner that
 *        wires specs into closed loops. Specs round-trip through JSON so
 *        scenarios can live in config files; CLI flags override fields.
 */

#pragma once

#include <map>
#include <optional>
#include <string>

#include "nosm/loop.hpp"

namespace nosm {

enum class PlantKind { SlidingMode, DoubleIntegrator, FirstOrder, Uav };
enum class ControllerSel { Ideal, Smooth, Pid, Pi };

std::string to_string(PlantKind k);
std::string to_string(ControllerSel c);
ControllerSel controller_from_string(const std::string& s);

/// Declarative disturbance description (mirrors the Disturbance factories).
struct DisturbanceSpec {
    std::string kind = "zero";  // zero|constant|sinusoidalProduct|boundedRandom|gust
    double value = 0.0;         // constant / offset / peak
    double amplitude = 0.0;
    double w1 = 0.0, w2 = 0.0;
    double holdDt = 0.01;
    double t0 = 0.0, duration = 0.0;
    std::uint64_t stream = 0;

    Disturbance build() const;
};

struct NoiseSpec {
    std::string kind = "none";  // none|sinusoid|boundedRandom
    double amplitude = 0.0;
    double omega = 0.0;
    double phase = 0.0;
    double holdDt = 0.001;
    std::uint64_t stream = 0;

    NoiseModel build() const;
};

struct RefSpec {
    std::string kind = "constant";  // constant|sinusoid
    double offset = 0.0;
    double amplitude = 0.0;
    double omega = 0.0;

    Reference build() const;
};

struct ReachSpec {
    double kc = 0.0;
    std::optional<double> e1c;
    std::optional<double> e2c;
};

/// Mission geometry of the hover -> line -> circle flight with one reference
/// jump at jumpTime.
struct UavMissionSpec {
    double hoverZ = 1.0;
    double jumpTime = 6.0;
    double lineX = 5.0;         // cruise target on the x axis
    double circleStart = 16.0;  // circle phase begin (continuous transition)
    double circleRadius = 5.0;
    double circleOmega = 0.3;   // rad/s after the ramp
    double omegaRampT = 4.0;
    double climbZ = 2.5;
    double climbT = 10.0;  // climb duration from circleStart

    UavMission build() const;
};

struct ScenarioSpec {
    std::string name;
    std::string summary;
    PlantKind plant = PlantKind::SlidingMode;
    ControllerSel controller = ControllerSel::Ideal;

    GainConfig gains;
    ReachSpec reach;
    PidGains pid;
    std::optional<GainSet> fixedGains;
    std::optional<double> rhoOverride;  // forces rho after determination

    double e1_0 = 0.0, e2_0 = 0.0;  // sliding-mode initial errors
    double x1_0 = 0.0, x2_0 = 0.0;  // tracking plant initial state

    /// Draw (e1_0, e2_0) from the seed instead of the fixed fields.
    bool drawInitialFromSeed = false;
    double drawRange = 100.0;

    RefSpec ref;
    std::string hKind = "zero";  // zero|cubeRootSine (5 x1^{1/3} sin(0.5 t))
    DisturbanceSpec disturbance;
    NoiseSpec noise1, noise2;

    SimConfig sim;

    std::optional<UavMissionSpec> uav;
    GainConfig attGains;   // UAV attitude channels
    ReachSpec attReach;
    std::array<DisturbanceSpec, kNumChannels> uncertainty{};

    /// Applies a sweep/CLI parameter override by name
    /// (rho, dt, Ld, e1_0, e2_0, seed, tEnd, rho0, k2M).
    void apply_override(const std::string& key, double value);
};

/// JSON round-trip (field names mirror the struct members).
std::string to_json(const ScenarioSpec& spec);
ScenarioSpec scenario_from_json(const std::string& text);
void merge_json_into(ScenarioSpec& spec, const std::string& text);

/// Outcome of one scenario run. Scalar plants fill `scalar`; the UAV fills
/// `uav` and per-channel metrics.
struct ScenarioOutcome {
    PlantKind plant;
    RunResult scalar;
    UavRunResult uav;
    MetricsReport metrics;                       // scalar runs
    std::array<MetricsReport, kNumChannels> channelMetrics{};  // uav runs
};

ScenarioOutcome run_scenario(const ScenarioSpec& spec);

/// Built-in scenarios reproducing the worked examples and the flight mission.
const std::map<std::string, ScenarioSpec>& scenario_registry();
ScenarioSpec get_scenario(const std::string& name);  // throws std::out_of_range

}  // namespace nosm
