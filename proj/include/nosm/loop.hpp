/**
 * @file loop.hpp
 * @brief Closed-loop runners: the desired sliding-mode system by itself, the
 *        uncertain double integrator under each controller, the first-order
 *        PI loop, and the six-channel UAV cascade.
 */

#pragma once

#include <functional>

#include "nosm/control.hpp"
#include "nosm/plant.hpp"
#include "nosm/sim.hpp"

namespace nosm {

struct RunResult {
    Trace trace;
    std::vector<std::pair<double, GainSet>> gainHistory;

    const GainSet& gains_at_tc() const;
};

/// Integrates the desired 2-sliding mode (ideal or smoothed) directly, with
/// gain scheduling at tc. The u column carries the switching term.
struct SlidingModeLoop {
    GainConfig config;
    ReachParams reach;
    bool smoothed = false;
    ErrorState e0;
    Disturbance d;
    SimConfig sim;
    std::optional<double> rhoOverride;
};
RunResult run_sliding_mode(const SlidingModeLoop& spec);

enum class ControllerKind { Ideal, Smooth, Pid };

/// Closed loop of the uncertain double integrator x1'' = h + u - delta under
/// a sliding-mode or PID controller tracking a time-variant reference.
/// Measurement noise (n1 on x1, n2 on x2) enters every controller path.
struct TrackingLoop {
    GainConfig config;
    ReachParams reach;
    ControllerKind controller = ControllerKind::Smooth;
    PidGains pidGains;
    std::optional<GainSet> fixedGains;  // bypass gain scheduling when set
    Reference ref = Reference::constant(0.0);
    std::function<double(double t, double x1, double x2)> h;  // known term, may be null
    Disturbance delta;
    NoiseModel n1, n2;
    double x1_0 = 0.0;
    double x2_0 = 0.0;
    SimConfig sim;
    std::optional<double> rhoOverride;
};
RunResult run_tracking(const TrackingLoop& spec);

/// First-order PI loop in error form: e' = -g(t) - u + d with
/// u = kp e + ki int(e) - g(t).
struct PiLoop {
    double kp = 0.0, ki = 0.0;
    std::function<double(double)> gTerm;  // may be null (= 0)
    Disturbance d;
    double e0 = 0.0;
    SimConfig sim;
};
RunResult run_pi_loop(const PiLoop& spec);

// ---------------------------------------------------------------------------
// UAV cascade
// ---------------------------------------------------------------------------

struct UavChannelSample {
    double e1 = 0.0, e2 = 0.0, sigma = 0.0, u = 0.0, d = 0.0;
    int mode = 0;
};

struct UavTraceRow {
    double t = 0.0;
    std::array<UavChannelSample, kNumChannels> ch{};
    std::array<double, 3> position{};  // x, y, z
};

struct UavRunResult {
    std::vector<UavTraceRow> rows;
    std::vector<SimEvent> globalEvents;  // reference jumps
    std::array<std::vector<SimEvent>, kNumChannels> channelEvents;
    std::array<std::vector<std::pair<double, GainSet>>, kNumChannels> gainHistory;
    /// Steps where the torque demands had to be scaled down to keep every
    /// rotor force non-negative.
    int actuatorSaturations = 0;

    /// Scalar view of one channel (rows + merged events) for the metrics ops.
    Trace channel_trace(int c) const;
};

/// Mission references for the position channels and yaw. Jumps are shared.
struct UavMission {
    Reference x = Reference::constant(0.0);
    Reference y = Reference::constant(0.0);
    Reference z = Reference::constant(0.0);
    Reference psi = Reference::constant(0.0);
    std::vector<double> jumpTimes;
};

/// Outer position loop -> (F, thetaD, phiD) through the allocator; inner
/// attitude loop tracks (psiD, thetaD, phiD). The tilt targets pass through a
/// first-order lag whose state supplies the exact reference rate; the filter
/// snaps to the raw target at reference jumps.
struct UavLoop {
    UavParams params;
    UavState s0;
    GainConfig posConfig, attConfig;
    ReachParams posReach, attReach;
    UavUncertainty uncertainty;
    UavMission mission;
    SimConfig sim;
    double attRefTau = 0.15;  // s, tilt-target filter time constant
};
UavRunResult run_uav(const UavLoop& spec);

}  // namespace nosm
