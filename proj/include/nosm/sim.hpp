/**
 * @file sim.hpp
 * @brief Fixed-step integration, closed-loop traces with event detection, and
 *        the performance metrics (overshoot, settling time, steady bounds,
 *        chattering index).
 */

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "nosm/sliding.hpp"
#include "nosm/types.hpp"

namespace nosm {

struct SimConfig {
    double dt = 1e-3;
    double tEnd = 10.0;
    enum class Integrator { Rk4, Euler } integrator = Integrator::Rk4;
    std::uint64_t seed = 0;
    double eventTolerance = 1e-3;

    void validate() const {
        if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
        if (!(tEnd > 0.0)) throw std::invalid_argument("tEnd must be positive");
    }
};

/// Classical 4-stage step. For discontinuous right-hand sides this is the
/// documented fixed-step approximation; no event location is performed.
template <std::size_t N, class Rhs>
std::array<double, N> step_rk4(Rhs&& rhs, const std::array<double, N>& y, double t, double dt) {
    std::array<double, N> k1 = rhs(t, y);
    std::array<double, N> tmp;
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
    std::array<double, N> k2 = rhs(t + 0.5 * dt, tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
    std::array<double, N> k3 = rhs(t + 0.5 * dt, tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + dt * k3[i];
    std::array<double, N> k4 = rhs(t + dt, tmp);
    std::array<double, N> out;
    for (std::size_t i = 0; i < N; ++i)
        out[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    for (double v : out)
        if (!std::isfinite(v)) throw NonFiniteState("integrator produced a non-finite value");
    return out;
}

template <std::size_t N, class Rhs>
std::array<double, N> step_euler(Rhs&& rhs, const std::array<double, N>& y, double t, double dt) {
    std::array<double, N> k = rhs(t, y);
    std::array<double, N> out;
    for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + dt * k[i];
    for (double v : out)
        if (!std::isfinite(v)) throw NonFiniteState("integrator produced a non-finite value");
    return out;
}

struct SimEvent {
    enum class Kind { Tc, SurfaceHit, RefJump, GainUpdate, ReReach };
    Kind kind;
    double t = 0.0;
};

const char* to_string(SimEvent::Kind k);

struct TraceRow {
    double t = 0.0;
    double e1 = 0.0;
    double e2 = 0.0;
    double sigma = 0.0;
    double u = 0.0;
    double d = 0.0;
    int mode = 0;  // 0 reaching, 1 sliding
};

struct Trace {
    std::vector<TraceRow> rows;
    std::vector<SimEvent> events;

    std::optional<double> first_event(SimEvent::Kind k, double after = -1.0) const;
};

struct OvershootVerdict {
    bool overshoot = false;
    double firstCrossing = 0.0;  // time of the first crossing beyond tolerance
    double magnitude = 0.0;      // |e1| at that crossing
};

/// Crossing detector: fires at the first t where e1(t) passes the opposite
/// side of zero by more than eps = eventTolerance * max(1, |e1(start)|),
/// taking sign from the first sample. When jump times are given, each
/// inter-jump span is judged against its own initial error.
OvershootVerdict detect_overshoot(const std::vector<double>& t, const std::vector<double>& e1,
                                  double eventTolerance,
                                  const std::vector<double>& jumpTimes = {});
OvershootVerdict detect_overshoot(const Trace& trace, double eventTolerance);

struct SettlingComparison {
    double tsMeasured = 0.0;
    double analyticTs = 0.0;
    double relError = 0.0;
};

/// Measured time from tc to the surface hit compared against the closed-form
/// settling time evaluated at the effective gain k2bar = k2 - sign(sigma(tc)) d(tc).
/// Throws MissingEvent when the trace lacks tc or surfaceHit events.
SettlingComparison measure_settling(const Trace& trace, const GainSet& g);

struct SteadyCheck {
    bool pass = false;
    double supE1 = 0.0;
    double supE2 = 0.0;
    double slack1 = 0.0;
    double slack2 = 0.0;
};

/// sup of |e1|, |e2| over the final 20% of the trace against the bounds.
SteadyCheck check_steady_bounds(const Trace& trace, const SteadyBounds& bounds);

struct MetricsReport {
    OvershootVerdict overshoot;
    double settlingTimeMeasured = 0.0;  // absolute surface-hit time, 0 if none
    double sse1 = 0.0;                  // sup |e1| over final 20%
    double sse2 = 0.0;
    double chatteringIndex = 0.0;       // total variation of u per second
};

MetricsReport compute_metrics(const Trace& trace, double eventTolerance);

/// Appends the surface-hit event: first time |sigma| <= tol holds on two
/// consecutive samples after the last tc (or gain update).
void detect_surface_hit(Trace& trace, double tol);

}  // namespace nosm
