/**
 * @file types.hpp
 * @brief Core value types shared by the gain, sliding-mode and control layers.
 */

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace nosm {

/// sign(x) with sign(0) = 0, so the origin is an equilibrium of the
/// switched dynamics.
inline double sgn(double x) { return static_cast<double>(x > 0.0) - static_cast<double>(x < 0.0); }

/// Sliding variables (e1, e2). The sliding function sigma = e2 + k1*e1 is
/// always recomputed from the current k1, never cached.
struct ErrorState {
    double e1 = 0.0;
    double e2 = 0.0;

    double sigma(double k1) const { return e2 + k1 * e1; }
};

/// Values of (e1, e2) at the instant tc when |e1| first satisfies |e1| <= e1c.
/// They seed the gain determination of the second subsystem.
struct SwitchErrors {
    double e1tc = 0.0;
    double e2tc = 0.0;

    bool is_degenerate() const { return e1tc == 0.0 && e2tc == 0.0; }
    double sigma(double k1) const { return e2tc + k1 * e1tc; }
};

/// Coordinate zone of the switch errors (the eight regions around the
/// origin plus the origin itself).
enum class Zone { I1, I2, II1, II2, III1, III2, IV1, IV2, Origin };

const char* to_string(Zone z);

/// Configuration for the gain determination pipeline.
///
/// Ld      bound on the matched disturbance (for tracking loops it must cover
///         sup|delta| + sup|xdd_ref|).
/// k2M     ceiling on k2 imposed by the actuators.
/// beta**  multipliers that turn the open gain inequalities into equalities;
///         beta11 in (0,1), beta12 > 1, beta2 > 1.
/// rhoC0, rho0  multipliers for the tanh sharpness parameters.
/// fastK1Floor  raise k1 to 1 whenever the computed value falls in (0,1).
struct GainConfig {
    double Ld = 0.0;
    double k2M = 1.0;
    double rhoC0 = 50.0;
    double rho0 = 20.0;
    double beta11 = 0.5;
    double beta12 = 2.3;
    double beta13 = 1.0;
    double beta2 = 1.5;
    bool fastK1Floor = true;

    void validate() const;
};

/// Parameters of the first (reaching) subsystem.
struct ReachParams {
    double e1c = 0.0;
    double e2c = 0.0;
    double kc = 0.0;
    double rhoC = 0.0;
};

/// Complete parameter set of a non-overshooting sliding mode / controller.
struct GainSet {
    double k1 = 0.0;
    double k2 = 0.0;
    double kc = 0.0;
    double rho = 0.0;
    double rhoC = 0.0;
    double e1c = 0.0;
    double e2c = 0.0;
};

/// PID / PI baseline gains.
struct PidGains {
    double kp = 0.0;
    double ki = 0.0;
    double kd = 0.0;
};

// ---------------------------------------------------------------------------
// Error types. Gain errors signal an infeasible or unsafe parameter request;
// they are never silently clamped away.
// ---------------------------------------------------------------------------

struct GainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// k2M <= Ld: no admissible e1c/e2c interval exists.
struct InfeasibleBounds : GainError {
    using GainError::GainError;
};

/// A gain parameter violates its admissible range (e.g. kc <= Ld).
struct InvalidGain : GainError {
    using GainError::GainError;
};

/// The computed k2 exceeds the ceiling k2M. Clamping could silently break
/// the non-overshooting conditions, so this is an error.
struct GainCeilingExceeded : GainError {
    using GainError::GainError;
};

/// k2 - k1*e2max - Ld <= 0: the smoothed mode cannot dominate the
/// disturbance budget.
struct SaturatedGain : GainError {
    using GainError::GainError;
};

/// A branch of the gain formulas requires |e1(tc)| > 0 but it is zero.
struct DegenerateErrors : GainError {
    using GainError::GainError;
};

/// The settling-time radicand is negative: invalid gain/zone combination.
struct NoRealRoot : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Closed-form segment requested outside its derivation context.
struct InvalidContext : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Requested acceleration needs |roll| or |pitch| at or beyond pi/2 - margin.
struct SingularAttitude : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The rotor force solution contains a negative thrust.
struct InfeasibleThrust : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Integrator produced a non-finite state component.
struct NonFiniteState : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A metric requires an event the trace does not contain.
struct MissingEvent : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace nosm
