/**
 * @file control.hpp
 * @brief Feedback laws built from the desired stable systems: the ideal and
 *        smoothed non-overshooting controllers with their gain-scheduling
 *        state machine, and the PID/PI baselines.
 */

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "nosm/gains.hpp"
#include "nosm/types.hpp"

namespace nosm {

/// Piecewise-smooth reference with exact first/second derivatives per segment
/// and explicit jump instants.
class Reference {
public:
    using TimeFn = std::function<double(double)>;

    struct Segment {
        double startTime = 0.0;
        TimeFn value;
        TimeFn d1;
        TimeFn d2;
    };

    Reference() = default;
    Reference(std::vector<Segment> segments, std::vector<double> jumpTimes, double Lx);

    static Reference constant(double v);
    static Reference sinusoid(double offset, double amplitude, double omega);

    double value(double t) const;
    double d1(double t) const;
    double d2(double t) const;

    const std::vector<double>& jump_times() const { return jumpTimes_; }
    double Lx() const { return Lx_; }

private:
    const Segment& segment_at(double t) const;

    std::vector<Segment> segments_;
    std::vector<double> jumpTimes_;
    double Lx_ = 0.0;
};

/// Ideal non-overshooting control law:
///   u = kc sign(e2 + e2c sign(e1)) - h   if |e1| > e1c
///       k2 sign(e2 + k1 e1) - h          otherwise
double ideal_control(const ErrorState& e, const GainSet& g, double h);

/// tanh-smoothed counterpart (inner sign(e1) kept).
double smooth_control(const ErrorState& e, const GainSet& g, double h);

/// u = kp e + ki integral + kd eDot - gTerm
double pid_control(double e, double eDot, double integral, const PidGains& pg, double gTerm);

/// u = kp e + ki integral - gTerm
double pi_control(double e, double integral, double kp, double ki, double gTerm);

/// Routh-Hurwitz test of the closed-loop characteristic polynomial:
/// order 3: s^3 + kd s^2 + kp s + ki  -> kd > 0, ki > 0, kd kp > ki
/// order 2: s^2 + kp s + ki           -> kp > 0, ki > 0
bool pid_stable(double kp, double ki, double kd, int order);

enum class ControlMode { Reaching, Sliding };

/// What the controller reported while processing a step.
struct ControllerEvent {
    enum class Kind { Tc, GainUpdate, ReReach };
    Kind kind;
    double t = 0.0;
};

/// Gain-scheduling state machine around the sliding-mode laws.
///
/// Gains (k1, k2, rho) are determined from the errors at tc -- the first
/// instant |e1| <= e1c holds -- and stay frozen until a reference jump or a
/// re-entry into the reaching region. When |e1(0)| <= e1c initially, tc := 0
/// and the initial errors seed the determination directly.
class SlidingController {
public:
    SlidingController(GainConfig config, ReachParams reach, bool smoothed);

    /// Installs a fixed gain set and disables scheduling (noise studies).
    void fix_gains(const GainSet& g);

    /// Forces rho to the given value after every determination (sweeps).
    void override_rho(double rho) { rhoOverride_ = rho; }

    /// Initializes at t0 from the initial errors.
    std::vector<ControllerEvent> reset(const ErrorState& e0, double t0 = 0.0);

    /// Per-step bookkeeping: tc detection and re-entry into reaching.
    std::vector<ControllerEvent> observe(const ErrorState& e, double t);

    /// Parameter update at a reference jump: re-enters reaching when
    /// |e1| > e1c, otherwise redetermines the gains from the current errors
    /// (degenerate (0,0) errors keep the previous set up to minimum floors).
    std::vector<ControllerEvent> on_reference_jump(const ErrorState& e, double t);

    /// Control output at the current (frozen) gains. Safe to call from RK4
    /// stage states; the reaching law applies whenever no gains exist yet.
    double output(const ErrorState& e, double h) const;

    ControlMode mode() const { return mode_; }
    bool has_gains() const { return gains_.has_value(); }
    const GainSet& gains() const { return *gains_; }
    const ReachParams& reach() const { return reach_; }
    const GainConfig& config() const { return config_; }
    std::optional<double> tc_event() const { return tcEvent_; }
    bool smoothed() const { return smoothed_; }

private:
    void determine_from(const SwitchErrors& e);

    GainConfig config_;
    ReachParams reach_;
    bool smoothed_ = true;
    bool fixed_ = false;
    ControlMode mode_ = ControlMode::Reaching;
    std::optional<GainSet> gains_;
    std::optional<double> tcEvent_;
    std::optional<double> rhoOverride_;
};

/// PID/PI loop state: trapezoidal integral accumulated once per macro step,
/// frozen within a step (no anti-windup by design).
class PidState {
public:
    explicit PidState(PidGains g) : gains_(g) {}

    double output(double e, double eDot, double gTerm) const {
        return pid_control(e, eDot, integral_, gains_, gTerm);
    }
    double output_pi(double e, double gTerm) const {
        return pi_control(e, integral_, gains_.kp, gains_.ki, gTerm);
    }
    void accumulate(double e, double dt) {
        if (primed_) integral_ += 0.5 * dt * (prevError_ + e);
        prevError_ = e;
        primed_ = true;
    }
    double integral() const { return integral_; }

private:
    PidGains gains_;
    double integral_ = 0.0;
    double prevError_ = 0.0;
    bool primed_ = false;
};

}  // namespace nosm
