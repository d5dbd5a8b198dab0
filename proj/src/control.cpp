#include "nosm/control.hpp"

#include <algorithm>
#include <cmath>

namespace nosm {

Reference::Reference(std::vector<Segment> segments, std::vector<double> jumpTimes, double Lx)
    : segments_(std::move(segments)), jumpTimes_(std::move(jumpTimes)), Lx_(Lx) {
    if (segments_.empty()) throw std::invalid_argument("reference needs at least one segment");
}

Reference Reference::constant(double v) {
    Segment s{0.0, [v](double) { return v; }, [](double) { return 0.0; },
              [](double) { return 0.0; }};
    return Reference({s}, {}, 0.0);
}

Reference Reference::sinusoid(double offset, double amplitude, double omega) {
    Segment s{0.0,
              [=](double t) { return offset + amplitude * std::sin(omega * t); },
              [=](double t) { return amplitude * omega * std::cos(omega * t); },
              [=](double t) { return -amplitude * omega * omega * std::sin(omega * t); }};
    return Reference({s}, {}, std::abs(amplitude) * omega * omega);
}

const Reference::Segment& Reference::segment_at(double t) const {
    // Segments are ordered by startTime; pick the last one started.
    const Segment* cur = &segments_.front();
    for (const Segment& s : segments_)
        if (s.startTime <= t) cur = &s;
    return *cur;
}

double Reference::value(double t) const { return segment_at(t).value(t); }
double Reference::d1(double t) const { return segment_at(t).d1(t); }
double Reference::d2(double t) const { return segment_at(t).d2(t); }

double ideal_control(const ErrorState& e, const GainSet& g, double h) {
    if (std::abs(e.e1) > g.e1c) return g.kc * sgn(e.e2 + g.e2c * sgn(e.e1)) - h;
    return g.k2 * sgn(e.e2 + g.k1 * e.e1) - h;
}

double smooth_control(const ErrorState& e, const GainSet& g, double h) {
    if (std::abs(e.e1) > g.e1c)
        return g.kc * std::tanh(g.rhoC * (e.e2 + g.e2c * sgn(e.e1))) - h;
    return g.k2 * std::tanh(g.rho * (e.e2 + g.k1 * e.e1)) - h;
}

double pid_control(double e, double eDot, double integral, const PidGains& pg, double gTerm) {
    return pg.kp * e + pg.ki * integral + pg.kd * eDot - gTerm;
}

double pi_control(double e, double integral, double kp, double ki, double gTerm) {
    return kp * e + ki * integral - gTerm;
}

bool pid_stable(double kp, double ki, double kd, int order) {
    if (order == 2) return kp > 0.0 && ki > 0.0;
    if (order == 3) return kd > 0.0 && ki > 0.0 && kd * kp > ki;
    throw std::invalid_argument("pid_stable: order must be 2 or 3");
}

SlidingController::SlidingController(GainConfig config, ReachParams reach, bool smoothed)
    : config_(config), reach_(reach), smoothed_(smoothed) {
    config_.validate();
}

void SlidingController::fix_gains(const GainSet& g) {
    gains_ = g;
    reach_ = {g.e1c, g.e2c, g.kc, g.rhoC};
    fixed_ = true;
    mode_ = ControlMode::Sliding;
    tcEvent_ = 0.0;
}

void SlidingController::determine_from(const SwitchErrors& e) {
    if (e.is_degenerate() && gains_.has_value()) {
        // Keep the previous set; enforce the degenerate-case floors.
        gains_->k2 = std::max(gains_->k2, config_.beta2 * config_.Ld + kDegenerateGainEps);
        gains_->rho = std::max(gains_->rho, kRhoMin);
        return;
    }
    gains_ = determine_gains(e, config_, reach_);
    if (rhoOverride_) gains_->rho = *rhoOverride_;
}

std::vector<ControllerEvent> SlidingController::reset(const ErrorState& e0, double t0) {
    std::vector<ControllerEvent> ev;
    if (fixed_) {
        // Scheduling is off, but the sliding phase still starts here.
        tcEvent_ = t0;
        ev.push_back({ControllerEvent::Kind::Tc, t0});
        return ev;
    }
    gains_.reset();
    tcEvent_.reset();
    if (std::abs(e0.e1) <= reach_.e1c) {
        tcEvent_ = t0;
        determine_from({e0.e1, e0.e2});
        mode_ = ControlMode::Sliding;
        ev.push_back({ControllerEvent::Kind::Tc, t0});
        ev.push_back({ControllerEvent::Kind::GainUpdate, t0});
    } else {
        mode_ = ControlMode::Reaching;
    }
    return ev;
}

std::vector<ControllerEvent> SlidingController::observe(const ErrorState& e, double t) {
    std::vector<ControllerEvent> ev;
    if (fixed_) return ev;
    if (mode_ == ControlMode::Reaching) {
        if (std::abs(e.e1) <= reach_.e1c) {
            tcEvent_ = t;
            determine_from({e.e1, e.e2});
            mode_ = ControlMode::Sliding;
            ev.push_back({ControllerEvent::Kind::Tc, t});
            ev.push_back({ControllerEvent::Kind::GainUpdate, t});
        }
    } else {
        // Hysteresis keeps grid wobble right at |e1| = e1c from re-triggering
        // the reaching phase.
        if (std::abs(e.e1) > reach_.e1c * 1.05) {
            mode_ = ControlMode::Reaching;
            tcEvent_.reset();
            ev.push_back({ControllerEvent::Kind::ReReach, t});
        }
    }
    return ev;
}

std::vector<ControllerEvent> SlidingController::on_reference_jump(const ErrorState& e, double t) {
    std::vector<ControllerEvent> ev;
    if (fixed_) return ev;
    tcEvent_.reset();
    if (std::abs(e.e1) > reach_.e1c) {
        mode_ = ControlMode::Reaching;
        ev.push_back({ControllerEvent::Kind::ReReach, t});
    } else {
        tcEvent_ = t;
        determine_from({e.e1, e.e2});
        mode_ = ControlMode::Sliding;
        ev.push_back({ControllerEvent::Kind::GainUpdate, t});
    }
    return ev;
}

double SlidingController::output(const ErrorState& e, double h) const {
    // The law switches pointwise on |e1| like the desired system itself; the
    // reaching law also covers stage states reached before any gains exist.
    if (!gains_.has_value() || std::abs(e.e1) > reach_.e1c) {
        if (smoothed_)
            return reach_.kc * std::tanh(reach_.rhoC * (e.e2 + reach_.e2c * sgn(e.e1))) - h;
        return reach_.kc * sgn(e.e2 + reach_.e2c * sgn(e.e1)) - h;
    }
    return smoothed_ ? smooth_control(e, *gains_, h) : ideal_control(e, *gains_, h);
}

}  // namespace nosm
