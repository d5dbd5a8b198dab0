#include "nosm/loop.hpp"

#include <algorithm>
#include <cmath>

namespace nosm {

namespace {

void absorb(Trace& trace, std::vector<std::pair<double, GainSet>>& hist,
            const SlidingController& ctl, const std::vector<ControllerEvent>& evs) {
    for (const ControllerEvent& e : evs) {
        switch (e.kind) {
            case ControllerEvent::Kind::Tc:
                trace.events.push_back({SimEvent::Kind::Tc, e.t});
                break;
            case ControllerEvent::Kind::GainUpdate:
                trace.events.push_back({SimEvent::Kind::GainUpdate, e.t});
                hist.emplace_back(e.t, ctl.gains());
                break;
            case ControllerEvent::Kind::ReReach:
                trace.events.push_back({SimEvent::Kind::ReReach, e.t});
                break;
        }
    }
}

double sigma_col(const SlidingController& ctl, const ErrorState& e) {
    // sigma needs k1; before the first gain determination report plain e2.
    return ctl.has_gains() ? e.sigma(ctl.gains().k1) : e.e2;
}

template <std::size_t N, class Rhs>
std::array<double, N> advance(const SimConfig& sim, Rhs&& rhs, const std::array<double, N>& y,
                              double t) {
    if (sim.integrator == SimConfig::Integrator::Euler) return step_euler<N>(rhs, y, t, sim.dt);
    return step_rk4<N>(rhs, y, t, sim.dt);
}

}  // namespace

const GainSet& RunResult::gains_at_tc() const {
    if (gainHistory.empty()) throw MissingEvent("no gain determination happened in this run");
    return gainHistory.front().second;
}

RunResult run_sliding_mode(const SlidingModeLoop& spec) {
    spec.sim.validate();
    RunResult out;
    SlidingController ctl(spec.config, spec.reach, spec.smoothed);
    if (spec.rhoOverride) ctl.override_rho(*spec.rhoOverride);
    absorb(out.trace, out.gainHistory, ctl, ctl.reset(spec.e0, 0.0));

    const auto n = static_cast<std::size_t>(std::llround(spec.sim.tEnd / spec.sim.dt));
    out.trace.rows.reserve(n + 1);

    std::array<double, 2> y{spec.e0.e1, spec.e0.e2};
    auto rhs = [&](double t, const std::array<double, 2>& s) -> std::array<double, 2> {
        const ErrorState e{s[0], s[1]};
        const double d = spec.d.at(t, spec.sim.seed);
        // Desired system: e2' = -(switching term) + d; the controller output
        // with h = 0 is exactly the switching term.
        return {e.e2, -ctl.output(e, 0.0) + d};
    };

    for (std::size_t i = 0;; ++i) {
        const double t = static_cast<double>(i) * spec.sim.dt;
        const ErrorState e{y[0], y[1]};
        out.trace.rows.push_back({t, e.e1, e.e2, sigma_col(ctl, e), ctl.output(e, 0.0),
                                  spec.d.at(t, spec.sim.seed),
                                  ctl.mode() == ControlMode::Sliding ? 1 : 0});
        if (i == n) break;
        y = advance<2>(spec.sim, rhs, y, t);
        absorb(out.trace, out.gainHistory, ctl, ctl.observe({y[0], y[1]}, t + spec.sim.dt));
    }
    detect_surface_hit(out.trace, spec.sim.eventTolerance);
    return out;
}

RunResult run_tracking(const TrackingLoop& spec) {
    spec.sim.validate();
    // The gain conditions presume Ld covers the disturbance plus the
    // reference curvature.
    if (spec.delta.bound() + spec.ref.Lx() > spec.config.Ld + 1e-12)
        throw InvalidGain("Ld must cover sup|delta| + sup|xdd_ref|");

    RunResult out;
    SlidingController ctl(spec.config, spec.reach,
                          spec.controller != ControllerKind::Ideal);
    if (spec.rhoOverride) ctl.override_rho(*spec.rhoOverride);
    PidState pid(spec.pidGains);
    const bool sliding = spec.controller != ControllerKind::Pid;

    auto hFun = [&](double t, double x1, double x2) {
        return spec.h ? spec.h(t, x1, x2) : 0.0;
    };
    auto measuredErrors = [&](double t, double x1, double x2) -> ErrorState {
        const double y1 = measure(x1, spec.n1, t, spec.sim.seed);
        const double y2 = measure(x2, spec.n2, t, spec.sim.seed);
        return {spec.ref.value(t) - y1, spec.ref.d1(t) - y2};
    };
    auto controlAt = [&](double t, double x1, double x2) {
        const ErrorState em = measuredErrors(t, x1, x2);
        if (sliding) return ctl.output(em, hFun(t, x1, x2));
        // PID feedforward cancels h and injects the reference curvature.
        return pid.output(em.e1, em.e2, hFun(t, x1, x2) - spec.ref.d2(t));
    };

    if (sliding) {
        if (spec.fixedGains) ctl.fix_gains(*spec.fixedGains);
        absorb(out.trace, out.gainHistory, ctl,
               ctl.reset(measuredErrors(0.0, spec.x1_0, spec.x2_0), 0.0));
    } else {
        if (!pid_stable(spec.pidGains.kp, spec.pidGains.ki, spec.pidGains.kd, 3))
            throw InvalidGain("PID gains fail the Routh-Hurwitz stability test");
        pid.accumulate(measuredErrors(0.0, spec.x1_0, spec.x2_0).e1, 0.0);
    }

    auto rhs = [&](double t, const std::array<double, 2>& s) -> std::array<double, 2> {
        const double u = controlAt(t, s[0], s[1]);
        const PlantDeriv d = double_integrator_rhs(s[0], s[1], u, hFun(t, s[0], s[1]),
                                                   spec.delta.at(t, spec.sim.seed));
        return {d.dx1, d.dx2};
    };

    const auto n = static_cast<std::size_t>(std::llround(spec.sim.tEnd / spec.sim.dt));
    out.trace.rows.reserve(n + 1);
    std::array<double, 2> y{spec.x1_0, spec.x2_0};
    std::size_t nextJump = 0;
    const auto& jumps = spec.ref.jump_times();

    for (std::size_t i = 0;; ++i) {
        const double t = static_cast<double>(i) * spec.sim.dt;

        if (nextJump < jumps.size() && t >= jumps[nextJump] - 1e-12) {
            out.trace.events.push_back({SimEvent::Kind::RefJump, t});
            if (sliding)
                absorb(out.trace, out.gainHistory, ctl,
                       ctl.on_reference_jump(measuredErrors(t, y[0], y[1]), t));
            ++nextJump;
        }
        if (sliding)
            absorb(out.trace, out.gainHistory, ctl,
                   ctl.observe(measuredErrors(t, y[0], y[1]), t));

        const ErrorState eTrue{spec.ref.value(t) - y[0], spec.ref.d1(t) - y[1]};
        const double sigma = sliding ? sigma_col(ctl, eTrue) : eTrue.e2;
        out.trace.rows.push_back({t, eTrue.e1, eTrue.e2, sigma, controlAt(t, y[0], y[1]),
                                  spec.delta.at(t, spec.sim.seed),
                                  (!sliding || ctl.mode() == ControlMode::Sliding) ? 1 : 0});
        if (i == n) break;
        y = advance<2>(spec.sim, rhs, y, t);
        if (!sliding) {
            const double tn = static_cast<double>(i + 1) * spec.sim.dt;
            pid.accumulate(measuredErrors(tn, y[0], y[1]).e1, spec.sim.dt);
        }
    }
    detect_surface_hit(out.trace, spec.sim.eventTolerance);
    return out;
}

RunResult run_pi_loop(const PiLoop& spec) {
    spec.sim.validate();
    RunResult out;
    PidState pi(PidGains{spec.kp, spec.ki, 0.0});
    auto gAt = [&](double t) { return spec.gTerm ? spec.gTerm(t) : 0.0; };

    auto rhs = [&](double t, const std::array<double, 1>& s) -> std::array<double, 1> {
        const double u = pi.output_pi(s[0], gAt(t));
        return {-gAt(t) - u + spec.d.at(t, spec.sim.seed)};
    };

    if (!pid_stable(spec.kp, spec.ki, 0.0, 2))
        throw InvalidGain("PI gains fail the Routh-Hurwitz stability test");

    const auto n = static_cast<std::size_t>(std::llround(spec.sim.tEnd / spec.sim.dt));
    out.trace.rows.reserve(n + 1);
    std::array<double, 1> y{spec.e0};
    pi.accumulate(spec.e0, 0.0);

    for (std::size_t i = 0;; ++i) {
        const double t = static_cast<double>(i) * spec.sim.dt;
        const double u = pi.output_pi(y[0], gAt(t));
        const double de = -gAt(t) - u + spec.d.at(t, spec.sim.seed);
        out.trace.rows.push_back({t, y[0], de, y[0], u, spec.d.at(t, spec.sim.seed), 1});
        if (i == n) break;
        y = advance<1>(spec.sim, rhs, y, t);
        pi.accumulate(y[0], spec.sim.dt);
    }
    return out;
}

// ---------------------------------------------------------------------------
// UAV cascade
// ---------------------------------------------------------------------------

Trace UavRunResult::channel_trace(int c) const {
    Trace t;
    t.rows.reserve(rows.size());
    for (const UavTraceRow& r : rows) {
        const UavChannelSample& s = r.ch[static_cast<std::size_t>(c)];
        t.rows.push_back({r.t, s.e1, s.e2, s.sigma, s.u, s.d, s.mode});
    }
    t.events = channelEvents[static_cast<std::size_t>(c)];
    t.events.insert(t.events.end(), globalEvents.begin(), globalEvents.end());
    std::stable_sort(t.events.begin(), t.events.end(),
                     [](const SimEvent& a, const SimEvent& b) { return a.t < b.t; });
    return t;
}

UavRunResult run_uav(const UavLoop& spec) {
    spec.sim.validate();
    UavRunResult out;

    std::vector<SlidingController> ctl;
    ctl.reserve(kNumChannels);
    for (int i = 0; i < kNumChannels; ++i) {
        const bool position = i < 3;
        ctl.emplace_back(position ? spec.posConfig : spec.attConfig,
                         position ? spec.posReach : spec.attReach, /*smoothed=*/true);
    }

    const Reference* posRef[3] = {&spec.mission.x, &spec.mission.y, &spec.mission.z};

    UavState s = spec.s0;
    const double dt = spec.sim.dt;
    const auto n = static_cast<std::size_t>(std::llround(spec.sim.tEnd / dt));
    out.rows.reserve(n + 1);

    // Tilt-target filter state (theta, phi) and its primed flag.
    double thetaF = 0.0, phiF = 0.0;
    bool attRefPrimed = false;

    auto absorbCh = [&](int c, const std::vector<ControllerEvent>& evs) {
        for (const ControllerEvent& e : evs) {
            switch (e.kind) {
                case ControllerEvent::Kind::Tc:
                    out.channelEvents[c].push_back({SimEvent::Kind::Tc, e.t});
                    break;
                case ControllerEvent::Kind::GainUpdate:
                    out.channelEvents[c].push_back({SimEvent::Kind::GainUpdate, e.t});
                    out.gainHistory[c].emplace_back(e.t, ctl[c].gains());
                    break;
                case ControllerEvent::Kind::ReReach:
                    out.channelEvents[c].push_back({SimEvent::Kind::ReReach, e.t});
                    break;
            }
        }
    };

    auto posErrors = [&](int c, double t, const UavState& st) -> ErrorState {
        return {posRef[c]->value(t) - st.pos[c], posRef[c]->d1(t) - st.vel[c]};
    };

    std::size_t nextJump = 0;
    const auto& jumps = spec.mission.jumpTimes;
    bool initialized = false;

    for (std::size_t i = 0;; ++i) {
        const double t = static_cast<double>(i) * dt;

        const bool jumpNow = nextJump < jumps.size() && t >= jumps[nextJump] - 1e-12;
        if (jumpNow) {
            out.globalEvents.push_back({SimEvent::Kind::RefJump, t});
            ++nextJump;
            attRefPrimed = false;  // reference rate restarts with the new segment
        }

        if (!initialized) {
            for (int c = 0; c < 3; ++c) absorbCh(c, ctl[c].reset(posErrors(c, t, s), t));
        } else if (jumpNow) {
            for (int c = 0; c < 3; ++c)
                absorbCh(c, ctl[c].on_reference_jump(posErrors(c, t, s), t));
        } else {
            for (int c = 0; c < 3; ++c) absorbCh(c, ctl[c].observe(posErrors(c, t, s), t));
        }

        // Outer loop: commanded specific forces.
        std::array<double, 3> ubarCmd{};
        std::array<ErrorState, 3> ePos;
        for (int c = 0; c < 3; ++c) {
            ePos[c] = posErrors(c, t, s);
            ubarCmd[c] = ctl[c].output(ePos[c], uav_h(static_cast<Channel>(c), spec.params));
        }

        Allocation alloc;
        try {
            alloc = allocate(ubarCmd[0], ubarCmd[1], ubarCmd[2], spec.mission.psi.value(t),
                             spec.params);
        } catch (const SingularAttitude& ex) {
            throw SingularAttitude(std::string(ex.what()) + " at t = " + std::to_string(t));
        }

        if (!attRefPrimed) {
            thetaF = alloc.thetaD;
            phiF = alloc.phiD;
            attRefPrimed = true;
        }
        const std::array<double, 3> attRef{spec.mission.psi.value(t), thetaF, phiF};
        const std::array<double, 3> attRefDot{spec.mission.psi.d1(t),
                                              (alloc.thetaD - thetaF) / spec.attRefTau,
                                              (alloc.phiD - phiF) / spec.attRefTau};

        std::array<ErrorState, 3> eAtt;
        for (int a = 0; a < 3; ++a) {
            const int c = 3 + a;
            eAtt[a] = {attRef[a] - s.pos[c], attRefDot[a] - s.vel[c]};
            if (!initialized)
                absorbCh(c, ctl[c].reset(eAtt[a], t));
            else if (jumpNow)
                absorbCh(c, ctl[c].on_reference_jump(eAtt[a], t));
            else
                absorbCh(c, ctl[c].observe(eAtt[a], t));
        }
        initialized = true;

        std::array<double, 3> ubarAtt{};
        for (int a = 0; a < 3; ++a) ubarAtt[a] = ctl[3 + a].output(eAtt[a], 0.0);

        // advance the tilt-target filter
        thetaF += dt * (alloc.thetaD - thetaF) / spec.attRefTau;
        phiF += dt * (alloc.phiD - phiF) / spec.attRefTau;

        // Torques from the angular-acceleration commands, then rotor forces.
        // Thrust keeps priority: if a torque combination would drive a rotor
        // force negative, all three torques shrink by a common factor.
        double uPsi = ubarAtt[0] * spec.params.Jpsi;
        double uTheta = ubarAtt[1] * spec.params.Jtheta;
        double uPhi = ubarAtt[2] * spec.params.Jphi;
        {
            const double P = uPsi * spec.params.b / spec.params.k;
            const double T = uTheta / spec.params.l;
            const double H = uPhi / spec.params.l;
            const double w[4] = {P / 4.0 - T / 2.0, -P / 4.0 + H / 2.0, P / 4.0 + T / 2.0,
                                 -P / 4.0 - H / 2.0};
            double s = 1.0;
            for (double wi : w)
                if (wi < 0.0) s = std::min(s, alloc.F / (4.0 * -wi) * 0.98);
            if (s < 1.0) {
                uPsi *= s;
                uTheta *= s;
                uPhi *= s;
                ++out.actuatorSaturations;
            }
        }
        std::array<double, 4> Fi{};
        try {
            Fi = mixer(alloc.F, uPsi, uTheta, uPhi, spec.params);
        } catch (const InfeasibleThrust& ex) {
            throw InfeasibleThrust(std::string(ex.what()) + " at t = " + std::to_string(t));
        }
        double Ftot, uPsiAct, uThetaAct, uPhiAct;
        mixer_forward(Fi, spec.params, Ftot, uPsiAct, uThetaAct, uPhiAct);

        // Trace row.
        UavTraceRow row;
        row.t = t;
        row.position = {s.pos[0], s.pos[1], s.pos[2]};
        for (int c = 0; c < kNumChannels; ++c) {
            const ErrorState& e = c < 3 ? ePos[c] : eAtt[c - 3];
            UavChannelSample& cs = row.ch[c];
            cs.e1 = e.e1;
            cs.e2 = e.e2;
            cs.sigma = ctl[c].has_gains() ? e.sigma(ctl[c].gains().k1) : e.e2;
            cs.u = c < 3 ? ubarCmd[c] : ubarAtt[c - 3];
            cs.d = uav_delta(static_cast<Channel>(c), s, spec.params, spec.uncertainty, t,
                             spec.sim.seed);
            cs.mode = ctl[c].mode() == ControlMode::Sliding ? 1 : 0;
        }
        out.rows.push_back(row);
        if (i == n) break;

        // Actuators hold (F, torques) for the step; the realized specific
        // forces follow the true attitude.
        auto rhs = [&](double tt, const std::array<double, 12>& ys) -> std::array<double, 12> {
            UavState st = UavState::from_array(ys);
            UbarSet ubar{};
            thrust_to_ubar(Ftot, st.pos[3], st.pos[4], st.pos[5], spec.params, ubar[0],
                           ubar[1], ubar[2]);
            ubar[3] = uPsiAct / spec.params.Jpsi;
            ubar[4] = uThetaAct / spec.params.Jtheta;
            ubar[5] = uPhiAct / spec.params.Jphi;
            const UavDeriv dv = uav_rhs(st, ubar, spec.params, spec.uncertainty, tt,
                                        spec.sim.seed);
            std::array<double, 12> dy{};
            for (int c = 0; c < kNumChannels; ++c) {
                dy[2 * c] = dv.dpos[c];
                dy[2 * c + 1] = dv.dvel[c];
            }
            return dy;
        };
        std::array<double, 12> y = s.to_array();
        y = advance<12>(spec.sim, rhs, y, t);
        s = UavState::from_array(y);
    }

    // Surface-hit per channel.
    for (int c = 0; c < kNumChannels; ++c) {
        Trace view = out.channel_trace(c);
        detect_surface_hit(view, spec.sim.eventTolerance);
        out.channelEvents[c].clear();
        for (const SimEvent& e : view.events)
            if (e.kind != SimEvent::Kind::RefJump) out.channelEvents[c].push_back(e);
    }
    return out;
}

}  // namespace nosm
