#include "nosm/sim.hpp"

#include <algorithm>
#include <cmath>

namespace nosm {

const char* to_string(SimEvent::Kind k) {
    switch (k) {
        case SimEvent::Kind::Tc: return "tc";
        case SimEvent::Kind::SurfaceHit: return "surfaceHit";
        case SimEvent::Kind::RefJump: return "refJump";
        case SimEvent::Kind::GainUpdate: return "gainUpdate";
        case SimEvent::Kind::ReReach: return "reReach";
    }
    return "?";
}

std::optional<double> Trace::first_event(SimEvent::Kind k, double after) const {
    for (const SimEvent& e : events)
        if (e.kind == k && e.t > after) return e.t;
    return std::nullopt;
}

OvershootVerdict detect_overshoot(const std::vector<double>& t, const std::vector<double>& e1,
                                  double eventTolerance, const std::vector<double>& jumpTimes) {
    OvershootVerdict v;
    if (e1.empty()) return v;

    std::size_t segStart = 0;
    std::size_t nextJump = 0;
    double s0 = sgn(e1[0]);
    double eps = eventTolerance * std::max(1.0, std::abs(e1[0]));

    for (std::size_t i = 0; i < e1.size(); ++i) {
        if (nextJump < jumpTimes.size() && t[i] >= jumpTimes[nextJump]) {
            // New segment: the error restarts at the jump.
            segStart = i;
            s0 = sgn(e1[i]);
            eps = eventTolerance * std::max(1.0, std::abs(e1[i]));
            ++nextJump;
        }
        if (i == segStart || s0 == 0.0) continue;
        if (e1[i] * s0 < -eps) {
            v.overshoot = true;
            v.firstCrossing = t[i];
            v.magnitude = std::abs(e1[i]);
            return v;
        }
    }
    return v;
}

OvershootVerdict detect_overshoot(const Trace& trace, double eventTolerance) {
    std::vector<double> t, e1, jumps;
    t.reserve(trace.rows.size());
    e1.reserve(trace.rows.size());
    for (const TraceRow& r : trace.rows) {
        t.push_back(r.t);
        e1.push_back(r.e1);
    }
    for (const SimEvent& e : trace.events)
        if (e.kind == SimEvent::Kind::RefJump) jumps.push_back(e.t);
    return detect_overshoot(t, e1, eventTolerance, jumps);
}

SettlingComparison measure_settling(const Trace& trace, const GainSet& g) {
    const auto tc = trace.first_event(SimEvent::Kind::Tc);
    if (!tc) throw MissingEvent("trace has no tc event");
    const auto hit = trace.first_event(SimEvent::Kind::SurfaceHit, *tc - 1e-12);
    if (!hit) throw MissingEvent("trace has no surfaceHit event after tc");

    // Row at (or just after) tc for the switch errors and the disturbance.
    const TraceRow* atTc = nullptr;
    for (const TraceRow& r : trace.rows)
        if (r.t >= *tc - 1e-12) {
            atTc = &r;
            break;
        }
    if (!atTc) throw MissingEvent("no trace row at tc");

    SettlingComparison out;
    out.tsMeasured = *hit - *tc;
    const SwitchErrors se{atTc->e1, atTc->e2};
    if (se.sigma(g.k1) == 0.0) {
        out.analyticTs = 0.0;
        out.relError = std::abs(out.tsMeasured);
        return out;
    }
    const double k2bar = g.k2 - sgn(se.sigma(g.k1)) * atTc->d;
    out.analyticTs = settling_time(se, g.k1, k2bar);
    out.relError = std::abs(out.tsMeasured - out.analyticTs) /
                   std::max(out.analyticTs, 1e-12);
    return out;
}

namespace {

std::size_t tail_start(std::size_t n) { return n - std::max<std::size_t>(1, n / 5); }

}  // namespace

SteadyCheck check_steady_bounds(const Trace& trace, const SteadyBounds& bounds) {
    SteadyCheck c;
    if (trace.rows.empty()) return c;
    for (std::size_t i = tail_start(trace.rows.size()); i < trace.rows.size(); ++i) {
        c.supE1 = std::max(c.supE1, std::abs(trace.rows[i].e1));
        c.supE2 = std::max(c.supE2, std::abs(trace.rows[i].e2));
    }
    c.slack1 = bounds.b1 - c.supE1;
    c.slack2 = bounds.b2 - c.supE2;
    c.pass = c.slack1 >= 0.0 && c.slack2 >= 0.0;
    return c;
}

MetricsReport compute_metrics(const Trace& trace, double eventTolerance) {
    MetricsReport m;
    m.overshoot = detect_overshoot(trace, eventTolerance);
    if (auto hit = trace.first_event(SimEvent::Kind::SurfaceHit)) m.settlingTimeMeasured = *hit;
    if (!trace.rows.empty()) {
        for (std::size_t i = tail_start(trace.rows.size()); i < trace.rows.size(); ++i) {
            m.sse1 = std::max(m.sse1, std::abs(trace.rows[i].e1));
            m.sse2 = std::max(m.sse2, std::abs(trace.rows[i].e2));
        }
        double tv = 0.0;
        for (std::size_t i = 1; i < trace.rows.size(); ++i)
            tv += std::abs(trace.rows[i].u - trace.rows[i - 1].u);
        const double span = trace.rows.back().t - trace.rows.front().t;
        m.chatteringIndex = span > 0.0 ? tv / span : 0.0;
    }
    return m;
}

void detect_surface_hit(Trace& trace, double tol) {
    // One hit per sliding phase: scan after each tc/gainUpdate event.
    std::vector<double> anchors;
    for (const SimEvent& e : trace.events)
        if (e.kind == SimEvent::Kind::Tc || e.kind == SimEvent::Kind::GainUpdate)
            anchors.push_back(e.t);
    if (anchors.empty()) anchors.push_back(trace.rows.empty() ? 0.0 : trace.rows.front().t);
    std::sort(anchors.begin(), anchors.end());
    anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());

    std::vector<SimEvent> hits;
    for (double a : anchors) {
        for (std::size_t i = 0; i + 1 < trace.rows.size(); ++i) {
            if (trace.rows[i].t < a - 1e-12) continue;
            if (std::abs(trace.rows[i].sigma) <= tol &&
                std::abs(trace.rows[i + 1].sigma) <= tol) {
                hits.push_back({SimEvent::Kind::SurfaceHit, trace.rows[i].t});
                break;
            }
        }
    }
    for (const SimEvent& h : hits) trace.events.push_back(h);
    std::stable_sort(trace.events.begin(), trace.events.end(),
                     [](const SimEvent& x, const SimEvent& y) { return x.t < y.t; });
}

}  // namespace nosm
