#include "nosm/sliding.hpp"

#include <cmath>

namespace nosm {

Deriv2 ideal_rhs(const ErrorState& s, const GainSet& g, double d) {
    double de2;
    if (std::abs(s.e1) > g.e1c) {
        de2 = -g.kc * sgn(s.e2 + g.e2c * sgn(s.e1)) + d;
    } else {
        de2 = -g.k2 * sgn(s.e2 + g.k1 * s.e1) + d;
    }
    return {s.e2, de2};
}

Deriv2 smooth_rhs(const ErrorState& s, const GainSet& g, double d) {
    double de2;
    if (std::abs(s.e1) > g.e1c) {
        de2 = -g.kc * std::tanh(g.rhoC * (s.e2 + g.e2c * sgn(s.e1))) + d;
    } else {
        de2 = -g.k2 * std::tanh(g.rho * (s.e2 + g.k1 * s.e1)) + d;
    }
    return {s.e2, de2};
}

ParabolaSegment parabola_from_switch(const SwitchErrors& e, double k1, double k2bar,
                                     double t0) {
    const double sigma0 = e.sigma(k1);
    if (sigma0 == 0.0)
        throw InvalidContext("sigma(tc) = 0: no off-surface segment to describe");
    const double s = sgn(sigma0);

    ParabolaSegment p;
    p.t0 = t0;
    p.k2bar = k2bar;
    p.c1 = e.e1tc;
    p.b1 = e.e2tc;
    p.a1 = -s * k2bar / 2.0;
    p.c = sigma0;
    p.b = -s * k2bar + k1 * e.e2tc;
    p.a = -s * k1 * k2bar / 2.0;
    return p;
}

double settling_time(const SwitchErrors& e, double k1, double k2bar) {
    const double sigma0 = e.sigma(k1);
    if (sigma0 == 0.0) return 0.0;
    // Mirror the sigma > 0 case onto the derived sigma < 0 one.
    const double s = sgn(sigma0);
    const double e1 = s < 0.0 ? e.e1tc : -e.e1tc;
    const double e2 = s < 0.0 ? e.e2tc : -e.e2tc;

    const double r = e2 / k2bar;
    const double radicand = 1.0 / (k1 * k1) + r * r - 2.0 * e1 / k2bar;
    if (radicand < 0.0)
        throw NoRealRoot("settling-time radicand negative: invalid gain/zone pair");
    return -(1.0 / k1 + r) + std::sqrt(radicand);
}

std::optional<double> e1_zero_time(const ParabolaSegment& p) {
    // Roots of c1 + b1 tau + a1 tau^2, smallest tau >= 0.
    if (p.c1 == 0.0 && p.b1 == 0.0) return p.t0;
    if (p.a1 == 0.0) {
        if (p.b1 == 0.0) return std::nullopt;
        const double tau = -p.c1 / p.b1;
        return tau >= 0.0 ? std::optional<double>(p.t0 + tau) : std::nullopt;
    }
    const double disc = p.b1 * p.b1 - 4.0 * p.a1 * p.c1;
    if (disc < 0.0) return std::nullopt;
    const double sq = std::sqrt(disc);
    const double tau1 = (-p.b1 - sq) / (2.0 * p.a1);
    const double tau2 = (-p.b1 + sq) / (2.0 * p.a1);
    const double lo = std::min(tau1, tau2), hi = std::max(tau1, tau2);
    if (lo >= 0.0) return p.t0 + lo;
    if (hi >= 0.0) return p.t0 + hi;
    return std::nullopt;
}

SteadyBounds steady_state_bounds(const GainSet& g, double e2max, double Ld) {
    const double den = g.k2 - g.k1 * e2max - Ld;
    if (!(den > 0.0))
        throw SaturatedGain("k2 - k1*e2max - Ld must be positive");
    const double num = g.k2 + g.k1 * e2max + Ld;
    SteadyBounds sb;
    sb.b1 = std::log(num / den) / (2.0 * g.rho * g.k1);
    sb.b2 = 2.0 * g.k1 * sb.b1;
    return sb;
}

}  // namespace nosm
