/**
 * @file sliding.hpp
 * @brief The desired non-overshooting 2-sliding mode dynamics (ideal and
 *        tanh-smoothed) and the closed-form parabola segments of the second
 *        subsystem used as analytic test oracles.
 */

#pragma once

#include <optional>

#include "nosm/types.hpp"

namespace nosm {

struct Deriv2 {
    double de1 = 0.0;
    double de2 = 0.0;
};

/// Ideal 2-sliding mode right-hand side:
///   de1 = e2
///   de2 = -kc sign(e2 + e2c sign(e1)) + d   if |e1| > e1c
///         -k2 sign(e2 + k1 e1) + d          otherwise
Deriv2 ideal_rhs(const ErrorState& s, const GainSet& g, double d);

/// Smoothed counterpart: the outer sign(.) is replaced by tanh(rhoC .) /
/// tanh(rho .); the inner sign(e1) is kept.
Deriv2 smooth_rhs(const ErrorState& s, const GainSet& g, double d);

/// Closed-form segment of the second subsystem while sign(sigma) stays
/// constant. With s = sign(sigma(tc)):
///   e2(t)   = e2tc - s k2bar (t - t0)
///   e1(t)   = c1 + b1 (t-t0) + a1 (t-t0)^2,      a1 = -s k2bar/2
///   sigma(t)= c  + b  (t-t0) + a  (t-t0)^2,      a  = -s k1 k2bar/2
/// k2bar is the effective acceleration magnitude; with constant disturbance d
/// it equals k2 - sign(sigma(tc)) * d.
struct ParabolaSegment {
    double a1 = 0.0, b1 = 0.0, c1 = 0.0;  // e1 coefficients
    double a = 0.0, b = 0.0, c = 0.0;     // sigma coefficients
    double k2bar = 0.0;
    double t0 = 0.0;

    double e1_at(double t) const {
        const double tau = t - t0;
        return c1 + b1 * tau + a1 * tau * tau;
    }
    double e2_at(double t) const {
        const double tau = t - t0;
        return b1 + 2.0 * a1 * tau;
    }
    double sigma_at(double t) const {
        const double tau = t - t0;
        return c + b * tau + a * tau * tau;
    }
};

/// Builds the segment from the switch errors. Throws InvalidContext when
/// sigma(tc) = 0 (the trajectory is already on the surface).
ParabolaSegment parabola_from_switch(const SwitchErrors& e, double k1, double k2bar,
                                     double t0 = 0.0);

/// Time from tc to the surface hit (sigma = 0), i.e. the positive root of the
/// sigma parabola. For sigma(tc) < 0:
///   ts = -(1/k1 + e2tc/k2bar) + sqrt(1/k1^2 + (e2tc/k2bar)^2 - 2 e1tc/k2bar)
/// The sigma(tc) > 0 case is handled by odd symmetry. Returns 0 when already
/// on the surface. Throws NoRealRoot when the radicand is negative.
double settling_time(const SwitchErrors& e, double k1, double k2bar);

/// Smallest t >= t0 with e1(t) = 0 on the segment, or nullopt when the
/// parabola keeps e1 away from zero.
std::optional<double> e1_zero_time(const ParabolaSegment& p);

struct SteadyBounds {
    double b1 = 0.0;  // limit bound on |e1|
    double b2 = 0.0;  // limit bound on |e2| (= 2 k1 b1)
};

/// Residual bounds of the smoothed mode:
///   b1 = (1/(2 rho k1)) ln((k2 + k1 e2max + Ld)/(k2 - k1 e2max - Ld)),  b2 = 2 k1 b1
/// Throws SaturatedGain when the denominator is not positive.
SteadyBounds steady_state_bounds(const GainSet& g, double e2max, double Ld);

}  // namespace nosm
