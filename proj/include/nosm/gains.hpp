/**
 * @file gains.hpp
 * @brief Zone classification of switch errors and determination of all
 *        sliding-mode parameters subject to the non-overshooting conditions.
 */

#pragma once

#include <optional>
#include <vector>

#include "nosm/types.hpp"

namespace nosm {

/// Floor added to degenerate k2 values (see determine_k2).
inline constexpr double kDegenerateGainEps = 1e-6;

/// Minimum rho after clamping (zero-error logarithm case).
inline constexpr double kRhoMin = 1.0;

/// Selects the reaching-phase parameters.
///
/// Defaults: e1c = (k2M - Ld)/2, e2c = sqrt((k2M - Ld) * e1c) (the top of its
/// admissible interval); rhoC = rhoC0 * (1/2) * ln((kc + Ld)/(kc - Ld)).
/// Overrides are validated against e1c in (0, k2M - Ld) and
/// e2c in (e1c, sqrt((k2M - Ld) * e1c)].
///
/// Throws InfeasibleBounds if k2M <= Ld, InvalidGain if kc <= Ld or an
/// override falls outside its interval.
ReachParams select_reach_params(const GainConfig& config, double kc,
                                std::optional<double> e1cOverride = std::nullopt,
                                std::optional<double> e2cOverride = std::nullopt);

/// Classifies switch errors into their coordinate zone. Total: every pair
/// maps to exactly one tag, boundary ties resolved by the strict/non-strict
/// inequalities of the zone definitions; (0,0) -> Origin.
Zone classify_zone(const SwitchErrors& e);

/// k1 from the zone-dependent branch:
///   beta11 * |e2tc|/|e1tc|  if e1tc*e2tc < 0 and |e1tc| < |e2tc|
///   beta12 * |e2tc|/|e1tc|  if e1tc*e2tc < 0 and |e1tc| >= |e2tc|
///   beta13                  otherwise
/// then raised to 1 when fastK1Floor is set and the value lies in (0,1).
double determine_k1(const SwitchErrors& e, const GainConfig& config);

/// k2 from the zone-dependent lower bound scaled by beta2, floored at
/// beta2*Ld + eps for degenerate (0,0) errors.
/// Throws GainCeilingExceeded if the result exceeds k2M.
double determine_k2(const SwitchErrors& e, double k1, const GainConfig& config);

struct RhoResult {
    double e2max = 0.0;
    double rho = 0.0;
};

/// e2max and the tanh sharpness rho:
///   e2max = max{|e2tc|, (k1/3)[|e1tc| + sqrt(e1tc^2 + 3 (e2tc/k1)^2)]}
///   rho   = rho0 * max{1/(2 k1), 1} * ln((k2 + k1 e2max + Ld)/(k2 - k1 e2max - Ld))
/// clamped below at kRhoMin.
/// Throws SaturatedGain when the log denominator is not positive.
RhoResult determine_rho(const SwitchErrors& e, double k1, double k2, const GainConfig& config);

/// One checked inequality. `required` distinguishes the theorem conditions
/// from the informational coarse-partition alternative.
struct ConditionEntry {
    std::string name;
    bool pass = false;
    double slack = 0.0;
    bool required = true;
};

struct ConditionReport {
    Zone zone = Zone::Origin;
    std::vector<ConditionEntry> entries;

    bool all_pass() const;
};

/// Checks every inequality behind a gain set: the k1 interval and k2 lower
/// bound for the realized zone, the reaching-phase bounds, the rhoC and rho
/// selections, and (informationally) the coarse two-way partition.
ConditionReport validate_conditions(const GainSet& g, const SwitchErrors& e,
                                    const GainConfig& config);

/// Switch errors the reaching phase is designed to deliver: (e1c, -e2c) up to
/// the sign of e1(0). Identity when |e1(0)| <= e1c (the reaching phase is
/// vacuous and tc = 0).
SwitchErrors predict_switch_errors(const ErrorState& e0, const ReachParams& reach);

/// Runs determine_k1/k2/rho in sequence and assembles a full GainSet.
GainSet determine_gains(const SwitchErrors& e, const GainConfig& config,
                        const ReachParams& reach);

}  // namespace nosm
