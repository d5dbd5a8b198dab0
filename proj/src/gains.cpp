#include "nosm/gains.hpp"

#include <algorithm>
#include <cmath>

namespace nosm {

const char* to_string(Zone z) {
    switch (z) {
        case Zone::I1: return "I-1";
        case Zone::I2: return "I-2";
        case Zone::II1: return "II-1";
        case Zone::II2: return "II-2";
        case Zone::III1: return "III-1";
        case Zone::III2: return "III-2";
        case Zone::IV1: return "IV-1";
        case Zone::IV2: return "IV-2";
        case Zone::Origin: return "origin";
    }
    return "?";
}

void GainConfig::validate() const {
    if (!(k2M > Ld)) throw InfeasibleBounds("k2M must exceed Ld");
    if (!(Ld >= 0.0)) throw InvalidGain("Ld must be non-negative");
    if (!(beta11 > 0.0 && beta11 < 1.0)) throw InvalidGain("beta11 must lie in (0,1)");
    if (!(beta12 > 1.0)) throw InvalidGain("beta12 must exceed 1");
    if (!(beta13 > 0.0)) throw InvalidGain("beta13 must be positive");
    if (!(beta2 > 1.0)) throw InvalidGain("beta2 must exceed 1");
    if (!(rhoC0 > 1.0)) throw InvalidGain("rhoC0 must exceed 1");
    if (!(rho0 > 1.0)) throw InvalidGain("rho0 must exceed 1");
}

ReachParams select_reach_params(const GainConfig& config, double kc,
                                std::optional<double> e1cOverride,
                                std::optional<double> e2cOverride) {
    if (!(config.k2M > config.Ld)) throw InfeasibleBounds("k2M must exceed Ld");
    if (!(kc > config.Ld)) throw InvalidGain("kc must exceed Ld");

    const double span = config.k2M - config.Ld;
    const double e1c = e1cOverride.value_or(span / 2.0);
    if (!(e1c > 0.0 && e1c < span)) throw InvalidGain("e1c must lie in (0, k2M - Ld)");

    const double e2cTop = std::sqrt(span * e1c);
    const double e2c = e2cOverride.value_or(e2cTop);
    if (!(e2c > e1c && e2c <= e2cTop))
        throw InvalidGain("e2c must lie in (e1c, sqrt((k2M - Ld) * e1c)]");

    ReachParams rp;
    rp.e1c = e1c;
    rp.e2c = e2c;
    rp.kc = kc;
    rp.rhoC = config.rhoC0 * 0.5 * std::log((kc + config.Ld) / (kc - config.Ld));
    return rp;
}

Zone classify_zone(const SwitchErrors& e) {
    const double e1 = e.e1tc, e2 = e.e2tc;
    if (e1 == 0.0 && e2 == 0.0) return Zone::Origin;
    if (e1 * e2 < 0.0) {
        if (std::abs(e1) < std::abs(e2)) return e1 > 0.0 ? Zone::II2 : Zone::IV2;
        return e1 > 0.0 ? Zone::II1 : Zone::IV1;
    }
    // product >= 0, not both zero
    if (e1 <= 0.0 && e2 <= 0.0) {
        // III-1: -e2 >= -e1 >= 0; III-2: -e1 > -e2 >= 0
        return (-e2 >= -e1) ? Zone::III1 : Zone::III2;
    }
    // e1 >= 0 && e2 >= 0
    return (e2 >= e1) ? Zone::I1 : Zone::I2;
}

namespace {

// Zone families sharing one branch of the gain formulas.
bool fast_branch(const SwitchErrors& e) {
    // e1tc*e2tc < 0 with |e1tc| < |e2tc|  (zones II-2 and IV-2)
    return e.e1tc * e.e2tc < 0.0 && std::abs(e.e1tc) < std::abs(e.e2tc);
}

bool slow_branch(const SwitchErrors& e) {
    // e1tc*e2tc < 0 with |e1tc| >= |e2tc|  (zones II-1 and IV-1)
    return e.e1tc * e.e2tc < 0.0 && std::abs(e.e1tc) >= std::abs(e.e2tc);
}

// Second argument of the "others" k2 max (also the second e2max candidate
// scaled by 1/k1).
double cubic_bound(const SwitchErrors& e, double k1) {
    const double r = e.e2tc / k1;
    return (k1 * k1 / 3.0) *
           (std::abs(e.e1tc) + std::sqrt(e.e1tc * e.e1tc + 3.0 * r * r));
}

}  // namespace

double determine_k1(const SwitchErrors& e, const GainConfig& config) {
    double k1;
    if (fast_branch(e) || slow_branch(e)) {
        if (e.e1tc == 0.0)
            throw DegenerateErrors("k1 branch requires |e1(tc)| > 0");
        const double ratio = std::abs(e.e2tc) / std::abs(e.e1tc);
        k1 = (fast_branch(e) ? config.beta11 : config.beta12) * ratio;
    } else {
        k1 = config.beta13;
    }
    if (config.fastK1Floor && k1 > 0.0 && k1 < 1.0) k1 = 1.0;
    return k1;
}

double determine_k2(const SwitchErrors& e, double k1, const GainConfig& config) {
    double bound;
    if (fast_branch(e)) {
        bound = std::max(k1 * std::abs(e.e2tc),
                         e.e2tc * e.e2tc / (2.0 * std::abs(e.e1tc)));
    } else {
        bound = std::max(k1 * std::abs(e.e2tc), cubic_bound(e, k1));
    }
    double k2 = config.beta2 * (bound + config.Ld);
    // Degenerate switch errors leave the bound at Ld; any positive gain
    // stabilizes the origin, keep a strictly positive floor.
    k2 = std::max(k2, config.beta2 * config.Ld + kDegenerateGainEps);
    if (k2 > config.k2M)
        throw GainCeilingExceeded("k2 = " + std::to_string(k2) + " exceeds k2M = " +
                                  std::to_string(config.k2M));
    return k2;
}

RhoResult determine_rho(const SwitchErrors& e, double k1, double k2,
                        const GainConfig& config) {
    RhoResult out;
    out.e2max = std::max(std::abs(e.e2tc), cubic_bound(e, k1) / k1);
    const double den = k2 - k1 * out.e2max - config.Ld;
    if (!(den > 0.0))
        throw SaturatedGain("k2 - k1*e2max - Ld must be positive (k2 too small)");
    const double num = k2 + k1 * out.e2max + config.Ld;
    out.rho = config.rho0 * std::max(1.0 / (2.0 * k1), 1.0) * std::log(num / den);
    out.rho = std::max(out.rho, kRhoMin);
    return out;
}

bool ConditionReport::all_pass() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const ConditionEntry& c) { return c.pass || !c.required; });
}

ConditionReport validate_conditions(const GainSet& g, const SwitchErrors& e,
                                    const GainConfig& config) {
    ConditionReport report;
    report.zone = classify_zone(e);
    auto add = [&](std::string name, bool pass, double slack, bool required = true) {
        report.entries.push_back({std::move(name), pass, slack, required});
    };

    // k1 interval for the realized zone (open bounds are strict).
    if (fast_branch(e)) {
        const double ratio = std::abs(e.e2tc) / std::abs(e.e1tc);
        add("k1 in (0, |e2tc|/|e1tc|)", g.k1 > 0.0 && g.k1 < ratio,
            std::min(g.k1, ratio - g.k1));
    } else if (slow_branch(e)) {
        const double ratio = std::abs(e.e2tc) / std::abs(e.e1tc);
        add("k1 in (|e2tc|/|e1tc|, inf)", g.k1 > ratio, g.k1 - ratio);
    } else {
        add("k1 in (0, inf)", g.k1 > 0.0, g.k1);
    }

    // k2 strict lower bound for the realized zone.
    {
        double bound;
        if (fast_branch(e)) {
            bound = std::max(g.k1 * std::abs(e.e2tc) + config.Ld,
                             e.e2tc * e.e2tc / (2.0 * std::abs(e.e1tc)) + config.Ld);
        } else {
            bound = std::max(g.k1 * std::abs(e.e2tc) + config.Ld,
                             cubic_bound(e, g.k1) + config.Ld);
        }
        add("k2 > zone lower bound", g.k2 > bound, g.k2 - bound);
    }

    add("k2 <= k2M", g.k2 <= config.k2M, config.k2M - g.k2);
    add("kc > Ld", g.kc > config.Ld, g.kc - config.Ld);

    const double span = config.k2M - config.Ld;
    add("e1c in (0, k2M - Ld)", g.e1c > 0.0 && g.e1c < span,
        std::min(g.e1c, span - g.e1c));
    {
        const double top = std::sqrt(std::max(span * g.e1c, 0.0));
        add("e2c in (e1c, sqrt((k2M - Ld) e1c)]", g.e2c > g.e1c && g.e2c <= top,
            std::min(g.e2c - g.e1c, top - g.e2c));
    }

    if (g.kc > config.Ld) {
        const double rhoCMin = 0.5 * std::log((g.kc + config.Ld) / (g.kc - config.Ld));
        add("rhoC >= rhoC0 * (1/2) ln((kc+Ld)/(kc-Ld))", g.rhoC >= config.rhoC0 * rhoCMin,
            g.rhoC - config.rhoC0 * rhoCMin);
    } else {
        add("rhoC >= rhoC0 * (1/2) ln((kc+Ld)/(kc-Ld))", false, 0.0);
    }

    {
        const double e2max = std::max(std::abs(e.e2tc), cubic_bound(e, g.k1) / g.k1);
        const double den = g.k2 - g.k1 * e2max - config.Ld;
        if (den > 0.0) {
            const double rhoMin = config.rho0 * std::max(1.0 / (2.0 * g.k1), 1.0) *
                                  std::log((g.k2 + g.k1 * e2max + config.Ld) / den);
            add("rho >= rho0 max{1/(2k1),1} ln(...)", g.rho >= rhoMin, g.rho - rhoMin);
        } else {
            add("rho >= rho0 max{1/(2k1),1} ln(...) [denominator > 0]", false, den);
        }
    }

    // Coarse two-way partition (informational): it prescribes k1 < ratio for
    // all product<0 zones, so it legitimately disagrees with the fine
    // partition in zones II-1/IV-1.
    if (e.e1tc * e.e2tc < 0.0) {
        const double ratio = std::abs(e.e2tc) / std::abs(e.e1tc);
        add("[coarse] k1 in (0, |e2tc|/|e1tc|)", g.k1 > 0.0 && g.k1 < ratio,
            std::min(g.k1, ratio - g.k1), false);
        const double bound = std::max(g.k1 * std::abs(e.e2tc) + config.Ld,
                                      e.e2tc * e.e2tc / (2.0 * std::abs(e.e1tc)) + config.Ld);
        add("[coarse] k2 > lower bound", g.k2 > bound, g.k2 - bound, false);
    } else {
        add("[coarse] k1 in (0, inf)", g.k1 > 0.0, g.k1, false);
        const double bound = std::max(g.k1 * std::abs(e.e2tc) + config.Ld,
                                      cubic_bound(e, g.k1) + config.Ld);
        add("[coarse] k2 > lower bound", g.k2 > bound, g.k2 - bound, false);
    }

    return report;
}

SwitchErrors predict_switch_errors(const ErrorState& e0, const ReachParams& reach) {
    if (std::abs(e0.e1) <= reach.e1c) return {e0.e1, e0.e2};
    const double s = sgn(e0.e1);
    return {reach.e1c * s, -reach.e2c * s};
}

GainSet determine_gains(const SwitchErrors& e, const GainConfig& config,
                        const ReachParams& reach) {
    GainSet g;
    g.k1 = determine_k1(e, config);
    g.k2 = determine_k2(e, g.k1, config);
    const RhoResult r = determine_rho(e, g.k1, g.k2, config);
    g.rho = r.rho;
    g.kc = reach.kc;
    g.rhoC = reach.rhoC;
    g.e1c = reach.e1c;
    g.e2c = reach.e2c;
    return g;
}

}  // namespace nosm
