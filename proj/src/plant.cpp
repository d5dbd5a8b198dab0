#include "nosm/plant.hpp"

#include <cmath>

namespace nosm {

namespace {

// Counter-based stream: splitmix64 of (seed ^ stream, index) -> uniform in [0,1).
std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double uniform01(std::uint64_t seed, std::uint64_t index) {
    const std::uint64_t h = splitmix64(splitmix64(seed) ^ index);
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace

Disturbance Disturbance::zero() { return Disturbance{}; }

Disturbance Disturbance::constant(double c) {
    Disturbance d;
    d.kind_ = Kind::Constant;
    d.p0 = c;
    d.bound_ = std::abs(c);
    return d;
}

Disturbance Disturbance::sinusoidal_product(double offset, double amp, double w1, double w2) {
    Disturbance d;
    d.kind_ = Kind::SinusoidalProduct;
    d.p0 = offset;
    d.p1 = amp;
    d.p2 = w1;
    d.p3 = w2;
    d.bound_ = std::abs(offset) + std::abs(amp);
    return d;
}

Disturbance Disturbance::bounded_random(double amplitude, double holdDt, std::uint64_t stream) {
    Disturbance d;
    d.kind_ = Kind::BoundedRandom;
    d.p0 = amplitude;
    d.p1 = holdDt;
    d.stream_ = stream;
    d.bound_ = std::abs(amplitude);
    return d;
}

Disturbance Disturbance::gust(double peak, double t0, double duration) {
    Disturbance d;
    d.kind_ = Kind::Gust;
    d.p0 = peak;
    d.p1 = t0;
    d.p2 = duration;
    d.bound_ = std::abs(peak);
    return d;
}

double Disturbance::at(double t, std::uint64_t seed) const {
    switch (kind_) {
        case Kind::Zero:
            return 0.0;
        case Kind::Constant:
            return p0;
        case Kind::SinusoidalProduct:
            return p0 + p1 * std::sin(p2 * t) * std::sin(p3 * t);
        case Kind::BoundedRandom: {
            const auto idx = static_cast<std::uint64_t>(std::floor(t / p1));
            return p0 * (2.0 * uniform01(seed ^ (stream_ * 0x9e3779b9ULL + 0x7f4a7c15ULL), idx) - 1.0);
        }
        case Kind::Gust: {
            if (t < p1 || t > p1 + p2) return 0.0;
            const double s = std::sin(M_PI * (t - p1) / p2);
            return p0 * s * s;
        }
    }
    return 0.0;
}

NoiseModel NoiseModel::none() { return NoiseModel{}; }

NoiseModel NoiseModel::sinusoid(double amplitude, double omega, double phase) {
    NoiseModel n;
    n.kind_ = Kind::Sinusoid;
    n.p0 = amplitude;
    n.p1 = omega;
    n.p2 = phase;
    n.bound_ = std::abs(amplitude);
    return n;
}

NoiseModel NoiseModel::bounded_random(double amplitude, double holdDt, std::uint64_t stream) {
    NoiseModel n;
    n.kind_ = Kind::BoundedRandom;
    n.p0 = amplitude;
    n.p1 = holdDt;
    n.stream_ = stream;
    n.bound_ = std::abs(amplitude);
    return n;
}

double NoiseModel::at(double t, std::uint64_t seed) const {
    switch (kind_) {
        case Kind::None:
            return 0.0;
        case Kind::Sinusoid:
            return p0 * std::sin(p1 * t + p2);
        case Kind::BoundedRandom: {
            const auto idx = static_cast<std::uint64_t>(std::floor(t / p1));
            return p0 * (2.0 * uniform01(seed ^ (stream_ * 0xd1342543ULL + 0x2545f491ULL), idx) - 1.0);
        }
    }
    return 0.0;
}

const char* to_string(Channel c) {
    switch (c) {
        case Channel::X: return "x";
        case Channel::Y: return "y";
        case Channel::Z: return "z";
        case Channel::Psi: return "psi";
        case Channel::Theta: return "theta";
        case Channel::Phi: return "phi";
    }
    return "?";
}

std::array<double, 12> UavState::to_array() const {
    std::array<double, 12> a{};
    for (int i = 0; i < kNumChannels; ++i) {
        a[2 * i] = pos[i];
        a[2 * i + 1] = vel[i];
    }
    return a;
}

UavState UavState::from_array(const std::array<double, 12>& a) {
    UavState s;
    for (int i = 0; i < kNumChannels; ++i) {
        s.pos[i] = a[2 * i];
        s.vel[i] = a[2 * i + 1];
    }
    return s;
}

double uav_delta(Channel c, const UavState& s, const UavParams& p,
                 const UavUncertainty& unc, double t, std::uint64_t seed) {
    const int i = static_cast<int>(c);
    const double Delta = unc[i].at(t, seed + static_cast<std::uint64_t>(i) * 0x51ed270bULL);
    switch (c) {
        case Channel::X: return (-p.kx * s.vel[i] + Delta) / p.m;
        case Channel::Y: return (-p.ky * s.vel[i] + Delta) / p.m;
        case Channel::Z: return (-p.kz * s.vel[i] + Delta) / p.m;
        case Channel::Psi: return (-p.kpsi * s.vel[i] + Delta) / p.Jpsi;
        case Channel::Theta: return (-p.l * p.ktheta * s.vel[i] + Delta) / p.Jtheta;
        case Channel::Phi: return (-p.l * p.kphi * s.vel[i] + Delta) / p.Jphi;
    }
    return 0.0;
}

UavDeriv uav_rhs(const UavState& s, const UbarSet& ubar, const UavParams& p,
                 const UavUncertainty& unc, double t, std::uint64_t seed) {
    UavDeriv d;
    for (int i = 0; i < kNumChannels; ++i) {
        const auto c = static_cast<Channel>(i);
        d.dpos[i] = s.vel[i];
        d.dvel[i] = uav_h(c, p) + ubar[i] + uav_delta(c, s, p, unc, t, seed);
    }
    return d;
}

void thrust_to_ubar(double F, double psi, double theta, double phi, const UavParams& p,
                    double& ubarX, double& ubarY, double& ubarZ) {
    const double cpsi = std::cos(psi), spsi = std::sin(psi);
    const double cth = std::cos(theta), sth = std::sin(theta);
    const double cph = std::cos(phi), sph = std::sin(phi);
    ubarX = (cpsi * sth * cph + spsi * sph) * F / p.m;
    ubarY = (spsi * sth * cph - cpsi * sph) * F / p.m;
    ubarZ = cth * cph * F / p.m;
}

Allocation allocate(double ubarX, double ubarY, double ubarZ, double psiD,
                    const UavParams& p, double margin) {
    Allocation a;
    const double norm = std::sqrt(ubarX * ubarX + ubarY * ubarY + ubarZ * ubarZ);
    a.F = p.m * norm;
    if (a.F < 1e-12) return a;  // free-fall command: zero thrust, level attitude

    // Rotate the horizontal components into the yaw frame:
    //   A = ux c + uy s = sin(theta) cos(phi) |u|
    //   B = ux s - uy c = sin(phi) |u|
    //   uz             = cos(theta) cos(phi) |u|
    const double cpsi = std::cos(psiD), spsi = std::sin(psiD);
    const double A = (ubarX * cpsi + ubarY * spsi) / norm;
    const double B = (ubarX * spsi - ubarY * cpsi) / norm;

    const double limit = M_PI / 2.0 - margin;
    if (std::abs(B) >= std::sin(limit))
        throw SingularAttitude("required |phi| at or beyond pi/2 - margin");
    a.phiD = std::asin(B);
    a.thetaD = std::atan2(A, ubarZ / norm);
    if (std::abs(a.thetaD) >= limit)
        throw SingularAttitude("required |theta| at or beyond pi/2 - margin");
    return a;
}

std::array<double, 4> mixer(double F, double uPsi, double uTheta, double uPhi,
                            const UavParams& p) {
    const double P = uPsi * p.b / p.k;  // F1 - F2 + F3 - F4
    const double T = uTheta / p.l;      // F3 - F1
    const double H = uPhi / p.l;        // F2 - F4
    const double odd = 0.5 * (F + P);   // F1 + F3
    const double even = 0.5 * (F - P);  // F2 + F4
    std::array<double, 4> Fi{0.5 * (odd - T), 0.5 * (even + H), 0.5 * (odd + T),
                             0.5 * (even - H)};
    for (double f : Fi)
        if (f < 0.0) throw InfeasibleThrust("rotor force solution has a negative component");
    return Fi;
}

void mixer_forward(const std::array<double, 4>& Fi, const UavParams& p, double& F,
                   double& uPsi, double& uTheta, double& uPhi) {
    F = Fi[0] + Fi[1] + Fi[2] + Fi[3];
    uPsi = (p.k / p.b) * (Fi[0] - Fi[1] + Fi[2] - Fi[3]);
    uTheta = (Fi[2] - Fi[0]) * p.l;
    uPhi = (Fi[1] - Fi[3]) * p.l;
}

}  // namespace nosm
