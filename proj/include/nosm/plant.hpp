/**
 * @file plant.hpp
 * @brief Simulated plants: the uncertain double integrator and the 6-channel
 *        quadrotor model with disturbance signals, measurement noise,
 *        control allocation and the rotor mixer.
 */

#pragma once

#include <array>
#include <cstdint>

#include "nosm/types.hpp"

namespace nosm {

struct PlantDeriv {
    double dx1 = 0.0;
    double dx2 = 0.0;
};

/// Uncertain double integrator: dx1 = x2, dx2 = h + u - delta
/// (note the minus sign on delta).
inline PlantDeriv double_integrator_rhs(double /*x1*/, double x2, double u, double h,
                                        double delta) {
    return {x2, h + u - delta};
}

/// Bounded disturbance signal. All kinds are pure functions of time (the
/// random kind holds a counter-hashed sample per interval), so evaluation is
/// deterministic and safe inside integrator stages.
class Disturbance {
public:
    enum class Kind { Zero, Constant, SinusoidalProduct, BoundedRandom, Gust };

    Disturbance() = default;

    static Disturbance zero();
    static Disturbance constant(double c);
    /// offset + amp * sin(w1 t) * sin(w2 t); certified bound |offset| + |amp|.
    static Disturbance sinusoidal_product(double offset, double amp, double w1, double w2);
    /// Zero-order-hold uniform samples in [-amplitude, amplitude], one per
    /// holdDt interval, drawn from a counter-based stream.
    static Disturbance bounded_random(double amplitude, double holdDt, std::uint64_t stream = 0);
    /// Smooth half-sine-squared bump of the given peak on [t0, t0 + duration].
    static Disturbance gust(double peak, double t0, double duration);

    double at(double t, std::uint64_t seed = 0) const;
    double bound() const { return bound_; }
    Kind kind() const { return kind_; }

private:
    Kind kind_ = Kind::Zero;
    double p0 = 0.0, p1 = 0.0, p2 = 0.0, p3 = 0.0;
    std::uint64_t stream_ = 0;
    double bound_ = 0.0;
};

/// Additive measurement noise; same determinism model as Disturbance.
class NoiseModel {
public:
    enum class Kind { None, Sinusoid, BoundedRandom };

    static NoiseModel none();
    /// amplitude * sin(omega t + phase)
    static NoiseModel sinusoid(double amplitude, double omega, double phase = 0.0);
    static NoiseModel bounded_random(double amplitude, double holdDt, std::uint64_t stream = 0);

    double at(double t, std::uint64_t seed = 0) const;
    double bound() const { return bound_; }
    bool is_none() const { return kind_ == Kind::None; }

private:
    Kind kind_ = Kind::None;
    double p0 = 0.0, p1 = 0.0, p2 = 0.0;
    std::uint64_t stream_ = 0;
    double bound_ = 0.0;
};

/// Truth plus additive noise.
inline double measure(double truth, const NoiseModel& noise, double t, std::uint64_t seed = 0) {
    return truth + noise.at(t, seed);
}

// ---------------------------------------------------------------------------
// Quadrotor model
// ---------------------------------------------------------------------------

struct UavParams {
    double m = 2.01;       // kg
    double g = 9.81;       // m/s^2
    double l = 0.2;        // m, rotor arm
    double Jphi = 0.25;    // kg m^2
    double Jtheta = 0.25;  // kg m^2
    double Jpsi = 0.5;     // kg m^2
    double b = 2.923e-3;   // rotor force coefficient
    double k = 5e-4;       // rotor torque coefficient
    // Drag coefficients, unknown to the controller; folded into delta_*.
    double kx = 0.1, ky = 0.1, kz = 0.1;
    double kpsi = 0.05, ktheta = 0.05, kphi = 0.05;
};

/// Channel order used throughout the UAV code.
enum class Channel { X = 0, Y, Z, Psi, Theta, Phi };
inline constexpr int kNumChannels = 6;
const char* to_string(Channel c);

/// Position/velocity per channel; angles are unwrapped.
struct UavState {
    std::array<double, kNumChannels> pos{};  // x, y, z, psi, theta, phi
    std::array<double, kNumChannels> vel{};

    std::array<double, 12> to_array() const;
    static UavState from_array(const std::array<double, 12>& a);
};

/// Per-channel accelerations u_bar (specific force / angular acceleration).
using UbarSet = std::array<double, kNumChannels>;

struct UavDeriv {
    std::array<double, kNumChannels> dpos{};
    std::array<double, kNumChannels> dvel{};
};

/// Per-channel uncertainty signals Delta_* (drag enters separately from the
/// state): delta_x = (-kx vx + Delta_x)/m, attitude channels divide by J and
/// the pitch/roll drags carry the arm length l.
using UavUncertainty = std::array<Disturbance, kNumChannels>;

/// Per-channel double-integrator updates with h_z = -g and delta_* built from
/// drag plus Delta_*.
UavDeriv uav_rhs(const UavState& s, const UbarSet& ubar, const UavParams& p,
                 const UavUncertainty& unc, double t, std::uint64_t seed = 0);

/// Value of delta_* at a state/time (exposed for tests and trace columns).
double uav_delta(Channel c, const UavState& s, const UavParams& p,
                 const UavUncertainty& unc, double t, std::uint64_t seed = 0);

/// Known feedforward h_* (only h_z = -g is nonzero).
inline double uav_h(Channel c, const UavParams& p) {
    return c == Channel::Z ? -p.g : 0.0;
}

struct Allocation {
    double F = 0.0;       // total thrust, N
    double thetaD = 0.0;  // rad
    double phiD = 0.0;    // rad
};

/// Inverts the attitude-to-acceleration map at yaw = psiD:
///   F = m sqrt(ux^2 + uy^2 + uz^2), (thetaD, phiD) from the trigonometric
///   relations; the forward map reproduces the inputs to round-off.
/// Throws SingularAttitude when |thetaD| or |phiD| >= pi/2 - margin.
Allocation allocate(double ubarX, double ubarY, double ubarZ, double psiD,
                    const UavParams& p, double margin = 0.1);

/// Forward acceleration map: specific forces produced by thrust F at the
/// given attitude.
void thrust_to_ubar(double F, double psi, double theta, double phi, const UavParams& p,
                    double& ubarX, double& ubarY, double& ubarZ);

/// Solves {sum Fi = F; (k/b)(F1-F2+F3-F4) = uPsi; (F3-F1) l = uTheta;
/// (F2-F4) l = uPhi} for the rotor forces.
/// Throws InfeasibleThrust when any Fi < 0 (reported, not clamped).
std::array<double, 4> mixer(double F, double uPsi, double uTheta, double uPhi,
                            const UavParams& p);

/// Forward of the mixer: total thrust and torques from rotor forces.
void mixer_forward(const std::array<double, 4>& Fi, const UavParams& p, double& F,
                   double& uPsi, double& uTheta, double& uPhi);

}  // namespace nosm
