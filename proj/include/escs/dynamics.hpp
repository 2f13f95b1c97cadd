#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

// Planar vehicle motion: kinematic bicycle model plus a longitudinal
// braking model under saturated proportional velocity control.

namespace escs::dynamics {

struct VehicleParams {
    double wheelbase_L = 2.55;   // [m]
    double mass = 1407.0;        // laden mass [kg]
    double drag_c = 140.0;       // rolling resistance + drag [N s/m]
    double v_max = 47.8;         // [m/s]
    double a_max = 8.5;          // [m/s^2]
    double d_max = 5.0;          // deceleration magnitude [m/s^2]
    double f_max = 10600.0;      // [N]
    double p_gain = 70.0;

    void validate() const {
        if (wheelbase_L <= 0.0) throw std::invalid_argument("wheelbase_L must be > 0");
        if (mass <= 0.0) throw std::invalid_argument("mass must be > 0");
        if (drag_c < 0.0) throw std::invalid_argument("drag_c must be >= 0");
        if (v_max <= 0.0) throw std::invalid_argument("v_max must be > 0");
        if (a_max <= 0.0) throw std::invalid_argument("a_max must be > 0");
        if (d_max <= 0.0) throw std::invalid_argument("d_max must be > 0");
        if (f_max <= 0.0) throw std::invalid_argument("f_max must be > 0");
        if (p_gain <= 0.0) throw std::invalid_argument("p_gain must be > 0");
    }
};

struct KinematicState {
    double x = 0.0;              // [m]
    double y = 0.0;              // [m]
    double heading_theta = 0.0;  // [rad]
    double t = 0.0;              // [s]
};

struct LongitudinalState {
    double x = 0.0;  // [m]
    double v = 0.0;  // [m/s]
    double t = 0.0;  // [s]
};

struct ImpactResult {
    double impact_velocity = 0.0;  // [m/s]
    double impact_time = 0.0;      // [s]
    bool stopped_before_target = false;
    std::vector<LongitudinalState> series;
};

struct SteeringResult {
    std::vector<KinematicState> series;
    bool lane_clearance = false;
};

// Steering authority is limited to +/- 10 degrees.
inline constexpr double max_steering_angle = 10.0 * std::numbers::pi / 180.0;

inline constexpr double default_dt = 1e-3;     // [s]
inline constexpr double lane_width = 3.5;      // [m]
inline constexpr double stop_velocity = 1e-6;  // [m/s]

namespace detail {

template <typename State, typename Deriv>
State rk4_step(const State& s, const Deriv& f, double dt) {
    const State k1 = f(s);
    const State k2 = f(s + k1 * (dt / 2.0));
    const State k3 = f(s + k2 * (dt / 2.0));
    const State k4 = f(s + k3 * dt);
    return s + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0);
}

struct Vec3 {
    double a = 0.0, b = 0.0, c = 0.0;
    Vec3 operator+(const Vec3& o) const { return {a + o.a, b + o.b, c + o.c}; }
    Vec3 operator*(double s) const { return {a * s, b * s, c * s}; }
};

struct Vec2 {
    double a = 0.0, b = 0.0;
    Vec2 operator+(const Vec2& o) const { return {a + o.a, b + o.b}; }
    Vec2 operator*(double s) const { return {a * s, b * s}; }
};

inline double clamp(double v, double lo, double hi) {
    return v < lo ? lo : (v > hi ? hi : v);
}

// Saturated proportional controller: normalized command -> force -> drag
// -> acceleration clamp. Velocity is clamped separately after integration.
inline double longitudinal_accel(double v, double v_ref, const VehicleParams& p) {
    const double vc = clamp(v, 0.0, p.v_max);
    const double u = clamp(p.p_gain * (v_ref - vc), -1.0, 1.0);
    const double force = u * p.f_max;
    const double a = (force - p.drag_c * vc) / p.mass;
    return clamp(a, -p.d_max, p.a_max);
}

}  // namespace detail

// One fixed step of the kinematic bicycle model (RK4 over x, y, theta).
inline KinematicState kinematic_step(const KinematicState& state, double v,
                                     double gamma, double wheelbase_L,
                                     double dt) {
    if (dt <= 0.0) throw std::invalid_argument("dt must be > 0");
    if (std::abs(gamma) > max_steering_angle)
        throw std::invalid_argument("steering angle exceeds +/-10 degree limit");
    if (wheelbase_L <= 0.0) throw std::invalid_argument("wheelbase_L must be > 0");

    const double turn_rate = v / wheelbase_L * std::tan(gamma);
    const auto deriv = [&](const detail::Vec3& s) {
        return detail::Vec3{v * std::cos(s.c), v * std::sin(s.c), turn_rate};
    };
    const detail::Vec3 next = detail::rk4_step(
        detail::Vec3{state.x, state.y, state.heading_theta}, deriv, dt);
    return {next.a, next.b, next.c, state.t + dt};
}

inline KinematicState kinematic_step(const KinematicState& state, double v,
                                     double gamma, const VehicleParams& params,
                                     double dt) {
    return kinematic_step(state, v, gamma, params.wheelbase_L, dt);
}

// One fixed step of the force-driven longitudinal model tracking v_ref.
inline LongitudinalState longitudinal_step(const LongitudinalState& state,
                                           double v_ref,
                                           const VehicleParams& params,
                                           double dt) {
    if (dt <= 0.0) throw std::invalid_argument("dt must be > 0");
    params.validate();

    const auto deriv = [&](const detail::Vec2& s) {
        return detail::Vec2{detail::clamp(s.b, 0.0, params.v_max),
                            detail::longitudinal_accel(s.b, v_ref, params)};
    };
    detail::Vec2 next =
        detail::rk4_step(detail::Vec2{state.x, state.v}, deriv, dt);
    next.b = detail::clamp(next.b, 0.0, params.v_max);  // no reverse motion
    return {next.a, next.b, state.t + dt};
}

// Emergency braking (v_ref = 0) toward a target d_target metres ahead.
// Reports the velocity at the crossing (linearly interpolated inside the
// crossing step) or flags a stop short of the target.
inline ImpactResult brake_to_target(const VehicleParams& params, double v0,
                                    double d_target,
                                    double dt = default_dt) {
    params.validate();
    if (v0 <= 0.0 || v0 > params.v_max)
        throw std::invalid_argument("v0 must be in (0, v_max]");
    if (d_target <= 0.0) throw std::invalid_argument("d_target must be > 0");
    if (dt <= 0.0) throw std::invalid_argument("dt must be > 0");

    ImpactResult result;
    LongitudinalState s{0.0, v0, 0.0};
    result.series.push_back(s);

    // Drag alone stops the vehicle eventually; cap as a safety net.
    const std::size_t max_steps = static_cast<std::size_t>(3600.0 / dt);
    for (std::size_t i = 0; i < max_steps; ++i) {
        const LongitudinalState prev = s;
        s = longitudinal_step(s, 0.0, params, dt);
        result.series.push_back(s);

        if (s.x >= d_target) {
            const double span = s.x - prev.x;
            const double frac = span > 0.0 ? (d_target - prev.x) / span : 1.0;
            result.impact_velocity = prev.v + frac * (s.v - prev.v);
            result.impact_time = prev.t + frac * dt;
            result.stopped_before_target = false;
            return result;
        }
        if (s.v <= stop_velocity) {
            result.impact_velocity = 0.0;
            result.impact_time = s.t;
            result.stopped_before_target = true;
            return result;
        }
    }
    throw std::runtime_error("brake_to_target did not terminate");
}

// Impact velocity under constant deceleration: sqrt(v0^2 - 2 a d), floored
// at zero. Oracle for brake_to_target when the deceleration clamp binds.
inline double closed_form_impact_velocity(double v0, double a_dec, double d) {
    if (v0 < 0.0) throw std::invalid_argument("v0 must be >= 0");
    if (a_dec <= 0.0) throw std::invalid_argument("a_dec must be > 0");
    if (d < 0.0) throw std::invalid_argument("d must be >= 0");
    return std::sqrt(std::max(0.0, v0 * v0 - 2.0 * a_dec * d));
}

// Replays a braking velocity profile through the bicycle model at constant
// steering. lane_clearance: |y| reaches a full lane width before the
// along-road displacement reaches d_target.
inline SteeringResult steering_trajectory(const VehicleParams& params,
                                          const ImpactResult& braking,
                                          double gamma, double d_target) {
    if (std::abs(gamma) > max_steering_angle)
        throw std::invalid_argument("steering angle exceeds +/-10 degree limit");
    if (braking.series.empty())
        throw std::invalid_argument("braking series is empty");

    SteeringResult out;
    KinematicState s;
    s.t = braking.series.front().t;
    out.series.push_back(s);

    for (std::size_t i = 0; i + 1 < braking.series.size(); ++i) {
        const double dt = braking.series[i + 1].t - braking.series[i].t;
        if (dt <= 0.0) continue;
        s = kinematic_step(s, braking.series[i].v, gamma, params, dt);
        out.series.push_back(s);
        if (!out.lane_clearance && s.x < d_target &&
            std::abs(s.y) >= lane_width) {
            out.lane_clearance = true;
        }
        if (s.x >= d_target) break;
    }
    return out;
}

}  // namespace escs::dynamics
