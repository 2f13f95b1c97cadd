#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

// Lumped-parameter crash model: undamped mass-spring quarter cycle for the
// crumple zone, plus least-squares identification of its force-deformation
// line.

namespace escs::crash {

// Fitted Toyota Yaris crumple-zone constants.
inline constexpr double yaris_stiffness = 894300.0;     // [N/m]
inline constexpr double yaris_failure_point = 1410.0;   // [N]

struct CrashModel {
    double mass = 1247.0;                       // laden mass [kg]
    double stiffness_k = yaris_stiffness;       // [N/m]
    double failure_point_fp = yaris_failure_point;  // [N]
    bool include_failure_point_in_energy = false;

    void validate() const {
        if (mass <= 0.0) throw std::invalid_argument("mass must be > 0");
        if (stiffness_k <= 0.0) throw std::invalid_argument("stiffness_k must be > 0");
        if (failure_point_fp < 0.0)
            throw std::invalid_argument("failure_point_fp must be >= 0");
    }
};

struct CrashSample {
    double t = 0.0;             // [s]
    double deformation = 0.0;   // [m]
    double acceleration = 0.0;  // [m/s^2]
};

struct CrashOutcome {
    double peak_deformation = 0.0;   // [m]
    double collision_duration = 0.0; // [s]
    double collision_energy = 0.0;   // [J]
    double peak_acceleration = 0.0;  // [m/s^2]
    std::vector<CrashSample> series;
};

struct ForceDeformationSample {
    double deformation = 0.0;  // [m]
    double force = 0.0;        // [N]
};

struct LlsFit {
    double failure_point_fp = 0.0;  // intercept [N]
    double stiffness_k = 0.0;       // slope [N/m]
    double fitted_energy = 0.0;     // area under the fitted line [J]
};

// Quarter-cycle amplitude of the undamped oscillator started at zero
// deformation with initial velocity impact_v: v * sqrt(m/k).
inline double lpm_peak_deformation(const CrashModel& model, double impact_v) {
    model.validate();
    if (impact_v < 0.0) throw std::invalid_argument("impact_v must be >= 0");
    return impact_v * std::sqrt(model.mass / model.stiffness_k);
}

inline double kinetic_energy(double mass, double v) {
    if (mass <= 0.0) throw std::invalid_argument("mass must be > 0");
    if (v < 0.0) throw std::invalid_argument("v must be >= 0");
    return 0.5 * mass * v * v;
}

// Per-unit deviation of a model value from its reference.
inline double discrepancy(double reference, double model) {
    if (reference == 0.0) throw std::invalid_argument("reference must be nonzero");
    return std::abs((reference - model) / reference);
}

// Integrates m x'' + k x = 0 from x=0, x'=impact_v until the velocity first
// reaches zero (peak deformation). The crossing step is interpolated.
inline CrashOutcome lpm_simulate(const CrashModel& model, double impact_v,
                                 double dt = 1e-5) {
    model.validate();
    if (impact_v <= 0.0) throw std::invalid_argument("impact_v must be > 0");
    if (dt <= 0.0) throw std::invalid_argument("dt must be > 0");

    const double w2 = model.stiffness_k / model.mass;
    CrashOutcome out;
    double x = 0.0, v = impact_v, t = 0.0;
    out.series.push_back({t, x, -w2 * x});

    const std::size_t max_steps =
        static_cast<std::size_t>(std::ceil(std::numbers::pi / std::sqrt(w2) / dt)) + 2;
    for (std::size_t i = 0; i < max_steps; ++i) {
        const double xp = x, vp = v;
        // RK4 on (x, v), v' = -w2 x
        const double k1x = vp, k1v = -w2 * xp;
        const double k2x = vp + 0.5 * dt * k1v, k2v = -w2 * (xp + 0.5 * dt * k1x);
        const double k3x = vp + 0.5 * dt * k2v, k3v = -w2 * (xp + 0.5 * dt * k2x);
        const double k4x = vp + dt * k3v, k4v = -w2 * (xp + dt * k3x);
        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        t += dt;
        out.series.push_back({t, x, -w2 * x});

        if (v <= 0.0) {
            const double frac = vp / (vp - v);
            out.collision_duration = t - dt + frac * dt;
            out.peak_deformation = xp + frac * (x - xp);
            break;
        }
    }
    if (out.collision_duration == 0.0)
        throw std::runtime_error("lpm_simulate did not reach peak deformation");

    out.peak_acceleration = w2 * out.peak_deformation;
    out.collision_energy =
        0.5 * model.stiffness_k * out.peak_deformation * out.peak_deformation;
    if (model.include_failure_point_in_energy)
        out.collision_energy += model.failure_point_fp * out.peak_deformation;
    return out;
}

// Ordinary least squares for f = fp + k * deformation via the 2x2 normal
// equations. fitted_energy is the integral of the fitted line over the
// sampled deformation range.
inline LlsFit lls_fit(std::span<const ForceDeformationSample> samples) {
    if (samples.size() < 2)
        throw std::invalid_argument("lls_fit needs at least 2 samples");

    double n = 0.0, sd = 0.0, sdd = 0.0, sf = 0.0, sdf = 0.0;
    double dmin = samples.front().deformation, dmax = dmin;
    for (const auto& s : samples) {
        if (s.deformation < 0.0)
            throw std::invalid_argument("deformation must be >= 0");
        n += 1.0;
        sd += s.deformation;
        sdd += s.deformation * s.deformation;
        sf += s.force;
        sdf += s.deformation * s.force;
        dmin = std::min(dmin, s.deformation);
        dmax = std::max(dmax, s.deformation);
    }

    const double det = n * sdd - sd * sd;
    const double scale = n * sdd + sd * sd;
    if (std::abs(det) <= 1e-12 * std::max(scale, 1.0))
        throw std::invalid_argument(
            "lls_fit design matrix is singular (all deformations equal)");

    LlsFit fit;
    fit.failure_point_fp = (sdd * sf - sd * sdf) / det;
    fit.stiffness_k = (n * sdf - sd * sf) / det;
    fit.fitted_energy = fit.failure_point_fp * (dmax - dmin) +
                        0.5 * fit.stiffness_k * (dmax * dmax - dmin * dmin);
    return fit;
}

}  // namespace escs::crash
