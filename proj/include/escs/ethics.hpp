#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "escs/severity.hpp"

// Common weighted utility cost over fuzzy severity memberships, and path
// selection under utilitarian or deontological policy.

namespace escs::ethics {

enum class TargetKind { rigid_barrier, pedestrians };
enum class Policy { utilitarian, deontological };

inline std::string_view to_string(TargetKind k) {
    return k == TargetKind::rigid_barrier ? "rigid_barrier" : "pedestrians";
}

inline std::string_view to_string(Policy p) {
    return p == Policy::utilitarian ? "utilitarian" : "deontological";
}

// Severity weight for set index n in 1..5: (n!)^2, i.e. 1, 4, 36, 576, 14400.
inline double factorial_squared_weight(int n) {
    if (n < 1 || n > severity::set_count)
        throw std::invalid_argument("set index must be in 1..5");
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f * f;
}

// Weighted cost of one collision outcome: each membership multiplies the
// weight of its own set, scaled by the number of people at risk.
inline double utility_cost(const severity::MembershipResult& m, int people_count) {
    if (people_count < 0) throw std::invalid_argument("people_count must be >= 0");
    const double per_person =
        factorial_squared_weight(m.higher_set_index) * m.mu_higher +
        factorial_squared_weight(m.lower_set_index) * m.mu_lower;
    return per_person * people_count;
}

struct CollisionOption {
    std::string option_id;
    bool is_original_course = false;
    TargetKind target_kind = TargetKind::rigid_barrier;
    int people_count = 0;
    double feature_value = 0.0;  // deformation [m] or impact velocity [m/s]
    severity::MembershipResult membership;
    double utility_cost = 0.0;
};

struct Decision {
    std::string chosen_option;
    Policy policy = Policy::utilitarian;
    std::vector<std::pair<std::string, double>> per_option_costs;
    std::string rationale;
};

inline constexpr double cost_tie_tolerance = 1e-9;

// Utilitarian: argmin over costs, ties resolved to the original course.
// Deontological: the original course, regardless of costs.
inline Decision decide(std::span<const CollisionOption> options, Policy policy) {
    if (options.empty()) throw std::invalid_argument("decide needs at least one option");
    const CollisionOption* original = nullptr;
    for (const auto& o : options) {
        if (!o.is_original_course) continue;
        if (original) throw std::invalid_argument("multiple original-course options");
        original = &o;
    }
    if (!original) throw std::invalid_argument("no original-course option");

    Decision d;
    d.policy = policy;
    for (const auto& o : options) d.per_option_costs.emplace_back(o.option_id, o.utility_cost);

    if (policy == Policy::deontological) {
        d.chosen_option = original->option_id;
        d.rationale = "original course retained regardless of cost";
        return d;
    }

    const CollisionOption* best = original;
    for (const auto& o : options) {
        if (o.utility_cost < best->utility_cost - cost_tie_tolerance) best = &o;
    }
    d.chosen_option = best->option_id;
    d.rationale = best == original ? "original course has the lowest cost (or ties)"
                                   : "steering to the lowest-cost path";
    return d;
}

}  // namespace escs::ethics
