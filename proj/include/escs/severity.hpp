#pragma once

#include <array>
#include <stdexcept>
#include <string_view>

// Fuzzy injury-severity universes: five equally spaced triangular sets E-A
// over a feature range, with degree-of-membership pairs to adjacent sets.

namespace escs::severity {

inline constexpr int set_count = 5;

// Set labels ordered from lowest to highest severity.
inline constexpr std::array<std::string_view, set_count> set_labels = {
    "E", "D", "C", "B", "A"};

struct FuzzyUniverse {
    double lower_bound = 0.0;
    double upper_bound = 0.0;
    std::array<double, set_count> centers{};  // E..A, equally spaced

    double center(int n) const {  // n is 1-based, 1 = E
        if (n < 1 || n > set_count) throw std::invalid_argument("set index out of range");
        return centers[static_cast<std::size_t>(n - 1)];
    }
};

struct MembershipResult {
    int lower_set_index = 1;   // 1..4
    int higher_set_index = 2;  // lower_set_index + 1
    double mu_lower = 0.0;
    double mu_higher = 0.0;    // always 1 - mu_lower
};

inline FuzzyUniverse build_universe(double lower, double upper) {
    if (upper <= lower)
        throw std::invalid_argument("universe upper bound must exceed lower bound");
    FuzzyUniverse u;
    u.lower_bound = lower;
    u.upper_bound = upper;
    const double spacing = (upper - lower) / (set_count - 1);
    for (int i = 0; i < set_count; ++i) u.centers[static_cast<std::size_t>(i)] = lower + i * spacing;
    u.centers[set_count - 1] = upper;
    return u;
}

// Shipped universe bounds (occupant peak deformation [m], pedestrian impact
// velocity [m/s]).
inline FuzzyUniverse deformation_universe() { return build_universe(0.2681, 0.8874); }
inline FuzzyUniverse pedestrian_velocity_universe() { return build_universe(6.7056, 24.5872); }

// Degree of membership to the adjacent center pair bracketing the value.
// Values outside the bounds extrapolate linearly on the outermost pair, so
// mu_lower + mu_higher = 1 holds for every input. A value exactly on an
// interior center n reports pair (n, n+1) with mu_lower = 1.
inline MembershipResult membership(const FuzzyUniverse& universe, double value) {
    int n = 1;
    for (int i = 2; i < set_count; ++i) {
        if (value >= universe.center(i)) n = i;
    }
    const double lo = universe.center(n);
    const double hi = universe.center(n + 1);

    MembershipResult m;
    m.lower_set_index = n;
    m.higher_set_index = n + 1;
    m.mu_lower = (hi - value) / (hi - lo);
    m.mu_higher = 1.0 - m.mu_lower;
    return m;
}

}  // namespace escs::severity
