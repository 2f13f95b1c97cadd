#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "escs/crash.hpp"

using namespace escs;

namespace {

crash::CrashModel ncap_model() {
    crash::CrashModel m;
    m.mass = 1247.0;
    return m;
}

}  // namespace

TEST_CASE("lpm_peak_deformation reproduces the NCAP reference") {
    CHECK(crash::lpm_peak_deformation(ncap_model(), 15.6464) ==
          Catch::Approx(0.5842).margin(0.0005));
}

TEST_CASE("lpm_peak_deformation at the 20 m/s worked point") {
    crash::CrashModel m;
    m.mass = 1407.0;
    CHECK(crash::lpm_peak_deformation(m, 17.3205) ==
          Catch::Approx(0.687).margin(0.001));
}

TEST_CASE("lpm_peak_deformation is zero at zero velocity") {
    CHECK(crash::lpm_peak_deformation(ncap_model(), 0.0) == 0.0);
    CHECK_THROWS_AS(crash::lpm_peak_deformation(ncap_model(), -1.0),
                    std::invalid_argument);
}

TEST_CASE("lpm_simulate matches the reference duration and energy") {
    const auto out = crash::lpm_simulate(ncap_model(), 15.6464);
    CHECK(out.collision_duration == Catch::Approx(0.0590).margin(0.001));
    CHECK(out.collision_energy == Catch::Approx(152600.0).margin(300.0));
}

TEST_CASE("lpm_simulate duration equals the quarter period") {
    const auto m = ncap_model();
    const auto out = crash::lpm_simulate(m, 15.6464);
    const double quarter =
        std::numbers::pi / 2.0 * std::sqrt(m.mass / m.stiffness_k);
    CHECK(out.collision_duration == Catch::Approx(quarter).margin(1e-5));
}

TEST_CASE("lpm_simulate peak acceleration equals v * omega") {
    const auto m = ncap_model();
    const double v = 15.6464;
    const auto out = crash::lpm_simulate(m, v);
    const double expected = v * std::sqrt(m.stiffness_k / m.mass);
    CHECK(std::abs(out.peak_acceleration - expected) / expected < 1e-3);
}

TEST_CASE("simulated peak deformation matches the closed form") {
    const auto m = ncap_model();
    for (double v : {5.0, 12.0, 15.6464, 22.0}) {
        const auto out = crash::lpm_simulate(m, v, 1e-5);
        CHECK(std::abs(out.peak_deformation - crash::lpm_peak_deformation(m, v)) <
              1e-4);
    }
}

TEST_CASE("energy conservation: half m v^2 equals half k x_peak^2") {
    const auto m = ncap_model();
    for (double v : {3.0, 10.0, 15.6464, 25.0}) {
        const double x = crash::lpm_peak_deformation(m, v);
        const double spring = 0.5 * m.stiffness_k * x * x;
        const double kinetic = crash::kinetic_energy(m.mass, v);
        CHECK(std::abs(spring - kinetic) / kinetic < 1e-9);

        const auto sim = crash::lpm_simulate(m, v, 1e-5);
        CHECK(std::abs(sim.collision_energy - kinetic) / kinetic < 1e-4);
    }
}

TEST_CASE("failure-point flag adds the intercept rectangle to the energy") {
    auto m = ncap_model();
    const auto without = crash::lpm_simulate(m, 15.6464);
    m.include_failure_point_in_energy = true;
    const auto with = crash::lpm_simulate(m, 15.6464);
    CHECK(with.collision_energy - without.collision_energy ==
          Catch::Approx(m.failure_point_fp * with.peak_deformation));
}

TEST_CASE("peak deformation monotonicity in v, m and k") {
    crash::CrashModel m = ncap_model();
    const double base = crash::lpm_peak_deformation(m, 15.0);
    CHECK(crash::lpm_peak_deformation(m, 16.0) > base);
    m.mass = 1500.0;
    CHECK(crash::lpm_peak_deformation(m, 15.0) > base);
    m = ncap_model();
    m.stiffness_k *= 1.5;
    CHECK(crash::lpm_peak_deformation(m, 15.0) < base);
}

TEST_CASE("lls_fit recovers exact affine data") {
    std::vector<crash::ForceDeformationSample> samples;
    for (int i = 0; i <= 20; ++i) {
        const double d = 0.03 * i;
        samples.push_back({d, 1410.0 + 894300.0 * d});
    }
    const auto fit = crash::lls_fit(samples);
    CHECK(std::abs(fit.failure_point_fp - 1410.0) / 1410.0 < 1e-6);
    CHECK(std::abs(fit.stiffness_k - 894300.0) / 894300.0 < 1e-6);

    const double dmax = 0.6;
    const double expected_area = 1410.0 * dmax + 0.5 * 894300.0 * dmax * dmax;
    CHECK(fit.fitted_energy == Catch::Approx(expected_area).epsilon(1e-9));
}

TEST_CASE("lls_fit interpolates two points exactly") {
    const std::vector<crash::ForceDeformationSample> samples = {
        {0.0, 2000.0}, {1.0, 2000.0 + 750000.0}};
    const auto fit = crash::lls_fit(samples);
    CHECK(fit.failure_point_fp == Catch::Approx(2000.0));
    CHECK(fit.stiffness_k == Catch::Approx(750000.0));
}

TEST_CASE("lls_fit estimates converge on noisy data") {
    std::mt19937 rng(42);
    std::normal_distribution<double> noise(0.0, 500.0);
    const auto fit_with = [&](int n) {
        std::vector<crash::ForceDeformationSample> samples;
        for (int i = 0; i < n; ++i) {
            const double d = 0.6 * i / (n - 1);
            samples.push_back({d, 1410.0 + 894300.0 * d + noise(rng)});
        }
        return crash::lls_fit(samples);
    };
    const auto small = fit_with(20);
    const auto large = fit_with(20000);
    CHECK(std::abs(large.stiffness_k - 894300.0) <
          std::abs(small.stiffness_k - 894300.0));
    CHECK(std::abs(large.stiffness_k - 894300.0) / 894300.0 < 5e-3);
    CHECK(std::abs(large.failure_point_fp - 1410.0) < 50.0);
}

TEST_CASE("lls_fit residuals are orthogonal to the regressors") {
    std::mt19937 rng(7);
    std::normal_distribution<double> noise(0.0, 300.0);
    std::vector<crash::ForceDeformationSample> samples;
    for (int i = 0; i < 200; ++i) {
        const double d = 0.004 * i;
        samples.push_back({d, 1410.0 + 894300.0 * d + noise(rng)});
    }
    const auto fit = crash::lls_fit(samples);

    double dot_one = 0.0, dot_d = 0.0, scale = 0.0;
    for (const auto& s : samples) {
        const double resid =
            s.force - (fit.failure_point_fp + fit.stiffness_k * s.deformation);
        dot_one += resid;
        dot_d += resid * s.deformation;
        scale += std::abs(s.force);
    }
    CHECK(std::abs(dot_one) <= 1e-6 * scale);
    CHECK(std::abs(dot_d) <= 1e-6 * scale);
}

TEST_CASE("lls_fit rejects degenerate inputs") {
    CHECK_THROWS_AS(
        crash::lls_fit(std::vector<crash::ForceDeformationSample>{{0.1, 1.0}}),
        std::invalid_argument);
    const std::vector<crash::ForceDeformationSample> flat = {
        {0.2, 1000.0}, {0.2, 1100.0}, {0.2, 900.0}};
    CHECK_THROWS_AS(crash::lls_fit(flat), std::invalid_argument);
}

TEST_CASE("discrepancy per-unit magnitudes") {
    CHECK(crash::discrepancy(0.5625, 0.5842) == Catch::Approx(0.0386).margin(2e-4));
    CHECK(crash::discrepancy(149.1, 152.6) == Catch::Approx(0.0235).margin(2e-4));
    CHECK(crash::discrepancy(3.7, 3.7) == 0.0);
    CHECK_THROWS_AS(crash::discrepancy(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("kinetic_energy") {
    CHECK(crash::kinetic_energy(1247.0, 15.6464) ==
          Catch::Approx(152640.0).margin(20.0));
    CHECK(crash::kinetic_energy(900.0, 0.0) == 0.0);
    CHECK(crash::kinetic_energy(2.0 * 900.0, 7.0) ==
          Catch::Approx(2.0 * crash::kinetic_energy(900.0, 7.0)));
}
