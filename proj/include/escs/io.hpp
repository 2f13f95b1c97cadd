#pragma once

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "escs/crash.hpp"
#include "escs/csv.hpp"
#include "escs/dynamics.hpp"

// CSV ingest/export for trajectory and crash series.

namespace escs::io {

// Trajectory export: `t,x,y,theta,v`, full precision. The velocity column
// comes from the braking profile that drove the kinematic replay.
inline void write_trajectory_csv(std::ostream& out,
                                 const dynamics::SteeringResult& steering,
                                 const dynamics::ImpactResult& braking) {
    out << "t,x,y,theta,v\n";
    const std::size_t n =
        std::min(steering.series.size(), braking.series.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto& k = steering.series[i];
        out << csv::format_full(k.t) << ',' << csv::format_full(k.x) << ','
            << csv::format_full(k.y) << ',' << csv::format_full(k.heading_theta)
            << ',' << csv::format_full(braking.series[i].v) << '\n';
    }
}

// Braking profile export: `t,x,v`, full precision.
inline void write_braking_csv(std::ostream& out,
                              const dynamics::ImpactResult& braking) {
    out << "t,x,v\n";
    for (const auto& s : braking.series) {
        out << csv::format_full(s.t) << ',' << csv::format_full(s.x) << ','
            << csv::format_full(s.v) << '\n';
    }
}

// Crash series export: `t,deformation,acceleration`, full precision.
inline void write_crash_series_csv(std::ostream& out,
                                   const crash::CrashOutcome& outcome) {
    out << "t,deformation,acceleration\n";
    for (const auto& s : outcome.series) {
        out << csv::format_full(s.t) << ',' << csv::format_full(s.deformation)
            << ',' << csv::format_full(s.acceleration) << '\n';
    }
}

// Force-deformation ingest: header `deformation_m,force_N`.
inline std::vector<crash::ForceDeformationSample>
load_force_deformation_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw csv::IoError("cannot open for reading: " + path);

    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "deformation_m,force_N")
        throw std::invalid_argument(path +
                                    ": expected header deformation_m,force_N");

    std::vector<crash::ForceDeformationSample> samples;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream row(line);
        crash::ForceDeformationSample s;
        char comma = 0;
        if (!(row >> s.deformation >> comma >> s.force) || comma != ',')
            throw std::invalid_argument(path + ": bad row at line " +
                                        std::to_string(lineno));
        samples.push_back(s);
    }
    return samples;
}

}  // namespace escs::io
