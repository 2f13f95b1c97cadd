#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "escs/crash.hpp"
#include "escs/csv.hpp"
#include "escs/dynamics.hpp"
#include "escs/ethics.hpp"
#include "escs/io.hpp"
#include "escs/reference_data.hpp"
#include "escs/severity.hpp"

// End-to-end pipeline: braking -> crash deformation -> fuzzy severity ->
// utility cost -> policy decision, swept over velocities x occupants x
// pedestrians, with deterministic CSV reporting.

namespace escs::scenario {

class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class PolicyMode { utilitarian, deontological, both };

inline std::string_view to_string(PolicyMode m) {
    switch (m) {
        case PolicyMode::utilitarian: return "utilitarian";
        case PolicyMode::deontological: return "deontological";
        default: return "both";
    }
}

struct ScenarioConfig {
    std::vector<double> initial_velocities{12.0, 16.0, 20.0};
    std::vector<int> occupant_counts{0, 1, 2};
    std::vector<int> pedestrian_counts{0, 1, 2, 3, 4};

    double base_mass = 1247.0;     // [kg]
    double occupant_mass = 80.0;   // [kg]

    double target_distance = 10.0;  // [m], shared default for both options
    std::optional<double> barrier_distance;     // per-option override
    std::optional<double> pedestrian_distance;  // per-option override
    double steering_gamma = 0.15;   // [rad]
    double dt = dynamics::default_dt;

    dynamics::VehicleParams vehicle{};  // mass replaced per case

    double stiffness = crash::yaris_stiffness;
    double failure_point = crash::yaris_failure_point;

    double deformation_lower = 0.2681, deformation_upper = 0.8874;
    double velocity_lower = 6.7056, velocity_upper = 24.5872;

    PolicyMode policy = PolicyMode::both;
    ethics::TargetKind original_course = ethics::TargetKind::rigid_barrier;

    double barrier_target_distance() const {
        return barrier_distance.value_or(target_distance);
    }
    double pedestrian_target_distance() const {
        return pedestrian_distance.value_or(target_distance);
    }

    double laden_mass(int occupants) const {
        return base_mass + occupant_mass * occupants;
    }

    void validate() const {
        if (initial_velocities.empty())
            throw ConfigError("scenario.initial_velocities must be nonempty");
        if (occupant_counts.empty())
            throw ConfigError("scenario.occupant_counts must be nonempty");
        if (pedestrian_counts.empty())
            throw ConfigError("scenario.pedestrian_counts must be nonempty");
        for (double v : initial_velocities)
            if (v <= 0.0 || v > vehicle.v_max)
                throw ConfigError("scenario.initial_velocities entries must be in (0, vehicle.v_max]");
        for (int n : occupant_counts)
            if (n < 0) throw ConfigError("scenario.occupant_counts entries must be >= 0");
        for (int n : pedestrian_counts)
            if (n < 0) throw ConfigError("scenario.pedestrian_counts entries must be >= 0");
        if (base_mass <= 0.0) throw ConfigError("vehicle.base_mass must be > 0");
        if (occupant_mass <= 0.0) throw ConfigError("vehicle.occupant_mass must be > 0");
        if (target_distance <= 0.0) throw ConfigError("dynamics.target_distance must be > 0");
        if (barrier_distance && *barrier_distance <= 0.0)
            throw ConfigError("dynamics.barrier_distance must be > 0");
        if (pedestrian_distance && *pedestrian_distance <= 0.0)
            throw ConfigError("dynamics.pedestrian_distance must be > 0");
        if (std::abs(steering_gamma) > dynamics::max_steering_angle)
            throw ConfigError("dynamics.steering_gamma exceeds the +/-10 degree limit");
        if (dt <= 0.0) throw ConfigError("dynamics.dt must be > 0");
        if (stiffness <= 0.0) throw ConfigError("crash.stiffness must be > 0");
        if (failure_point < 0.0) throw ConfigError("crash.failure_point must be >= 0");
        if (deformation_upper <= deformation_lower)
            throw ConfigError("severity.deformation_upper must exceed severity.deformation_lower");
        if (velocity_upper <= velocity_lower)
            throw ConfigError("severity.velocity_upper must exceed severity.velocity_lower");
        try {
            vehicle.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("vehicle.") + e.what());
        }
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw ConfigError("invalid numeric value for key " + key + ": " + value);
    }
    if (pos != value.size())
        throw ConfigError("invalid numeric value for key " + key + ": " + value);
    return v;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, sep)) parts.push_back(trim(part));
    return parts;
}

inline std::vector<double> parse_double_list(const std::string& key,
                                             const std::string& value) {
    std::vector<double> out;
    for (const auto& p : split(value, ','))
        if (!p.empty()) out.push_back(parse_double(key, p));
    if (out.empty()) throw ConfigError("empty list for key " + key);
    return out;
}

inline std::vector<int> parse_int_list(const std::string& key,
                                       const std::string& value) {
    std::vector<int> out;
    for (double v : parse_double_list(key, value)) {
        const int n = static_cast<int>(std::lround(v));
        if (std::abs(v - n) > 1e-9)
            throw ConfigError("expected integer list for key " + key);
        out.push_back(n);
    }
    return out;
}

}  // namespace detail

// Flat key-value config with dotted section keys. Unspecified keys keep the
// shipped defaults; unknown keys are rejected.
inline ScenarioConfig parse_config(std::istream& in, const std::string& origin) {
    ScenarioConfig cfg;
    using Handler = std::function<void(const std::string&, const std::string&)>;
    const std::map<std::string, Handler> handlers = {
        {"scenario.initial_velocities",
         [&](const std::string& k, const std::string& v) { cfg.initial_velocities = detail::parse_double_list(k, v); }},
        {"scenario.occupant_counts",
         [&](const std::string& k, const std::string& v) { cfg.occupant_counts = detail::parse_int_list(k, v); }},
        {"scenario.pedestrian_counts",
         [&](const std::string& k, const std::string& v) { cfg.pedestrian_counts = detail::parse_int_list(k, v); }},
        {"scenario.policy",
         [&](const std::string& k, const std::string& v) {
             if (v == "utilitarian") cfg.policy = PolicyMode::utilitarian;
             else if (v == "deontological") cfg.policy = PolicyMode::deontological;
             else if (v == "both") cfg.policy = PolicyMode::both;
             else throw ConfigError("invalid value for key " + k + ": " + v);
         }},
        {"scenario.original_course",
         [&](const std::string& k, const std::string& v) {
             if (v == "barrier") cfg.original_course = ethics::TargetKind::rigid_barrier;
             else if (v == "pedestrians") cfg.original_course = ethics::TargetKind::pedestrians;
             else throw ConfigError("invalid value for key " + k + ": " + v);
         }},
        {"vehicle.base_mass", [&](const std::string& k, const std::string& v) { cfg.base_mass = detail::parse_double(k, v); }},
        {"vehicle.occupant_mass", [&](const std::string& k, const std::string& v) { cfg.occupant_mass = detail::parse_double(k, v); }},
        {"vehicle.wheelbase", [&](const std::string& k, const std::string& v) { cfg.vehicle.wheelbase_L = detail::parse_double(k, v); }},
        {"vehicle.drag", [&](const std::string& k, const std::string& v) { cfg.vehicle.drag_c = detail::parse_double(k, v); }},
        {"vehicle.v_max", [&](const std::string& k, const std::string& v) { cfg.vehicle.v_max = detail::parse_double(k, v); }},
        {"vehicle.a_max", [&](const std::string& k, const std::string& v) { cfg.vehicle.a_max = detail::parse_double(k, v); }},
        {"vehicle.d_max", [&](const std::string& k, const std::string& v) { cfg.vehicle.d_max = detail::parse_double(k, v); }},
        {"vehicle.f_max", [&](const std::string& k, const std::string& v) { cfg.vehicle.f_max = detail::parse_double(k, v); }},
        {"vehicle.p_gain", [&](const std::string& k, const std::string& v) { cfg.vehicle.p_gain = detail::parse_double(k, v); }},
        {"dynamics.target_distance", [&](const std::string& k, const std::string& v) { cfg.target_distance = detail::parse_double(k, v); }},
        {"dynamics.barrier_distance", [&](const std::string& k, const std::string& v) { cfg.barrier_distance = detail::parse_double(k, v); }},
        {"dynamics.pedestrian_distance", [&](const std::string& k, const std::string& v) { cfg.pedestrian_distance = detail::parse_double(k, v); }},
        {"dynamics.steering_gamma", [&](const std::string& k, const std::string& v) { cfg.steering_gamma = detail::parse_double(k, v); }},
        {"dynamics.dt", [&](const std::string& k, const std::string& v) { cfg.dt = detail::parse_double(k, v); }},
        {"crash.stiffness", [&](const std::string& k, const std::string& v) { cfg.stiffness = detail::parse_double(k, v); }},
        {"crash.failure_point", [&](const std::string& k, const std::string& v) { cfg.failure_point = detail::parse_double(k, v); }},
        {"severity.deformation_lower", [&](const std::string& k, const std::string& v) { cfg.deformation_lower = detail::parse_double(k, v); }},
        {"severity.deformation_upper", [&](const std::string& k, const std::string& v) { cfg.deformation_upper = detail::parse_double(k, v); }},
        {"severity.velocity_lower", [&](const std::string& k, const std::string& v) { cfg.velocity_lower = detail::parse_double(k, v); }},
        {"severity.velocity_upper", [&](const std::string& k, const std::string& v) { cfg.velocity_upper = detail::parse_double(k, v); }},
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected key = value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        const auto it = handlers.find(key);
        if (it == handlers.end())
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": unknown key: " + key);
        it->second(key, value);
    }
    cfg.validate();
    return cfg;
}

inline ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw csv::IoError("cannot open config file: " + path);
    return parse_config(in, path);
}

struct CaseResult {
    double v0 = 0.0;
    int occupants = 0;
    int pedestrians = 0;
    double impact_velocity = 0.0;        // pedestrian impact velocity [m/s]
    double barrier_impact_velocity = 0.0;
    double peak_deformation = 0.0;       // [m]
    severity::MembershipResult deformation_membership;
    severity::MembershipResult velocity_membership;
    double cost_pedestrians = 0.0;
    double cost_occupants = 0.0;
    std::string utilitarian_choice;
    std::string deontological_choice;
    std::string note;
    std::vector<ethics::CollisionOption> options;
    dynamics::ImpactResult braking;      // profile toward the pedestrian target
};

inline constexpr double erratum_threshold = 0.01;  // 1% vs published values

// Published reference costs only apply at the operating point they were
// produced at: default distances, masses, vehicle, crash and universe
// constants.
inline bool at_reference_operating_point(const ScenarioConfig& config) {
    const ScenarioConfig defaults;
    return config.barrier_target_distance() == defaults.target_distance &&
           config.pedestrian_target_distance() == defaults.target_distance &&
           config.base_mass == defaults.base_mass &&
           config.occupant_mass == defaults.occupant_mass &&
           config.vehicle.wheelbase_L == defaults.vehicle.wheelbase_L &&
           config.vehicle.drag_c == defaults.vehicle.drag_c &&
           config.vehicle.v_max == defaults.vehicle.v_max &&
           config.vehicle.a_max == defaults.vehicle.a_max &&
           config.vehicle.d_max == defaults.vehicle.d_max &&
           config.vehicle.f_max == defaults.vehicle.f_max &&
           config.vehicle.p_gain == defaults.vehicle.p_gain &&
           config.stiffness == defaults.stiffness &&
           config.deformation_lower == defaults.deformation_lower &&
           config.deformation_upper == defaults.deformation_upper &&
           config.velocity_lower == defaults.velocity_lower &&
           config.velocity_upper == defaults.velocity_upper;
}

// One pipeline case: laden mass -> braking impact velocity -> crumple-zone
// peak deformation -> memberships on both universes -> utility costs ->
// both policy decisions.
inline CaseResult run_case(const ScenarioConfig& config, double v0,
                           int occupants, int pedestrians) {
    config.validate();
    if (occupants < 0) throw ConfigError("occupants must be >= 0");
    if (pedestrians < 0) throw ConfigError("pedestrians must be >= 0");

    CaseResult r;
    r.v0 = v0;
    r.occupants = occupants;
    r.pedestrians = pedestrians;

    dynamics::VehicleParams params = config.vehicle;
    params.mass = config.laden_mass(occupants);

    r.braking = dynamics::brake_to_target(
        params, v0, config.pedestrian_target_distance(), config.dt);
    r.impact_velocity = r.braking.impact_velocity;

    if (config.barrier_target_distance() == config.pedestrian_target_distance()) {
        r.barrier_impact_velocity = r.impact_velocity;
    } else {
        r.barrier_impact_velocity =
            dynamics::brake_to_target(params, v0, config.barrier_target_distance(),
                                      config.dt)
                .impact_velocity;
    }

    crash::CrashModel model;
    model.mass = params.mass;
    model.stiffness_k = config.stiffness;
    model.failure_point_fp = config.failure_point;
    r.peak_deformation = crash::lpm_peak_deformation(model, r.barrier_impact_velocity);

    const auto def_universe =
        severity::build_universe(config.deformation_lower, config.deformation_upper);
    const auto vel_universe =
        severity::build_universe(config.velocity_lower, config.velocity_upper);
    r.deformation_membership = severity::membership(def_universe, r.peak_deformation);
    r.velocity_membership = severity::membership(vel_universe, r.impact_velocity);
    // a stop short of a target means no collision on that path: zero cost
    r.cost_occupants = r.barrier_impact_velocity > 0.0
                           ? ethics::utility_cost(r.deformation_membership, occupants)
                           : 0.0;
    r.cost_pedestrians = r.impact_velocity > 0.0
                             ? ethics::utility_cost(r.velocity_membership, pedestrians)
                             : 0.0;
    if (r.braking.stopped_before_target) r.note = "stopped_before_target";

    ethics::CollisionOption barrier;
    barrier.option_id = "barrier";
    barrier.target_kind = ethics::TargetKind::rigid_barrier;
    barrier.is_original_course =
        config.original_course == ethics::TargetKind::rigid_barrier;
    barrier.people_count = occupants;
    barrier.feature_value = r.peak_deformation;
    barrier.membership = r.deformation_membership;
    barrier.utility_cost = r.cost_occupants;

    ethics::CollisionOption peds;
    peds.option_id = "pedestrians";
    peds.target_kind = ethics::TargetKind::pedestrians;
    peds.is_original_course =
        config.original_course == ethics::TargetKind::pedestrians;
    peds.people_count = pedestrians;
    peds.feature_value = r.impact_velocity;
    peds.membership = r.velocity_membership;
    peds.utility_cost = r.cost_pedestrians;

    r.options = {barrier, peds};
    r.utilitarian_choice =
        ethics::decide(r.options, ethics::Policy::utilitarian).chosen_option;
    r.deontological_choice =
        ethics::decide(r.options, ethics::Policy::deontological).chosen_option;

    // Annotate divergence from the published reference grid rather than
    // forcing agreement.
    if (const auto ref = at_reference_operating_point(config)
                             ? reference::find_published(occupants, v0, pedestrians)
                             : std::nullopt) {
        std::vector<std::string> notes;
        const auto diverges = [](double published, double computed) {
            if (published == 0.0) return computed != 0.0;
            return std::abs(computed - published) / std::abs(published) >
                   erratum_threshold;
        };
        if (diverges(ref->pedestrian_cost, r.cost_pedestrians))
            notes.push_back("paper_erratum:pedestrian_cost");
        if (diverges(ref->occupant_cost, r.cost_occupants))
            notes.push_back("paper_erratum:occupant_cost");
        for (const auto& n : notes) {
            if (!r.note.empty()) r.note += ';';
            r.note += n;
        }
    }
    return r;
}

struct ScenarioSummary {
    int occupants = 0;
    double utilitarian_sum = 0.0;
    double deontological_sum = 0.0;
    std::optional<double> published_utilitarian_sum;
    std::optional<double> published_deontological_sum;
};

struct ScenarioReport {
    std::vector<CaseResult> rows;  // sorted by velocity, occupants, pedestrians
    std::vector<ScenarioSummary> summaries;  // one per occupant count
};

inline double chosen_cost(const CaseResult& r, const std::string& choice) {
    return choice == "pedestrians" ? r.cost_pedestrians : r.cost_occupants;
}

// Full cross-product sweep. Rows are ordered by velocity, occupants,
// pedestrians; summaries aggregate the policy-chosen costs per occupant
// count, with published sums alongside when the whole grid is covered.
inline ScenarioReport sweep(const ScenarioConfig& config) {
    config.validate();

    auto velocities = config.initial_velocities;
    auto occupants = config.occupant_counts;
    auto pedestrians = config.pedestrian_counts;
    std::sort(velocities.begin(), velocities.end());
    std::sort(occupants.begin(), occupants.end());
    std::sort(pedestrians.begin(), pedestrians.end());

    ScenarioReport report;
    for (double v0 : velocities)
        for (int occ : occupants)
            for (int ped : pedestrians)
                report.rows.push_back(run_case(config, v0, occ, ped));

    for (int occ : occupants) {
        ScenarioSummary s;
        s.occupants = occ;
        bool all_published = at_reference_operating_point(config);
        double pub_util = 0.0, pub_deont = 0.0;
        for (const auto& r : report.rows) {
            if (r.occupants != occ) continue;
            s.utilitarian_sum += chosen_cost(r, r.utilitarian_choice);
            s.deontological_sum += chosen_cost(r, r.deontological_choice);
            if (!all_published) continue;
            const auto ref = reference::find_published(occ, r.v0, r.pedestrians);
            if (!ref) {
                all_published = false;
                continue;
            }
            pub_util += std::min(ref->pedestrian_cost, ref->occupant_cost);
            pub_deont += ref->occupant_cost;
        }
        if (all_published) {
            s.published_utilitarian_sum = pub_util;
            s.published_deontological_sum = pub_deont;
        }
        report.summaries.push_back(s);
    }
    return report;
}

enum class EmitMode { csv, plots, all };

inline void write_report_csv(std::ostream& out, const ScenarioReport& report) {
    out << "velocity,occupants,pedestrians,impact_velocity,peak_deformation,"
           "cost_pedestrians,cost_occupants,utilitarian_choice,"
           "deontological_choice,note\n";
    for (const auto& r : report.rows) {
        out << csv::format_sig6(r.v0) << ',' << r.occupants << ','
            << r.pedestrians << ',' << csv::format_sig6(r.impact_velocity) << ','
            << csv::format_sig6(r.peak_deformation) << ','
            << csv::format_sig6(r.cost_pedestrians) << ','
            << csv::format_sig6(r.cost_occupants) << ','
            << r.utilitarian_choice << ',' << r.deontological_choice << ','
            << r.note << '\n';
    }
}

inline void write_summary_csv(std::ostream& out, const ScenarioReport& report) {
    out << "occupants,policy,summed_chosen_cost,published_summed_cost\n";
    for (const auto& s : report.summaries) {
        out << s.occupants << ",utilitarian,"
            << csv::format_sig6(s.utilitarian_sum) << ','
            << (s.published_utilitarian_sum
                    ? csv::format_sig6(*s.published_utilitarian_sum)
                    : std::string())
            << '\n';
        out << s.occupants << ",deontological,"
            << csv::format_sig6(s.deontological_sum) << ','
            << (s.published_deontological_sum
                    ? csv::format_sig6(*s.published_deontological_sum)
                    : std::string())
            << '\n';
    }
}

// Per-option decision record: `policy,chosen,option_id,target,people,
// feature_value,cost`.
inline void write_decision_csv(std::ostream& out, const CaseResult& r) {
    out << "policy,chosen,option_id,target,people,feature_value,cost\n";
    for (const auto& [policy, choice] :
         {std::pair{ethics::Policy::utilitarian, r.utilitarian_choice},
          std::pair{ethics::Policy::deontological, r.deontological_choice}}) {
        for (const auto& o : r.options) {
            out << ethics::to_string(policy) << ',' << choice << ','
                << o.option_id << ',' << ethics::to_string(o.target_kind) << ','
                << o.people_count << ',' << csv::format_sig6(o.feature_value)
                << ',' << csv::format_sig6(o.utility_cost) << '\n';
        }
    }
}

// Writes report/summary CSVs and per-figure plot series under out_dir.
// Output is deterministic: byte-identical across runs of the same config.
inline std::vector<std::string> emit_report(const ScenarioReport& report,
                                            const std::string& out_dir,
                                            EmitMode mode = EmitMode::all) {
    if (report.rows.empty())
        throw ConfigError("cannot emit an empty report");

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw csv::IoError("cannot create output directory: " + out_dir);

    std::vector<std::string> written;
    const auto emit = [&](const std::string& name, const auto& writer) {
        const std::string path = out_dir + "/" + name;
        auto out = csv::open_for_write(path);
        writer(out);
        if (!out) throw csv::IoError("write failed: " + path);
        written.push_back(path);
    };

    if (mode == EmitMode::csv || mode == EmitMode::all) {
        emit("report.csv", [&](std::ostream& o) { write_report_csv(o, report); });
        emit("summary.csv", [&](std::ostream& o) { write_summary_csv(o, report); });
    }
    if (mode == EmitMode::plots || mode == EmitMode::all) {
        // cost vs pedestrian count, one series per (occupants, velocity)
        std::vector<std::pair<int, double>> emitted;
        for (const auto& first : report.rows) {
            const std::pair<int, double> key{first.occupants, first.v0};
            if (std::find(emitted.begin(), emitted.end(), key) != emitted.end())
                continue;
            emitted.push_back(key);
            const std::string name = "cost_vs_pedestrians_occ" +
                                     std::to_string(first.occupants) + "_v" +
                                     csv::format_sig6(first.v0) + ".csv";
            emit(name, [&](std::ostream& o) {
                o << "pedestrians,cost_pedestrians,cost_occupants\n";
                for (const auto& r : report.rows) {
                    if (r.occupants != first.occupants || r.v0 != first.v0)
                        continue;
                    o << r.pedestrians << ',' << csv::format_sig6(r.cost_pedestrians)
                      << ',' << csv::format_sig6(r.cost_occupants) << '\n';
                }
            });
            emit("braking_profile_occ" + std::to_string(first.occupants) + "_v" +
                     csv::format_sig6(first.v0) + ".csv",
                 [&](std::ostream& o) { io::write_braking_csv(o, first.braking); });
        }
    }
    return written;
}

}  // namespace escs::scenario
