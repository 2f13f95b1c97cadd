// escs: collision-outcome prediction and ethical path selection.
//
//   escs run  --config <path> [--policy utilitarian|deontological|both]
//             [--out <dir>] [--emit csv|plots|all]
//   escs case --v0 <m/s> --occupants <n> --pedestrians <n> [--config <path>]
//
// Exit codes: 0 success, 1 validation error, 2 I/O error.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "escs/scenario.hpp"

namespace {

int run_sweep(const std::string& config_path, const std::string& policy,
              const std::string& out_dir, const std::string& emit) {
    escs::scenario::ScenarioConfig cfg = config_path.empty()
                                             ? escs::scenario::ScenarioConfig{}
                                             : escs::scenario::load_config(config_path);
    if (policy == "utilitarian") cfg.policy = escs::scenario::PolicyMode::utilitarian;
    else if (policy == "deontological") cfg.policy = escs::scenario::PolicyMode::deontological;
    else if (policy == "both") cfg.policy = escs::scenario::PolicyMode::both;
    else if (!policy.empty()) throw escs::scenario::ConfigError("invalid --policy: " + policy);

    escs::scenario::EmitMode mode = escs::scenario::EmitMode::all;
    if (emit == "csv") mode = escs::scenario::EmitMode::csv;
    else if (emit == "plots") mode = escs::scenario::EmitMode::plots;
    else if (emit == "all" || emit.empty()) mode = escs::scenario::EmitMode::all;
    else throw escs::scenario::ConfigError("invalid --emit: " + emit);

    const auto report = escs::scenario::sweep(cfg);
    const auto files = escs::scenario::emit_report(report, out_dir, mode);
    for (const auto& f : files) std::cout << "wrote " << f << '\n';

    for (const auto& s : report.summaries) {
        if (cfg.policy != escs::scenario::PolicyMode::deontological)
            std::cout << "occupants " << s.occupants << " utilitarian sum "
                      << escs::csv::format_sig6(s.utilitarian_sum) << '\n';
        if (cfg.policy != escs::scenario::PolicyMode::utilitarian)
            std::cout << "occupants " << s.occupants << " deontological sum "
                      << escs::csv::format_sig6(s.deontological_sum) << '\n';
    }
    return 0;
}

int run_case(const std::string& config_path, double v0, int occupants,
             int pedestrians) {
    const escs::scenario::ScenarioConfig cfg =
        config_path.empty() ? escs::scenario::ScenarioConfig{}
                            : escs::scenario::load_config(config_path);
    const auto r = escs::scenario::run_case(cfg, v0, occupants, pedestrians);
    escs::scenario::write_decision_csv(std::cout, r);
    if (!r.note.empty()) std::cout << "# note: " << r.note << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ethical steering control system simulator"};
    app.require_subcommand(1);

    std::string config_path, policy, out_dir = "out", emit = "all";
    auto* run = app.add_subcommand("run", "sweep the configured scenario grid");
    run->add_option("--config", config_path, "flat key=value config file");
    run->add_option("--policy", policy, "utilitarian|deontological|both");
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--emit", emit, "csv|plots|all");

    double v0 = 0.0;
    int occupants = 0, pedestrians = 0;
    auto* one = app.add_subcommand("case", "single case to standard output");
    one->add_option("--config", config_path, "flat key=value config file");
    one->add_option("--v0", v0, "initial velocity [m/s]")->required();
    one->add_option("--occupants", occupants, "occupant count")->required();
    one->add_option("--pedestrians", pedestrians, "pedestrian count")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return run_sweep(config_path, policy, out_dir, emit);
        return run_case(config_path, v0, occupants, pedestrians);
    } catch (const escs::csv::IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
