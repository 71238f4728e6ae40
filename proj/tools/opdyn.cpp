// opdyn: command-line front end for the opinion-dynamics engine.
//
// Exit codes: 0 success, 1 validation error, 2 numeric error,
// 3 undecided verdict under --strict.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "opinion/analysis.hpp"
#include "opinion/bias.hpp"
#include "opinion/errors.hpp"
#include "opinion/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitUndecided = 3;

opinion::ScenarioConfig load_scenario(const std::string& ref) {
    if (ref.rfind("builtin:", 0) == 0) {
        return opinion::builtin_scenario(ref.substr(8));
    }
    std::ifstream in(ref, std::ios::binary);
    if (!in) {
        throw opinion::ValidationError("cannot open scenario file: " + ref);
    }
    std::ostringstream oss;
    oss << in.rdbuf();
    return opinion::parse_scenario(oss.str());
}

opinion::BiasSpec bias_from_cli(const std::string& kind_name,
                                const std::vector<std::string>& params,
                                const std::string& points_arg) {
    std::map<std::string, double> kv;
    for (const std::string& p : params) {
        auto eq = p.find('=');
        if (eq == std::string::npos) {
            throw opinion::ValidationError("--param expects k=v, got: " + p);
        }
        kv[p.substr(0, eq)] = std::stod(p.substr(eq + 1));
    }
    auto kind = opinion::bias_kind_from_name(kind_name);
    if (!kind) throw opinion::ValidationError("unknown bias kind: " + kind_name);
    using opinion::BiasKind;
    using opinion::BiasSpec;
    switch (*kind) {
    case BiasKind::Degroot: return BiasSpec::degroot();
    case BiasKind::Conf:
        return BiasSpec::conf(kv.count("delta") ? kv["delta"] : 1e-4);
    case BiasKind::Backf: return BiasSpec::backf();
    case BiasKind::Fan: return BiasSpec::fan();
    case BiasKind::Ins: return BiasSpec::ins();
    case BiasKind::ExpSlow: return BiasSpec::exp_slow();
    case BiasKind::StepDiscontinuous: return BiasSpec::step_discontinuous();
    case BiasKind::ArctanMalleable: return BiasSpec::arctan_malleable();
    case BiasKind::PiecewiseLinear: {
        // --points "x:y,x:y,..."
        std::vector<std::pair<double, double>> pts;
        std::stringstream ss(points_arg);
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto colon = item.find(':');
            if (colon == std::string::npos) {
                throw opinion::ValidationError("--points expects x:y pairs, got: " + item);
            }
            pts.emplace_back(std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1)));
        }
        return BiasSpec::piecewise_linear(std::move(pts));
    }
    }
    throw opinion::ValidationError("unknown bias kind: " + kind_name);
}

int run_scenario(const opinion::ScenarioConfig& config, int steps_override,
                 const std::string& out_path, bool strict, bool write_files) {
    opinion::InfluenceGraph graph = opinion::build_graph(config);
    int steps = steps_override >= 0 ? steps_override : config.steps;
    opinion::Trajectory traj = opinion::simulate(graph, config.initial_beliefs, steps);
    opinion::ConvergenceReport report = opinion::detect_convergence(
        traj, config.tolerances.consensus, config.tolerances.stall, config.tolerances.window);

    if (write_files) {
        std::string csv_path = out_path.empty() ? config.name + ".csv" : out_path;
        opinion::write_file_atomic(csv_path, opinion::trajectory_to_csv(traj));
        std::string summary_path = csv_path;
        auto dot = summary_path.rfind(".csv");
        if (dot != std::string::npos && dot == summary_path.size() - 4) {
            summary_path.resize(dot);
        }
        summary_path += ".summary.txt";
        opinion::write_file_atomic(summary_path, opinion::format_convergence_report(report));
        std::cerr << "wrote " << csv_path << " and " << summary_path << "\n";
    }
    std::cout << opinion::format_convergence_report(report);
    if (strict && report.verdict == opinion::Verdict::Undecided) return kExitUndecided;
    return kExitOk;
}

std::string format_region_report(const opinion::RegionReport& report) {
    std::ostringstream oss;
    oss << "samples: " << report.samples << "\n";
    oss << "certified: " << (report.certified ? "yes" : "no") << "\n";
    for (opinion::Region r : opinion::kAllRegions) {
        int idx = static_cast<int>(r);
        oss << opinion::region_name(r) << ": "
            << opinion::coverage_name(report.coverage[idx]);
        if (report.coverage[idx] == opinion::Coverage::Some && report.witness[idx]) {
            oss << " (witness x=" << report.witness[idx]->first
                << " y=" << report.witness[idx]->second << ")";
        }
        oss << "\n";
    }
    return oss.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Opinion dynamics on influence graphs with per-edge cognitive biases"};
    app.require_subcommand(1);

    std::string scenario_ref, out_path, bias_kind, points_arg, reproduce_name;
    std::vector<std::string> bias_params;
    int steps_override = -1;
    int grid = 2001;
    bool strict = false;

    auto* run = app.add_subcommand("run", "Simulate a scenario; write trajectory CSV + summary");
    run->add_option("--scenario", scenario_ref, "Scenario file or builtin:NAME")->required();
    run->add_option("--steps", steps_override, "Override the scenario step budget");
    run->add_option("--out", out_path, "Trajectory CSV path (default <name>.csv)");
    run->add_flag("--strict", strict, "Exit 3 when the verdict is undecided");

    auto* classify = app.add_subcommand("classify", "Classify a bias against the four regions");
    classify->add_option("--bias", bias_kind, "Bias kind")->required();
    classify->add_option("--param", bias_params, "Bias parameter k=v (repeatable)");
    classify->add_option("--points", points_arg, "piecewise_linear breakpoints x:y,x:y,...");
    classify->add_option("--grid", grid, "Sample count (>= 3)");

    auto* predict = app.add_subcommand("predict", "Theorem-based consensus prediction");
    predict->add_option("--scenario", scenario_ref, "Scenario file or builtin:NAME")->required();

    auto* components = app.add_subcommand("components", "Strongly connected components and sources");
    components->add_option("--scenario", scenario_ref, "Scenario file or builtin:NAME")->required();

    auto* reproduce = app.add_subcommand("reproduce", "Run a built-in with its frozen settings");
    reproduce->add_option("name", reproduce_name, "Built-in scenario name")->required();
    reproduce->add_flag("--strict", strict, "Exit 3 when the verdict is undecided");

    app.add_subcommand("list", "List built-in scenario names");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return run_scenario(load_scenario(scenario_ref), steps_override, out_path, strict,
                                true);
        }
        if (classify->parsed()) {
            opinion::BiasSpec bias = bias_from_cli(bias_kind, bias_params, points_arg);
            std::cout << format_region_report(opinion::classify_bias(bias, grid));
            return kExitOk;
        }
        if (predict->parsed()) {
            opinion::ScenarioConfig config = load_scenario(scenario_ref);
            opinion::InfluenceGraph graph = opinion::build_graph(config);
            auto report = opinion::predict_consensus(graph, config.initial_beliefs);
            std::cout << opinion::format_prediction_report(report);
            return kExitOk;
        }
        if (components->parsed()) {
            opinion::ScenarioConfig config = load_scenario(scenario_ref);
            opinion::InfluenceGraph graph = opinion::build_graph(config);
            auto parts = opinion::strongly_connected_components(graph);
            for (size_t c = 0; c < parts.components.size(); ++c) {
                std::cout << "component " << c << ":";
                for (int a : parts.components[c]) std::cout << ' ' << a + 1;
                std::cout << (parts.source_flags[c] ? " [source]" : "") << "\n";
            }
            return kExitOk;
        }
        if (reproduce->parsed()) {
            opinion::ScenarioConfig config = opinion::builtin_scenario(reproduce_name);
            return run_scenario(config, -1, reproduce_name + ".csv", strict, true);
        }
        // list
        for (const std::string& name : opinion::builtin_scenario_names()) {
            std::cout << name << "\n";
        }
        return kExitOk;
    } catch (const opinion::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const opinion::ScenarioError& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitValidation;
    }
}
