#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "opinion/analysis.hpp"
#include "opinion/dynamics.hpp"
#include "opinion/graph.hpp"

namespace opinion {

struct Tolerances {
    double consensus = 1e-6;
    double stall = 1e-12;
    int window = 100;
};

// A complete run description. Edges are stored 0-based internally; the
// JSON document and every external artifact use the 1-based agent labels.
struct ScenarioConfig {
    std::string name;
    int agents = 0;
    std::vector<Edge> edges;
    OpinionState initial_beliefs;
    int steps = 10000;
    Tolerances tolerances;
};

// Parse and fully validate a scenario JSON document. All violations are
// collected and reported together with their field paths; a document is
// never partially accepted.
ScenarioConfig parse_scenario(const std::string& text);

std::string scenario_to_json(const ScenarioConfig& config);

std::vector<std::string> builtin_scenario_names();
// Throws ScenarioError for an unknown name.
ScenarioConfig builtin_scenario(const std::string& name);

InfluenceGraph build_graph(const ScenarioConfig& config);

// CSV layout: header "t,agent_1,...,agent_n", one row per time step,
// values printed with 17 significant digits so parsing recovers them
// exactly.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
std::string trajectory_to_csv(const Trajectory& traj);

std::string format_convergence_report(const ConvergenceReport& report);
std::string format_prediction_report(const PredictionReport& report);

// Write-temp-then-rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

} // namespace opinion
