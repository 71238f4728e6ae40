#include "opinion/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "opinion/errors.hpp"

namespace opinion {

using nlohmann::json;

namespace {

[[noreturn]] void reject(std::vector<std::string> issues) {
    std::string summary = "scenario rejected with " + std::to_string(issues.size()) +
                          " issue(s):";
    for (const auto& issue : issues) summary += "\n  - " + issue;
    throw ScenarioError(summary, std::move(issues));
}

BiasSpec parse_bias(const json& node, const std::string& path,
                    std::vector<std::string>& issues) {
    if (!node.is_object() || !node.contains("kind") || !node["kind"].is_string()) {
        issues.push_back(path + ": bias must be an object with a string \"kind\"");
        return BiasSpec::degroot();
    }
    const std::string kind_name = node["kind"];
    auto kind = bias_kind_from_name(kind_name);
    if (!kind) {
        issues.push_back(path + ".kind: unknown bias kind \"" + kind_name + "\"");
        return BiasSpec::degroot();
    }
    std::map<std::string, double> params;
    if (node.contains("params")) {
        if (!node["params"].is_object()) {
            issues.push_back(path + ".params: must be an object of numbers");
        } else {
            for (auto& [key, value] : node["params"].items()) {
                if (!value.is_number()) {
                    issues.push_back(path + ".params." + key + ": must be a number");
                } else {
                    params[key] = value.get<double>();
                }
            }
        }
    }
    auto reject_params = [&](const std::set<std::string>& allowed) {
        for (const auto& [key, _] : params) {
            if (!allowed.count(key)) {
                issues.push_back(path + ".params." + key + ": unknown parameter for bias \"" +
                                 kind_name + "\"");
            }
        }
    };
    try {
        switch (*kind) {
        case BiasKind::Conf: {
            reject_params({"delta"});
            double delta = params.count("delta") ? params["delta"] : 1e-4;
            return BiasSpec::conf(delta);
        }
        case BiasKind::PiecewiseLinear: {
            reject_params({});
            if (!node.contains("points") || !node["points"].is_array()) {
                issues.push_back(path + ".points: piecewise_linear requires an array of [x,y] pairs");
                return BiasSpec::degroot();
            }
            std::vector<std::pair<double, double>> points;
            for (const auto& p : node["points"]) {
                if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
                    issues.push_back(path + ".points: each entry must be a [x,y] number pair");
                    return BiasSpec::degroot();
                }
                points.emplace_back(p[0].get<double>(), p[1].get<double>());
            }
            return BiasSpec::piecewise_linear(std::move(points));
        }
        default:
            reject_params({});
            switch (*kind) {
            case BiasKind::Degroot: return BiasSpec::degroot();
            case BiasKind::Backf: return BiasSpec::backf();
            case BiasKind::Fan: return BiasSpec::fan();
            case BiasKind::Ins: return BiasSpec::ins();
            case BiasKind::ExpSlow: return BiasSpec::exp_slow();
            case BiasKind::StepDiscontinuous: return BiasSpec::step_discontinuous();
            case BiasKind::ArctanMalleable: return BiasSpec::arctan_malleable();
            default: break;
            }
        }
    } catch (const ValidationError& e) {
        issues.push_back(path + ": " + e.what());
    }
    return BiasSpec::degroot();
}

} // namespace

ScenarioConfig parse_scenario(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        reject({std::string("syntax error: ") + e.what()});
    }
    std::vector<std::string> issues;
    if (!doc.is_object()) reject({"document root must be an object"});

    ScenarioConfig config;
    config.name = doc.value("name", std::string("scenario"));

    if (!doc.contains("agents") || !doc["agents"].is_number_integer() ||
        doc["agents"].get<int>() < 1) {
        issues.push_back("agents: required positive integer");
    } else {
        config.agents = doc["agents"].get<int>();
    }

    if (!doc.contains("edges") || !doc["edges"].is_array()) {
        issues.push_back("edges: required array");
    } else {
        std::set<std::pair<int, int>> seen;
        for (size_t k = 0; k < doc["edges"].size(); ++k) {
            const json& e = doc["edges"][k];
            std::string path = "edges[" + std::to_string(k) + "]";
            if (!e.is_object()) {
                issues.push_back(path + ": must be an object");
                continue;
            }
            Edge edge;
            bool ids_ok = true;
            for (const char* field : {"from", "to"}) {
                if (!e.contains(field) || !e[field].is_number_integer()) {
                    issues.push_back(path + "." + field + ": required integer agent id");
                    ids_ok = false;
                }
            }
            if (ids_ok) {
                int from = e["from"].get<int>();
                int to = e["to"].get<int>();
                if (config.agents > 0 && (from < 1 || from > config.agents)) {
                    issues.push_back(path + ".from: agent id " + std::to_string(from) +
                                     " out of range 1.." + std::to_string(config.agents));
                    ids_ok = false;
                }
                if (config.agents > 0 && (to < 1 || to > config.agents)) {
                    issues.push_back(path + ".to: agent id " + std::to_string(to) +
                                     " out of range 1.." + std::to_string(config.agents));
                    ids_ok = false;
                }
                if (ids_ok) {
                    edge.source = from - 1;
                    edge.target = to - 1;
                    if (!seen.insert({from, to}).second) {
                        issues.push_back(path + ": duplicate edge " + std::to_string(from) +
                                         "->" + std::to_string(to));
                    }
                }
            }
            if (!e.contains("weight") || !e["weight"].is_number()) {
                issues.push_back(path + ".weight: required number");
            } else {
                edge.weight = e["weight"].get<double>();
                if (!(edge.weight > 0.0 && edge.weight <= 1.0)) {
                    issues.push_back(path + ".weight: must be in (0,1], got " +
                                     std::to_string(edge.weight));
                }
            }
            if (!e.contains("bias")) {
                issues.push_back(path + ".bias: required");
            } else {
                edge.bias = parse_bias(e["bias"], path + ".bias", issues);
            }
            config.edges.push_back(std::move(edge));
        }
    }

    if (!doc.contains("initial_beliefs") || !doc["initial_beliefs"].is_array()) {
        issues.push_back("initial_beliefs: required array");
    } else {
        const json& beliefs = doc["initial_beliefs"];
        if (config.agents > 0 && static_cast<int>(beliefs.size()) != config.agents) {
            issues.push_back("initial_beliefs: expected " + std::to_string(config.agents) +
                             " entries, got " + std::to_string(beliefs.size()));
        }
        for (size_t k = 0; k < beliefs.size(); ++k) {
            std::string path = "initial_beliefs[" + std::to_string(k) + "]";
            if (!beliefs[k].is_number()) {
                issues.push_back(path + ": must be a number");
                continue;
            }
            double v = beliefs[k].get<double>();
            if (!(v >= 0.0 && v <= 1.0)) {
                issues.push_back(path + ": belief " + std::to_string(v) + " outside [0,1]");
            }
            config.initial_beliefs.push_back(v);
        }
    }

    if (doc.contains("steps")) {
        if (!doc["steps"].is_number_integer() || doc["steps"].get<long long>() < 0) {
            issues.push_back("steps: must be a non-negative integer");
        } else {
            config.steps = doc["steps"].get<int>();
        }
    }

    if (doc.contains("tolerances")) {
        const json& tol = doc["tolerances"];
        if (!tol.is_object()) {
            issues.push_back("tolerances: must be an object");
        } else {
            if (tol.contains("consensus")) {
                if (!tol["consensus"].is_number() || !(tol["consensus"].get<double>() > 0)) {
                    issues.push_back("tolerances.consensus: must be a positive number");
                } else {
                    config.tolerances.consensus = tol["consensus"].get<double>();
                }
            }
            if (tol.contains("stall")) {
                if (!tol["stall"].is_number() || !(tol["stall"].get<double>() > 0)) {
                    issues.push_back("tolerances.stall: must be a positive number");
                } else {
                    config.tolerances.stall = tol["stall"].get<double>();
                }
            }
            if (tol.contains("window")) {
                if (!tol["window"].is_number_integer() || tol["window"].get<int>() < 1) {
                    issues.push_back("tolerances.window: must be a positive integer");
                } else {
                    config.tolerances.window = tol["window"].get<int>();
                }
            }
        }
    }

    if (!issues.empty()) reject(std::move(issues));
    return config;
}

namespace {

json bias_to_json(const BiasSpec& bias) {
    json out;
    out["kind"] = bias.name();
    if (bias.kind() == BiasKind::Conf) {
        out["params"] = {{"delta", bias.delta()}};
    } else if (bias.kind() == BiasKind::PiecewiseLinear) {
        json pts = json::array();
        for (const auto& [x, y] : bias.points()) pts.push_back({x, y});
        out["points"] = std::move(pts);
    }
    return out;
}

} // namespace

std::string scenario_to_json(const ScenarioConfig& config) {
    json doc;
    doc["name"] = config.name;
    doc["agents"] = config.agents;
    doc["edges"] = json::array();
    for (const Edge& e : config.edges) {
        doc["edges"].push_back({{"from", e.source + 1},
                                {"to", e.target + 1},
                                {"weight", e.weight},
                                {"bias", bias_to_json(e.bias)}});
    }
    doc["initial_beliefs"] = config.initial_beliefs;
    doc["steps"] = config.steps;
    doc["tolerances"] = {{"consensus", config.tolerances.consensus},
                         {"stall", config.tolerances.stall},
                         {"window", config.tolerances.window}};
    return doc.dump(2);
}

namespace {

// Vaccine influence graph, 1-based labels as in the scenario format.
// Weight layout: the mutual pair 1-2, the two chains toward agent 6, the
// mutual pair 3-4, the strong feedback edge 6->1, and unit self-loops.
const std::vector<std::tuple<int, int, double>> kVaccineEdges = {
    {1, 2, 0.6}, {2, 1, 0.6}, {1, 3, 0.4}, {2, 4, 0.4}, {3, 4, 0.2},
    {4, 3, 0.2}, {3, 5, 0.6}, {4, 6, 0.4}, {5, 6, 0.6}, {6, 1, 1.0},
    {1, 1, 1.0}, {2, 2, 1.0}, {3, 3, 1.0}, {4, 4, 1.0}, {5, 5, 1.0}, {6, 6, 1.0},
};

// Overrides keyed by (from,to) in 1-based labels; everything else conf.
ScenarioConfig vaccine_scenario(const std::string& name,
                                const std::map<std::pair<int, int>, BiasSpec>& overrides) {
    ScenarioConfig config;
    config.name = name;
    config.agents = 6;
    config.initial_beliefs = {1.0, 0.9, 0.8, 0.2, 0.1, 0.0};
    config.steps = 10000;
    for (const auto& [from, to, w] : kVaccineEdges) {
        auto it = overrides.find({from, to});
        BiasSpec bias = it != overrides.end() ? it->second : BiasSpec::conf();
        config.edges.push_back({from - 1, to - 1, w, bias});
    }
    return config;
}

ScenarioConfig vaccine_uniform(const std::string& name, const BiasSpec& bias) {
    ScenarioConfig config = vaccine_scenario(name, {});
    for (Edge& e : config.edges) e.bias = bias;
    return config;
}

ScenarioConfig two_agent_scenario(const std::string& name, const BiasSpec& bias,
                                  OpinionState initial, int steps) {
    ScenarioConfig config;
    config.name = name;
    config.agents = 2;
    config.edges = {{0, 1, 1.0, bias}, {1, 0, 1.0, bias}};
    config.initial_beliefs = std::move(initial);
    config.steps = steps;
    return config;
}

} // namespace

std::vector<std::string> builtin_scenario_names() {
    return {"vaccine-fig3a", "vaccine-fig3b", "vaccine-fig3c", "vaccine-fig3d",
            "vaccine-fig3e", "vaccine-fig3f", "vaccine-fig3g",
            "two-agent-discontinuous", "two-agent-slow", "two-agent-arctan",
            "two-agent-fan", "two-agent-ins"};
}

ScenarioConfig builtin_scenario(const std::string& name) {
    // Overrides are keyed (from,to): the bias an agent applies toward an
    // influencer sits on the edge influencer->agent.
    if (name == "vaccine-fig3a") {
        return vaccine_scenario(name, {{{1, 2}, BiasSpec::fan()},
                                       {{6, 1}, BiasSpec::backf()},
                                       {{2, 4}, BiasSpec::degroot()},
                                       {{2, 1}, BiasSpec::degroot()}});
    }
    if (name == "vaccine-fig3b") {
        return vaccine_scenario(name, {{{1, 2}, BiasSpec::fan()},
                                       {{6, 1}, BiasSpec::backf()},
                                       {{3, 5}, BiasSpec::backf()},
                                       {{5, 6}, BiasSpec::degroot()},
                                       {{4, 6}, BiasSpec::degroot()}});
    }
    if (name == "vaccine-fig3c") {
        return vaccine_scenario(name, {{{3, 5}, BiasSpec::fan()},
                                       {{3, 4}, BiasSpec::backf()},
                                       {{5, 6}, BiasSpec::degroot()},
                                       {{6, 1}, BiasSpec::degroot()}});
    }
    if (name == "vaccine-fig3d") return vaccine_uniform(name, BiasSpec::degroot());
    if (name == "vaccine-fig3e") return vaccine_uniform(name, BiasSpec::fan());
    if (name == "vaccine-fig3f") return vaccine_uniform(name, BiasSpec::backf());
    if (name == "vaccine-fig3g") return vaccine_uniform(name, BiasSpec::conf());
    if (name == "two-agent-discontinuous") {
        return two_agent_scenario(name, BiasSpec::step_discontinuous(), {1.0, 0.0}, 10000);
    }
    if (name == "two-agent-slow") {
        return two_agent_scenario(name, BiasSpec::exp_slow(), {0.0, 1.0}, 1000000);
    }
    if (name == "two-agent-arctan") {
        return two_agent_scenario(name, BiasSpec::arctan_malleable(), {0.0, 0.001}, 1000);
    }
    if (name == "two-agent-fan") {
        return two_agent_scenario(name, BiasSpec::fan(), {0.0, 1.0}, 10000);
    }
    if (name == "two-agent-ins") {
        return two_agent_scenario(name, BiasSpec::ins(), {0.0, 1.0}, 10000);
    }
    throw ScenarioError("unknown built-in scenario \"" + name + "\"",
                        {"unknown built-in scenario \"" + name + "\""});
}

InfluenceGraph build_graph(const ScenarioConfig& config) {
    return InfluenceGraph(config.agents, config.edges);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    size_t n = traj.states.front().size();
    out << "t";
    for (size_t i = 1; i <= n; ++i) out << ",agent_" << i;
    out << "\n";
    char buf[32];
    for (size_t t = 0; t < traj.states.size(); ++t) {
        out << t;
        for (double v : traj.states[t]) {
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            out << ',' << buf;
        }
        out << "\n";
    }
}

std::string trajectory_to_csv(const Trajectory& traj) {
    std::ostringstream oss;
    write_trajectory_csv(oss, traj);
    return oss.str();
}

std::string format_convergence_report(const ConvergenceReport& report) {
    char buf[64];
    std::ostringstream oss;
    oss << "verdict: " << verdict_name(report.verdict);
    if (report.verdict == Verdict::Consensus) {
        std::snprintf(buf, sizeof(buf), "%.17g", report.value);
        oss << "(" << buf << ")";
    }
    oss << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", report.final_gap);
    oss << "final_gap: " << buf << "\n";
    oss << "steps_used: " << report.steps_used << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", report.envelope_min);
    oss << "envelope_min: " << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", report.envelope_max);
    oss << "envelope_max: " << buf << "\n";
    oss << "detail: " << report.detail;
    if (report.stall_heuristic) oss << " [heuristic]";
    oss << "\n";
    return oss.str();
}

std::string format_prediction_report(const PredictionReport& report) {
    std::ostringstream oss;
    oss << "prediction: " << prediction_kind_name(report.kind) << "\n";
    for (const auto& reason : report.reasons) oss << "reason: " << reason << "\n";
    for (const auto& s : report.source_limits) {
        oss << "source_component:";
        for (int a : s.agents) oss << ' ' << a + 1;
        oss << " limit=" << s.limit << (s.converged ? "" : " (not converged)") << "\n";
    }
    if (report.sources_agree) {
        oss << "sources_agree: " << (*report.sources_agree ? "yes" : "no") << "\n";
    }
    return oss.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

} // namespace opinion
