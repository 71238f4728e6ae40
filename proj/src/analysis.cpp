#include "opinion/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "opinion/errors.hpp"

namespace opinion {

std::string verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Consensus: return "consensus";
    case Verdict::NoConsensus: return "no_consensus";
    case Verdict::Undecided: return "undecided";
    }
    return "?";
}

ConvergenceReport detect_convergence(const Trajectory& traj, double eps_consensus,
                                     double eps_stall, int window) {
    if (traj.states.empty()) throw ValidationError("detect_convergence: empty trajectory");
    if (!(eps_consensus > 0.0) || !(eps_stall > 0.0) || window < 1) {
        throw ValidationError("detect_convergence: eps values must be > 0 and window >= 1");
    }
    ConvergenceReport report;
    report.final_gap = traj.final_gap();
    report.steps_used = traj.steps();
    report.envelope_min = traj.min_series.back();
    report.envelope_max = traj.max_series.back();

    if (report.final_gap <= eps_consensus) {
        report.verdict = Verdict::Consensus;
        report.value = (report.envelope_min + report.envelope_max) / 2.0;
        report.detail = "final gap within consensus tolerance";
        return report;
    }

    int last = traj.steps();
    int lookback = std::min(window, last);
    for (int k = 1; k <= lookback; ++k) {
        if (traj.states[last - k] == traj.states[last]) {
            report.verdict = Verdict::NoConsensus;
            report.detail = "exact state cycle of period " + std::to_string(k);
            return report;
        }
    }
    if (last >= window &&
        std::abs(traj.gap_series[last] - traj.gap_series[last - window]) < eps_stall) {
        report.verdict = Verdict::NoConsensus;
        report.stall_heuristic = true;
        report.detail = "gap stalled above consensus tolerance (heuristic)";
        return report;
    }
    report.verdict = Verdict::Undecided;
    report.detail = "budget exhausted before consensus or divergence evidence";
    return report;
}

std::string prediction_kind_name(PredictionKind k) {
    switch (k) {
    case PredictionKind::GuaranteedConsensus: return "guaranteed_consensus";
    case PredictionKind::ConditionalOnSources: return "conditional_on_sources";
    case PredictionKind::NoGuarantee: return "no_guarantee";
    }
    return "?";
}

namespace {

std::string edge_text(const Edge& e) {
    return "edge " + std::to_string(e.source) + "->" + std::to_string(e.target);
}

// Source components receive no external influence, so simulating one as a
// standalone subgraph reproduces its behaviour in the full graph.
SourceLimit simulate_source_component(const InfluenceGraph& g, const std::vector<int>& agents,
                                      const OpinionState& initial, int step_budget,
                                      double eps_source) {
    std::vector<int> local(g.agent_count(), -1);
    for (size_t k = 0; k < agents.size(); ++k) local[agents[k]] = static_cast<int>(k);
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
        if (local[e.source] != -1 && local[e.target] != -1) {
            edges.push_back({local[e.source], local[e.target], e.weight, e.bias});
        }
    }
    InfluenceGraph sub(static_cast<int>(agents.size()), std::move(edges));
    OpinionState state(agents.size());
    for (size_t k = 0; k < agents.size(); ++k) state[k] = initial[agents[k]];

    SourceLimit out;
    out.agents = agents;
    for (int t = 0; t < step_budget; ++t) {
        auto [lo, hi] = std::minmax_element(state.begin(), state.end());
        if (*hi - *lo <= eps_source) break;
        state = update(sub, state);
    }
    auto [lo, hi] = std::minmax_element(state.begin(), state.end());
    out.limit = (*lo + *hi) / 2.0;
    out.converged = (*hi - *lo) <= eps_source;
    return out;
}

} // namespace

PredictionReport predict_consensus(const InfluenceGraph& g,
                                   const std::optional<OpinionState>& initial,
                                   int step_budget, double eps_source) {
    PredictionReport report;
    bool hypotheses_hold = true;
    for (const Edge& e : g.edges()) {
        if (e.bias.kind() == BiasKind::PiecewiseLinear && !e.bias.certified_receptive()) {
            report.reasons.push_back(edge_text(e) +
                                     ": cannot certify piecewise bias as receptive-resistant");
            hypotheses_hold = false;
            continue;
        }
        if (!e.bias.certified_receptive()) {
            report.reasons.push_back(edge_text(e) + ": bias " + e.bias.name() +
                                     " is certified in region " +
                                     region_name(*e.bias.certified_region()) +
                                     ", not receptive-resistant");
            hypotheses_hold = false;
        } else if (!e.bias.analytically_continuous()) {
            report.reasons.push_back(edge_text(e) + ": bias " + e.bias.name() +
                                     " is not continuous");
            hypotheses_hold = false;
        }
    }
    if (!hypotheses_hold) {
        report.kind = PredictionKind::NoGuarantee;
        return report;
    }
    if (is_strongly_connected(g)) {
        report.kind = PredictionKind::GuaranteedConsensus;
        report.reasons.push_back(
            "strongly connected with continuous receptive-resistant biases on every edge");
        return report;
    }
    report.kind = PredictionKind::ConditionalOnSources;
    report.reasons.push_back(
        "not strongly connected: consensus holds iff all source components reach a common value");
    if (initial) {
        if (static_cast<int>(initial->size()) != g.agent_count()) {
            throw ValidationError("predict_consensus: initial state dimension mismatch");
        }
        ComponentPartition parts = strongly_connected_components(g);
        for (size_t c = 0; c < parts.components.size(); ++c) {
            if (!parts.source_flags[c]) continue;
            report.source_limits.push_back(simulate_source_component(
                g, parts.components[c], *initial, step_budget, eps_source));
        }
        bool agree = true;
        for (const SourceLimit& s : report.source_limits) {
            if (!s.converged || std::abs(s.limit - report.source_limits.front().limit) > eps_source) {
                agree = false;
            }
        }
        report.sources_agree = agree;
        std::ostringstream oss;
        oss << "empirical source limits " << (agree ? "agree" : "disagree") << " within "
            << eps_source;
        report.reasons.push_back(oss.str());
    }
    return report;
}

BoundsCheck check_update_bounds(const OpinionState& before, const OpinionState& after,
                                double slack) {
    if (before.size() != after.size()) {
        throw ValidationError("check_update_bounds: length mismatch");
    }
    auto [lo, hi] = std::minmax_element(before.begin(), before.end());
    BoundsCheck result{true, true};
    for (double v : after) {
        if (v < *lo - slack) result.lower_ok = false;
        if (v > *hi + slack) result.upper_ok = false;
    }
    return result;
}

std::string lemma_outcome_name(LemmaOutcome o) {
    switch (o) {
    case LemmaOutcome::Holds: return "holds";
    case LemmaOutcome::Fails: return "fails";
    case LemmaOutcome::PreconditionUnmet: return "precondition_unmet";
    }
    return "?";
}

namespace {

// Shared preconditions of the extreme-agent lemmas; nullopt when met.
std::optional<LemmaOutcome> lemma_preconditions(const InfluenceGraph& g,
                                                const OpinionState& beliefs, bool check_minimum) {
    if (static_cast<int>(beliefs.size()) != g.agent_count()) {
        throw ValidationError("lemma check: belief vector dimension mismatch");
    }
    for (const Edge& e : g.edges()) {
        if (!e.bias.certified_receptive()) return LemmaOutcome::PreconditionUnmet;
    }
    auto [lo, hi] = std::minmax_element(beliefs.begin(), beliefs.end());
    if (*lo == *hi) return LemmaOutcome::PreconditionUnmet;
    double extreme = check_minimum ? *lo : *hi;
    // Path from a non-extreme agent to an extreme one.
    for (int i = 0; i < g.agent_count(); ++i) {
        if (beliefs[i] == extreme) continue;
        for (int j = 0; j < g.agent_count(); ++j) {
            if (beliefs[j] == extreme && has_path(g, i, j)) return std::nullopt;
        }
    }
    return LemmaOutcome::PreconditionUnmet;
}

} // namespace

LemmaOutcome check_extreme_reduction(const InfluenceGraph& g, const OpinionState& beliefs,
                                     bool check_minimum) {
    if (auto unmet = lemma_preconditions(g, beliefs, check_minimum)) return *unmet;
    auto [lo, hi] = std::minmax_element(beliefs.begin(), beliefs.end());
    double extreme = check_minimum ? *lo : *hi;
    OpinionState next = update(g, beliefs);
    auto count_at = [&](const OpinionState& state) {
        int count = 0;
        for (double v : state) {
            if (check_minimum ? v <= extreme : v >= extreme) ++count;
        }
        return count;
    };
    return count_at(next) < count_at(beliefs) ? LemmaOutcome::Holds : LemmaOutcome::Fails;
}

LemmaOutcome check_max_decrease_horizon(const InfluenceGraph& g, const OpinionState& beliefs,
                                        bool check_minimum) {
    if (auto unmet = lemma_preconditions(g, beliefs, check_minimum)) return *unmet;
    auto [lo, hi] = std::minmax_element(beliefs.begin(), beliefs.end());
    double extreme = check_minimum ? *lo : *hi;
    OpinionState state = beliefs;
    for (int t = 0; t < g.agent_count() - 1; ++t) state = update(g, state);
    auto [nlo, nhi] = std::minmax_element(state.begin(), state.end());
    const double slack = 1e-12;
    bool holds = check_minimum ? *nlo > extreme + slack : *nhi < extreme - slack;
    return holds ? LemmaOutcome::Holds : LemmaOutcome::Fails;
}

} // namespace opinion
