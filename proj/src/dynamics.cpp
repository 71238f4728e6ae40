#include "opinion/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "opinion/errors.hpp"

namespace opinion {

double clamp01(double r) {
    if (!std::isfinite(r)) throw NumericError("clamp01: non-finite value");
    return std::min(std::max(r, 0.0), 1.0);
}

namespace {

void check_dimension(const InfluenceGraph& g, const OpinionState& beliefs) {
    if (static_cast<int>(beliefs.size()) != g.agent_count()) {
        throw ValidationError("update: belief vector has " + std::to_string(beliefs.size()) +
                              " entries for " + std::to_string(g.agent_count()) + " agents");
    }
}

double accumulate_agent(const InfluenceGraph& g, const OpinionState& beliefs, int i) {
    // Full-sum accumulation in ascending influencer order; the clamp (when
    // applied) acts on the whole expression, never per term.
    double acc = beliefs[i];
    double total = g.total_in_weight(i);
    for (const auto& ie : g.in_edges(i)) {
        acc += (ie.weight / total) * ie.bias(beliefs[ie.source] - beliefs[i]);
    }
    if (!std::isfinite(acc)) {
        throw NumericError("update: non-finite value for agent " + std::to_string(i));
    }
    return acc;
}

} // namespace

OpinionState update(const InfluenceGraph& g, const OpinionState& beliefs) {
    check_dimension(g, beliefs);
    OpinionState next(beliefs.size());
    for (int i = 0; i < g.agent_count(); ++i) {
        next[i] = clamp01(accumulate_agent(g, beliefs, i));
    }
    return next;
}

std::vector<double> update_unclamped(const InfluenceGraph& g, const OpinionState& beliefs) {
    check_dimension(g, beliefs);
    std::vector<double> next(beliefs.size());
    for (int i = 0; i < g.agent_count(); ++i) {
        next[i] = accumulate_agent(g, beliefs, i);
    }
    return next;
}

Trajectory simulate(const InfluenceGraph& g, OpinionState initial, int steps) {
    check_dimension(g, initial);
    if (steps < 0) throw ValidationError("simulate: steps must be >= 0");
    for (size_t i = 0; i < initial.size(); ++i) {
        if (!(initial[i] >= 0.0 && initial[i] <= 1.0)) {
            throw ValidationError("simulate: belief " + std::to_string(i) + " outside [0,1]");
        }
    }
    Trajectory traj;
    traj.states.reserve(steps + 1);
    traj.states.push_back(std::move(initial));
    for (int t = 0; t < steps; ++t) {
        traj.states.push_back(update(g, traj.states.back()));
    }
    traj.min_series.reserve(traj.states.size());
    traj.max_series.reserve(traj.states.size());
    traj.gap_series.reserve(traj.states.size());
    for (const OpinionState& s : traj.states) {
        auto [lo, hi] = std::minmax_element(s.begin(), s.end());
        traj.min_series.push_back(*lo);
        traj.max_series.push_back(*hi);
        traj.gap_series.push_back(*hi - *lo);
    }
    return traj;
}

} // namespace opinion
