#pragma once

#include <vector>

#include "opinion/graph.hpp"

namespace opinion {

using OpinionState = std::vector<double>;

// [r]_0^1 = min(max(r,0),1). Throws NumericError on non-finite input.
double clamp01(double r);

// One synchronous bias-update step: every agent reads the same state.
// B'_i = clamp01(B_i + sum over influencers j of pi(j,i) * bias(B_j - B_i));
// an agent with no influencers keeps its belief.
OpinionState update(const InfluenceGraph& g, const OpinionState& beliefs);

// Same sum without the final clamp. When every edge bias is in the
// receptive-resistant region this equals update() entrywise.
std::vector<double> update_unclamped(const InfluenceGraph& g, const OpinionState& beliefs);

struct Trajectory {
    std::vector<OpinionState> states;
    std::vector<double> min_series;
    std::vector<double> max_series;
    std::vector<double> gap_series;

    int steps() const { return static_cast<int>(states.size()) - 1; }
    const OpinionState& final_state() const { return states.back(); }
    double final_gap() const { return gap_series.back(); }
};

// states[0] = initial, states[t+1] = update(states[t]), for T steps.
Trajectory simulate(const InfluenceGraph& g, OpinionState initial, int steps);

} // namespace opinion
