#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opinion/dynamics.hpp"
#include "opinion/graph.hpp"

namespace opinion {

enum class Verdict { Consensus, NoConsensus, Undecided };

std::string verdict_name(Verdict v);

struct ConvergenceReport {
    Verdict verdict = Verdict::Undecided;
    double value = 0.0; // midpoint of the final envelope, for Consensus
    double final_gap = 0.0;
    int steps_used = 0;
    double envelope_min = 0.0;
    double envelope_max = 0.0;
    // A no-consensus verdict from a stalled gap is a heuristic call; a
    // theorem only guarantees limits, not rates.
    bool stall_heuristic = false;
    std::string detail;
};

// Bounded-horizon convergence detection over a finished trajectory.
// Consensus when the final gap is within eps_consensus; no-consensus on an
// exact state cycle within the trailing window or when the gap has stalled
// (changed by less than eps_stall over the window) while staying above
// eps_consensus; undecided otherwise.
ConvergenceReport detect_convergence(const Trajectory& traj, double eps_consensus = 1e-6,
                                     double eps_stall = 1e-12, int window = 100);

enum class PredictionKind { GuaranteedConsensus, ConditionalOnSources, NoGuarantee };

std::string prediction_kind_name(PredictionKind k);

struct SourceLimit {
    std::vector<int> agents;
    double limit = 0.0;
    bool converged = false;
};

struct PredictionReport {
    PredictionKind kind = PredictionKind::NoGuarantee;
    std::vector<std::string> reasons;
    // Filled for the conditional verdict when an initial state is supplied:
    // each source component simulated as a standalone subgraph.
    std::vector<SourceLimit> source_limits;
    std::optional<bool> sources_agree;
};

// Theorem-based consensus prediction from bias certificates and graph
// connectivity. With continuous receptive-resistant biases everywhere:
// strongly connected graphs are guaranteed to reach consensus; otherwise
// consensus holds iff all source components reach a common limit, which is
// checked empirically when an initial state is given.
PredictionReport predict_consensus(const InfluenceGraph& g,
                                   const std::optional<OpinionState>& initial = std::nullopt,
                                   int step_budget = 100000, double eps_source = 1e-4);

// min(B) <= B'_i <= max(B), checked per bound with float slack.
struct BoundsCheck {
    bool lower_ok = false;
    bool upper_ok = false;
    bool ok() const { return lower_ok && upper_ok; }
};

BoundsCheck check_update_bounds(const OpinionState& before, const OpinionState& after,
                                double slack = 1e-12);

enum class LemmaOutcome { Holds, Fails, PreconditionUnmet };

std::string lemma_outcome_name(LemmaOutcome o);

// Extreme-agents reduction: one synchronous step strictly shrinks the set
// of agents at the maximum (minimum when check_minimum), provided all edge
// biases are certified receptive-resistant, the state is not consensus,
// and some sub-extreme agent has a path to an extreme one.
LemmaOutcome check_extreme_reduction(const InfluenceGraph& g, const OpinionState& beliefs,
                                     bool check_minimum = false);

// After n-1 synchronous steps the maximum is strictly below the starting
// maximum (resp. the minimum strictly above). Same preconditions.
LemmaOutcome check_max_decrease_horizon(const InfluenceGraph& g, const OpinionState& beliefs,
                                        bool check_minimum = false);

} // namespace opinion
