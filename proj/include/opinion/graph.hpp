#pragma once

#include <vector>

#include "opinion/bias.hpp"

namespace opinion {

// One directed influence edge: source influences target with the given
// strength, filtered through the target's bias toward the source.
struct Edge {
    int source = 0;
    int target = 0;
    double weight = 0.0;
    BiasSpec bias = BiasSpec::degroot();
};

// Weighted directed influence graph over agents 0..n-1. Stored edges have
// weight strictly in (0,1]; a zero weight is a non-edge by definition.
// Immutable after construction.
class InfluenceGraph {
public:
    struct InEdge {
        int source;
        double weight;
        BiasSpec bias;
    };

    InfluenceGraph(int agent_count, std::vector<Edge> edges);

    int agent_count() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }

    // In-edges of agent i, ascending by source id. Summation over
    // influencers always follows this order.
    const std::vector<InEdge>& in_edges(int i) const;
    double total_in_weight(int i) const;

    // The set A_i of agents with a direct influence over i.
    std::vector<int> influencers(int i) const;

    // Weight of edge (j,i), 0 when absent.
    double weight(int j, int i) const;

    // weight(j,i) normalized by the total incoming weight of i; 0 for a
    // non-edge (no division occurs when A_i is empty).
    double proportional_influence(int j, int i) const;

    void check_agent(int i) const;

private:
    int n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<InEdge>> in_;
    std::vector<double> in_weight_;
};

InfluenceGraph build_graph(int agent_count, std::vector<Edge> edges);

// SCC partition in deterministic order (by smallest contained agent id,
// members ascending). A component is a source iff no edge enters it from
// outside.
struct ComponentPartition {
    std::vector<std::vector<int>> components;
    std::vector<bool> source_flags;
};

ComponentPartition strongly_connected_components(const InfluenceGraph& g);

bool is_strongly_connected(const InfluenceGraph& g);

// Standard reachability; has_path(i,i) is true via the empty path.
bool has_path(const InfluenceGraph& g, int i, int j);

} // namespace opinion
