#include "opinion/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "opinion/errors.hpp"

namespace opinion {

namespace {

std::string edge_label(const Edge& e) {
    return "(" + std::to_string(e.source) + "->" + std::to_string(e.target) + ")";
}

} // namespace

InfluenceGraph::InfluenceGraph(int agent_count, std::vector<Edge> edges)
    : n_(agent_count), edges_(std::move(edges)) {
    if (n_ <= 0) throw ValidationError("graph: agent count must be positive");
    std::set<std::pair<int, int>> seen;
    for (const Edge& e : edges_) {
        if (e.source < 0 || e.source >= n_ || e.target < 0 || e.target >= n_) {
            throw ValidationError("graph: agent id out of range on edge " + edge_label(e));
        }
        if (!(e.weight > 0.0 && e.weight <= 1.0)) {
            throw ValidationError("graph: weight must be in (0,1] on edge " + edge_label(e) +
                                  " (zero weight means no edge)");
        }
        if (!seen.insert({e.source, e.target}).second) {
            throw ValidationError("graph: duplicate edge " + edge_label(e));
        }
    }
    in_.resize(n_);
    in_weight_.assign(n_, 0.0);
    for (const Edge& e : edges_) {
        in_[e.target].push_back({e.source, e.weight, e.bias});
    }
    for (int i = 0; i < n_; ++i) {
        std::sort(in_[i].begin(), in_[i].end(),
                  [](const InEdge& a, const InEdge& b) { return a.source < b.source; });
        for (const InEdge& ie : in_[i]) in_weight_[i] += ie.weight;
    }
}

void InfluenceGraph::check_agent(int i) const {
    if (i < 0 || i >= n_) {
        throw ValidationError("graph: agent id " + std::to_string(i) + " out of range");
    }
}

const std::vector<InfluenceGraph::InEdge>& InfluenceGraph::in_edges(int i) const {
    check_agent(i);
    return in_[i];
}

double InfluenceGraph::total_in_weight(int i) const {
    check_agent(i);
    return in_weight_[i];
}

std::vector<int> InfluenceGraph::influencers(int i) const {
    check_agent(i);
    std::vector<int> out;
    out.reserve(in_[i].size());
    for (const InEdge& ie : in_[i]) out.push_back(ie.source);
    return out;
}

double InfluenceGraph::weight(int j, int i) const {
    check_agent(i);
    check_agent(j);
    for (const InEdge& ie : in_[i]) {
        if (ie.source == j) return ie.weight;
    }
    return 0.0;
}

double InfluenceGraph::proportional_influence(int j, int i) const {
    double w = weight(j, i);
    if (w == 0.0) return 0.0;
    return w / in_weight_[i];
}

InfluenceGraph build_graph(int agent_count, std::vector<Edge> edges) {
    return InfluenceGraph(agent_count, std::move(edges));
}

namespace {

// Iterative Tarjan over the out-adjacency lists.
std::vector<int> tarjan_component_ids(int n, const std::vector<std::vector<int>>& adj,
                                      int& component_count) {
    std::vector<int> index(n, -1), lowlink(n, 0), comp(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    int next_index = 0;
    component_count = 0;

    struct Frame {
        int v;
        size_t next_child;
    };
    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        std::vector<Frame> frames{{root, 0}};
        index[root] = lowlink[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.next_child < adj[f.v].size()) {
                int w = adj[f.v][f.next_child++];
                if (index[w] == -1) {
                    index[w] = lowlink[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    lowlink[f.v] = std::min(lowlink[f.v], index[w]);
                }
            } else {
                int v = f.v;
                if (lowlink[v] == index[v]) {
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp[w] = component_count;
                        if (w == v) break;
                    }
                    ++component_count;
                }
                frames.pop_back();
                if (!frames.empty()) {
                    lowlink[frames.back().v] = std::min(lowlink[frames.back().v], lowlink[v]);
                }
            }
        }
    }
    return comp;
}

std::vector<std::vector<int>> out_adjacency(const InfluenceGraph& g) {
    std::vector<std::vector<int>> adj(g.agent_count());
    for (const Edge& e : g.edges()) adj[e.source].push_back(e.target);
    return adj;
}

} // namespace

ComponentPartition strongly_connected_components(const InfluenceGraph& g) {
    int n = g.agent_count();
    auto adj = out_adjacency(g);
    int count = 0;
    std::vector<int> comp = tarjan_component_ids(n, adj, count);

    std::vector<std::vector<int>> members(count);
    for (int v = 0; v < n; ++v) members[comp[v]].push_back(v);
    for (auto& m : members) std::sort(m.begin(), m.end());
    std::sort(members.begin(), members.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });

    std::vector<int> remap(count);
    for (int k = 0; k < count; ++k) {
        remap[comp[members[k].front()]] = k;
    }
    std::vector<bool> source(count, true);
    for (const Edge& e : g.edges()) {
        int cu = remap[comp[e.source]];
        int cv = remap[comp[e.target]];
        if (cu != cv) source[cv] = false;
    }
    return {std::move(members), std::move(source)};
}

bool is_strongly_connected(const InfluenceGraph& g) {
    return strongly_connected_components(g).components.size() == 1;
}

bool has_path(const InfluenceGraph& g, int i, int j) {
    g.check_agent(i);
    g.check_agent(j);
    if (i == j) return true;
    auto adj = out_adjacency(g);
    std::vector<bool> visited(g.agent_count(), false);
    std::vector<int> queue{i};
    visited[i] = true;
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        for (int w : adj[v]) {
            if (w == j) return true;
            if (!visited[w]) {
                visited[w] = true;
                queue.push_back(w);
            }
        }
    }
    return false;
}

} // namespace opinion
