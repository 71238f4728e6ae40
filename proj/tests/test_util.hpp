#pragma once

// Shared generators and brute-force oracles for the test suites. Everything
// here is independent of the library's graph algorithms so it can serve as
// a cross-check.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "opinion/bias.hpp"
#include "opinion/graph.hpp"

namespace testutil {

using opinion::BiasSpec;
using opinion::Edge;
using opinion::InfluenceGraph;

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Random piecewise-linear bias strictly inside the receptive-resistant
// region: passes through the origin and scales every breakpoint x by a
// factor in [0.1, 0.9].
inline BiasSpec random_receptive_piecewise(Rng& rng) {
    std::set<double> xs{-1.0, 0.0, 1.0};
    int extra = uniform_int(rng, 0, 4);
    for (int k = 0; k < extra; ++k) {
        double x = uniform(rng, -0.99, 0.99);
        if (x != 0.0) xs.insert(x);
    }
    std::vector<std::pair<double, double>> points;
    for (double x : xs) points.emplace_back(x, x == 0.0 ? 0.0 : x * uniform(rng, 0.1, 0.9));
    return BiasSpec::piecewise_linear(std::move(points));
}

// Random bias certified in the receptive-resistant region. fast_only
// excludes exp_slow, whose convergence is too slow for bounded-horizon
// consensus suites.
inline BiasSpec random_receptive_bias(Rng& rng, bool fast_only = false) {
    switch (uniform_int(rng, 0, fast_only ? 1 : 2)) {
    case 0: {
        double log_delta = uniform(rng, std::log(1e-4), std::log(100.0));
        return BiasSpec::conf(std::exp(log_delta));
    }
    case 1:
        return random_receptive_piecewise(rng);
    default:
        return BiasSpec::exp_slow();
    }
}

inline BiasSpec random_any_bias(Rng& rng) {
    switch (uniform_int(rng, 0, 7)) {
    case 0: return BiasSpec::degroot();
    case 1: return BiasSpec::conf(uniform(rng, 1e-4, 10.0));
    case 2: return BiasSpec::backf();
    case 3: return BiasSpec::fan();
    case 4: return BiasSpec::ins();
    case 5: return BiasSpec::exp_slow();
    case 6: return BiasSpec::step_discontinuous();
    default: return BiasSpec::arctan_malleable();
    }
}

inline std::vector<double> random_state(Rng& rng, int n) {
    std::vector<double> state(n);
    for (double& v : state) v = uniform(rng, 0.0, 1.0);
    return state;
}

// Random strongly connected graph: a permutation cycle through all agents,
// a self-loop per agent, plus random extra edges. Weights kept in [0.2, 1]
// so proportional influences stay well mixed. Without the self-loops a bare
// cycle is a near-rotation whose gap closes only at a 1/t rate, far too
// slow for bounded-horizon convergence suites.
inline InfluenceGraph random_strongly_connected(Rng& rng, int n, bool fast_only = false) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::set<std::pair<int, int>> seen;
    std::vector<Edge> edges;
    auto add = [&](int s, int t) {
        if (seen.insert({s, t}).second) {
            edges.push_back({s, t, uniform(rng, 0.2, 1.0), random_receptive_bias(rng, fast_only)});
        }
    };
    for (int k = 0; k < n; ++k) add(order[k], order[(k + 1) % n]);
    for (int k = 0; k < n; ++k) add(k, k);
    int extras = uniform_int(rng, 0, 2 * n);
    for (int k = 0; k < extras; ++k) add(uniform_int(rng, 0, n - 1), uniform_int(rng, 0, n - 1));
    return InfluenceGraph(n, std::move(edges));
}

// Arbitrary random digraph (weights valid, degroot biases) for SCC oracles.
inline InfluenceGraph random_graph(Rng& rng, int n) {
    std::set<std::pair<int, int>> seen;
    std::vector<Edge> edges;
    int count = uniform_int(rng, 0, n * n);
    for (int k = 0; k < count; ++k) {
        int s = uniform_int(rng, 0, n - 1);
        int t = uniform_int(rng, 0, n - 1);
        if (seen.insert({s, t}).second) {
            edges.push_back({s, t, uniform(rng, 0.1, 1.0), BiasSpec::degroot()});
        }
    }
    return InfluenceGraph(n, std::move(edges));
}

// Reachability-closure SCC partition, ordered by smallest member.
inline std::vector<std::vector<int>> brute_force_scc(const InfluenceGraph& g) {
    int n = g.agent_count();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) reach[i][i] = true;
    for (const Edge& e : g.edges()) reach[e.source][e.target] = true;
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;
            }
        }
    }
    std::vector<bool> assigned(n, false);
    std::vector<std::vector<int>> comps;
    for (int i = 0; i < n; ++i) {
        if (assigned[i]) continue;
        std::vector<int> comp;
        for (int j = 0; j < n; ++j) {
            if (reach[i][j] && reach[j][i]) {
                comp.push_back(j);
                assigned[j] = true;
            }
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

// The vaccine influence graph with one bias on every edge (1-based pairs
// match the scenario format; construction here is 0-based).
inline InfluenceGraph make_vaccine(const BiasSpec& bias) {
    std::vector<std::tuple<int, int, double>> raw = {
        {1, 2, 0.6}, {2, 1, 0.6}, {1, 3, 0.4}, {2, 4, 0.4}, {3, 4, 0.2},
        {4, 3, 0.2}, {3, 5, 0.6}, {4, 6, 0.4}, {5, 6, 0.6}, {6, 1, 1.0},
        {1, 1, 1.0}, {2, 2, 1.0}, {3, 3, 1.0}, {4, 4, 1.0}, {5, 5, 1.0}, {6, 6, 1.0},
    };
    std::vector<Edge> edges;
    for (auto& [s, t, w] : raw) edges.push_back({s - 1, t - 1, w, bias});
    return InfluenceGraph(6, std::move(edges));
}

inline std::vector<double> vaccine_initial() { return {1.0, 0.9, 0.8, 0.2, 0.1, 0.0}; }

inline InfluenceGraph make_two_agent(const BiasSpec& bias) {
    return InfluenceGraph(2, {{0, 1, 1.0, bias}, {1, 0, 1.0, bias}});
}

} // namespace testutil
