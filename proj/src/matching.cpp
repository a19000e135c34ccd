#include <algorithm>
#include <string>

#include "batchsched/errors.hpp"
#include "batchsched/matching.hpp"

namespace bsched {

WeightedGraph::WeightedGraph(CompatGraph base, std::vector<Weight> weights)
    : base_(std::move(base)), weights_(std::move(weights)) {
    if (weights_.size() != base_.edge_count()) {
        throw InputError("weight count " + std::to_string(weights_.size()) + " does not match edge count " +
                         std::to_string(base_.edge_count()));
    }
    for (Weight w : weights_) {
        if (w < 0) throw InputError("negative edge weight");
    }
}

WeightedGraph::WeightedGraph(CompatGraph base, const std::function<Weight(const Edge&)>& weight_of)
    : WeightedGraph(base, [&] {
          std::vector<Weight> w;
          w.reserve(base.edge_count());
          for (const Edge& e : base.edges()) w.push_back(weight_of(e));
          return w;
      }()) {}

Weight WeightedGraph::weight(int u, int v) const {
    const Edge key{std::min(u, v), std::max(u, v)};
    const auto edges = base_.edges();
    const auto it = std::lower_bound(edges.begin(), edges.end(), key);
    if (it == edges.end() || *it != key) {
        throw InputError("no edge (" + std::to_string(u + 1) + "," + std::to_string(v + 1) + ")");
    }
    return weights_[static_cast<std::size_t>(it - edges.begin())];
}

bool is_matching(const Matching& m, const CompatGraph& g) {
    std::vector<char> used(static_cast<std::size_t>(g.vertex_count()), 0);
    for (const Edge& e : m.edges) {
        if (e.u >= e.v || !g.adjacent(e.u, e.v)) return false;
        for (int x : {e.u, e.v}) {
            if (used[static_cast<std::size_t>(x)]) return false;
            used[static_cast<std::size_t>(x)] = 1;
        }
    }
    return true;
}

Weight matching_weight(const Matching& m, const WeightedGraph& g) {
    Weight total = 0;
    for (const Edge& e : m.edges) total += g.weight(e.u, e.v);
    return total;
}

namespace {

struct BruteForce {
    const WeightedGraph& g;
    MatchObjective objective;
    std::vector<char> used;
    std::vector<Edge> current;
    std::vector<Edge> best;
    Weight current_value = 0;
    Weight best_value = -1;

    Weight value_of(int u, int v) const { return objective == MatchObjective::Weight ? g.weight(u, v) : 1; }

    void record() {
        // Edges are appended in increasing order of their lower endpoint, so
        // `current` is already sorted.
        if (current_value > best_value || (current_value == best_value && current < best)) {
            best_value = current_value;
            best = current;
        }
    }

    void search(int from) {
        const int n = g.vertex_count();
        while (from < n && used[static_cast<std::size_t>(from)]) ++from;
        if (from == n) {
            record();
            return;
        }
        used[static_cast<std::size_t>(from)] = 1;
        for (int v : g.base().neighbors(from)) {
            if (v < from || used[static_cast<std::size_t>(v)]) continue;
            used[static_cast<std::size_t>(v)] = 1;
            current.push_back({from, v});
            const Weight w = value_of(from, v);
            current_value += w;
            search(from + 1);
            current_value -= w;
            current.pop_back();
            used[static_cast<std::size_t>(v)] = 0;
        }
        search(from + 1);
        used[static_cast<std::size_t>(from)] = 0;
    }
};

}  // namespace

Matching brute_force_matching(const WeightedGraph& g, MatchObjective objective) {
    if (g.vertex_count() > kBruteForceMatchingLimit) {
        throw OracleLimit("brute-force matching is limited to " + std::to_string(kBruteForceMatchingLimit) +
                          " vertices, got " + std::to_string(g.vertex_count()));
    }
    BruteForce bf{g, objective, std::vector<char>(static_cast<std::size_t>(g.vertex_count()), 0), {}, {}};
    bf.search(0);
    return Matching{std::move(bf.best)};
}

}  // namespace bsched
