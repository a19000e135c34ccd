#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "batchsched/model.hpp"

namespace bsched {

using Weight = std::int64_t;

/// A CompatGraph with one nonnegative weight per edge, stored parallel to base().edges().
class WeightedGraph {
public:
    /// Throws InputError on a size mismatch or a negative weight.
    WeightedGraph(CompatGraph base, std::vector<Weight> weights);
    WeightedGraph(CompatGraph base, const std::function<Weight(const Edge&)>& weight_of);

    const CompatGraph& base() const noexcept { return base_; }
    int vertex_count() const noexcept { return base_.vertex_count(); }
    std::span<const Weight> weights() const noexcept { return weights_; }
    Weight weight(std::size_t edge_index) const { return weights_[edge_index]; }
    /// Weight of edge {u, v}; throws InputError when absent.
    Weight weight(int u, int v) const;

private:
    CompatGraph base_;
    std::vector<Weight> weights_;
};

/// Vertex-disjoint edges, each with u < v, sorted.
struct Matching {
    std::vector<Edge> edges;

    std::size_t size() const noexcept { return edges.size(); }
    friend bool operator==(const Matching&, const Matching&) = default;
};

bool is_matching(const Matching& m, const CompatGraph& g);
Weight matching_weight(const Matching& m, const WeightedGraph& g);

/// Edmonds' blossom algorithm, O(n^3).
Matching max_cardinality_matching(const CompatGraph& g);

/// Primal-dual weighted blossom algorithm, O(n^3). Maximises total weight
/// without regard to cardinality.
Matching max_weighted_matching(const WeightedGraph& g);

enum class MatchObjective { Cardinality, Weight };

inline constexpr int kBruteForceMatchingLimit = 16;

/// Exhaustive search over every matching. Throws OracleLimit above 16 vertices.
/// Among equal optima the lexicographically smallest sorted edge list wins.
Matching brute_force_matching(const WeightedGraph& g, MatchObjective objective);

}  // namespace bsched
