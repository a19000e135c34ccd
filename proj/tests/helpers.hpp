#pragma once

#include <vector>

#include "batchsched/model.hpp"
#include "batchsched/rng.hpp"

namespace testing {

using bsched::BatchMode;
using bsched::CompatGraph;
using bsched::Duration;
using bsched::Instance;

// Triangle on jobs 1..3 with p = (3, 5, 7), s = 1.
inline Instance triangle(int m = 1, BatchMode mode = BatchMode::Max) {
    return Instance({3, 5, 7}, m, 1, mode, CompatGraph(3, {{0, 1}, {0, 2}, {1, 2}}));
}

inline CompatGraph path(int n) {
    std::vector<bsched::Edge> e;
    for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
    return CompatGraph(n, e);
}

inline CompatGraph cycle(int n) {
    std::vector<bsched::Edge> e;
    for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
    e.push_back({0, n - 1});
    return CompatGraph(n, e);
}

inline CompatGraph random_graph(int n, double prob, bsched::Rng& rng) {
    std::vector<bsched::Edge> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.unit() < prob) e.push_back({i, j});
    return CompatGraph(n, e);
}

inline Instance random_instance(bsched::Rng& rng, int n, int m, BatchMode mode, Duration p_max = 20) {
    std::vector<Duration> p(static_cast<std::size_t>(n));
    for (auto& x : p) x = rng.between(1, p_max);
    return Instance(p, m, rng.between(0, 5), mode, random_graph(n, rng.unit(), rng));
}

}  // namespace testing
