// Edmonds' blossom algorithm for maximum cardinality matching in general graphs.
// Each phase grows an alternating BFS forest from one exposed vertex,
// contracting odd cycles by relabelling their vertices with a common base.

#include <algorithm>
#include <queue>

#include "batchsched/matching.hpp"

namespace bsched {
namespace {

class CardinalityMatcher {
public:
    explicit CardinalityMatcher(const CompatGraph& g)
        : g_(g),
          n_(static_cast<std::size_t>(g.vertex_count())),
          mate_(n_, -1),
          parent_(n_, -1),
          base_(n_),
          used_(n_, 0),
          blossom_(n_, 0) {}

    Matching run() {
        // Greedy warm start in scan order.
        for (std::size_t v = 0; v < n_; ++v) {
            if (mate_[v] != -1) continue;
            for (int w : g_.neighbors(static_cast<int>(v))) {
                if (mate_[static_cast<std::size_t>(w)] == -1) {
                    mate_[v] = w;
                    mate_[static_cast<std::size_t>(w)] = static_cast<int>(v);
                    break;
                }
            }
        }
        for (std::size_t v = 0; v < n_; ++v) {
            if (mate_[v] != -1) continue;
            const int end = find_path(static_cast<int>(v));
            augment(end);
        }
        Matching out;
        for (std::size_t v = 0; v < n_; ++v) {
            if (mate_[v] > static_cast<int>(v)) out.edges.push_back({static_cast<int>(v), mate_[v]});
        }
        return out;
    }

private:
    int lca(int a, int b) {
        std::vector<char> seen(n_, 0);
        for (;;) {
            a = base_[idx(a)];
            seen[idx(a)] = 1;
            if (mate_[idx(a)] == -1) break;
            a = parent_[idx(mate_[idx(a)])];
        }
        for (;;) {
            b = base_[idx(b)];
            if (seen[idx(b)]) return b;
            b = parent_[idx(mate_[idx(b)])];
        }
    }

    void mark_path(int v, int b, int child) {
        while (base_[idx(v)] != b) {
            blossom_[idx(base_[idx(v)])] = 1;
            blossom_[idx(base_[idx(mate_[idx(v)])])] = 1;
            parent_[idx(v)] = child;
            child = mate_[idx(v)];
            v = parent_[idx(mate_[idx(v)])];
        }
    }

    // Returns the exposed endpoint of an augmenting path from root, or -1.
    int find_path(int root) {
        std::fill(used_.begin(), used_.end(), 0);
        std::fill(parent_.begin(), parent_.end(), -1);
        for (std::size_t i = 0; i < n_; ++i) base_[i] = static_cast<int>(i);
        used_[idx(root)] = 1;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (int to : g_.neighbors(v)) {
                if (base_[idx(v)] == base_[idx(to)] || mate_[idx(v)] == to) continue;
                if (to == root || (mate_[idx(to)] != -1 && parent_[idx(mate_[idx(to)])] != -1)) {
                    const int cur = lca(v, to);
                    std::fill(blossom_.begin(), blossom_.end(), 0);
                    mark_path(v, cur, to);
                    mark_path(to, cur, v);
                    for (std::size_t i = 0; i < n_; ++i) {
                        if (blossom_[idx(base_[i])]) {
                            base_[i] = cur;
                            if (!used_[i]) {
                                used_[i] = 1;
                                q.push(static_cast<int>(i));
                            }
                        }
                    }
                } else if (parent_[idx(to)] == -1) {
                    parent_[idx(to)] = v;
                    if (mate_[idx(to)] == -1) return to;
                    used_[idx(mate_[idx(to)])] = 1;
                    q.push(mate_[idx(to)]);
                }
            }
        }
        return -1;
    }

    void augment(int v) {
        while (v != -1) {
            const int pv = parent_[idx(v)];
            const int ppv = mate_[idx(pv)];
            mate_[idx(v)] = pv;
            mate_[idx(pv)] = v;
            v = ppv;
        }
    }

    static std::size_t idx(int v) { return static_cast<std::size_t>(v); }

    const CompatGraph& g_;
    std::size_t n_;
    std::vector<int> mate_;
    std::vector<int> parent_;
    std::vector<int> base_;
    std::vector<char> used_;
    std::vector<char> blossom_;
};

}  // namespace

Matching max_cardinality_matching(const CompatGraph& g) { return CardinalityMatcher(g).run(); }

}  // namespace bsched
