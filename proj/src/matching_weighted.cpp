// Maximum weighted matching in general graphs: Edmonds' primal-dual blossom
// method with the O(n^3) bookkeeping of Galil ("Efficient algorithms for
// finding maximum matching in graphs", 1986). Each stage grows alternating
// trees from all exposed vertices until an augmenting path appears or a dual
// adjustment proves optimality.
//
// Edges are addressed by endpoint ids: endpoint 2k is edge k's first vertex,
// 2k+1 its second; p ^ 1 is the opposite end. Blossom ids n..2n-1 share
// arrays with vertex ids 0..n-1. Weights are doubled so every dual variable
// stays integral.

#include <algorithm>

#include "batchsched/errors.hpp"
#include "batchsched/matching.hpp"

namespace bsched {
namespace {

class WeightedMatcher {
public:
    explicit WeightedMatcher(const WeightedGraph& g) : n_(g.vertex_count()) {
        const auto edges = g.base().edges();
        nedge_ = static_cast<int>(edges.size());
        eu_.reserve(edges.size());
        ev_.reserve(edges.size());
        ew_.reserve(edges.size());
        Weight maxw = 0;
        for (std::size_t k = 0; k < edges.size(); ++k) {
            eu_.push_back(edges[k].u);
            ev_.push_back(edges[k].v);
            ew_.push_back(2 * g.weight(k));
            maxw = std::max(maxw, ew_.back());
        }
        endpoint_.resize(2 * edges.size());
        for (int p = 0; p < 2 * nedge_; ++p) endpoint_[at(p)] = (p % 2 == 0) ? eu_[at(p / 2)] : ev_[at(p / 2)];
        neighbend_.assign(at(n_), {});
        for (int k = 0; k < nedge_; ++k) {
            neighbend_[at(eu_[at(k)])].push_back(2 * k + 1);
            neighbend_[at(ev_[at(k)])].push_back(2 * k);
        }
        const auto n2 = at(2 * n_);
        mate_.assign(at(n_), -1);
        label_.assign(n2, 0);
        labelend_.assign(n2, -1);
        inblossom_.resize(at(n_));
        for (int v = 0; v < n_; ++v) inblossom_[at(v)] = v;
        blossomparent_.assign(n2, -1);
        blossomchilds_.assign(n2, {});
        blossombase_.assign(n2, -1);
        for (int v = 0; v < n_; ++v) blossombase_[at(v)] = v;
        blossomendps_.assign(n2, {});
        bestedge_.assign(n2, -1);
        blossombestedges_.assign(n2, {});
        has_bestedges_.assign(n2, 0);
        for (int b = 2 * n_ - 1; b >= n_; --b) unused_.push_back(b);
        std::reverse(unused_.begin(), unused_.end());
        dualvar_.assign(n2, 0);
        for (int v = 0; v < n_; ++v) dualvar_[at(v)] = maxw;
        allowedge_.assign(at(nedge_), 0);
    }

    Matching run() {
        for (int stage = 0; stage < n_; ++stage) {
            std::fill(label_.begin(), label_.end(), 0);
            std::fill(bestedge_.begin(), bestedge_.end(), -1);
            for (int b = n_; b < 2 * n_; ++b) {
                blossombestedges_[at(b)].clear();
                has_bestedges_[at(b)] = 0;
            }
            std::fill(allowedge_.begin(), allowedge_.end(), 0);
            queue_.clear();
            for (int v = 0; v < n_; ++v) {
                if (mate_[at(v)] == -1 && label_[at(inblossom_[at(v)])] == 0) assign_label(v, 1, -1);
            }
            bool augmented = false;
            for (;;) {
                while (!queue_.empty() && !augmented) {
                    const int v = queue_.back();
                    queue_.pop_back();
                    for (int p : neighbend_[at(v)]) {
                        const int k = p / 2;
                        const int w = endpoint_[at(p)];
                        if (inblossom_[at(v)] == inblossom_[at(w)]) continue;
                        Weight kslack = 0;
                        if (!allowedge_[at(k)]) {
                            kslack = slack(k);
                            if (kslack <= 0) allowedge_[at(k)] = 1;
                        }
                        if (allowedge_[at(k)]) {
                            if (label_[at(inblossom_[at(w)])] == 0) {
                                assign_label(w, 2, p ^ 1);
                            } else if (label_[at(inblossom_[at(w)])] == 1) {
                                const int base = scan_blossom(v, w);
                                if (base >= 0) {
                                    add_blossom(base, k);
                                } else {
                                    augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if (label_[at(w)] == 0) {
                                label_[at(w)] = 2;
                                labelend_[at(w)] = p ^ 1;
                            }
                        } else if (label_[at(inblossom_[at(w)])] == 1) {
                            const int b = inblossom_[at(v)];
                            if (bestedge_[at(b)] == -1 || kslack < slack(bestedge_[at(b)])) bestedge_[at(b)] = k;
                        } else if (label_[at(w)] == 0) {
                            if (bestedge_[at(w)] == -1 || kslack < slack(bestedge_[at(w)])) bestedge_[at(w)] = k;
                        }
                    }
                }
                if (augmented) break;

                // Dual adjustment. Type 1: a vertex dual reaches zero (optimum).
                // Type 2: an S-to-free edge becomes tight. Type 3: an S-to-S
                // edge becomes tight. Type 4: a T-blossom dual reaches zero.
                int deltatype = 1;
                Weight delta = dualvar_[0];
                for (int v = 1; v < n_; ++v) delta = std::min(delta, dualvar_[at(v)]);
                int deltaedge = -1;
                int deltablossom = -1;
                for (int v = 0; v < n_; ++v) {
                    if (label_[at(inblossom_[at(v)])] == 0 && bestedge_[at(v)] != -1) {
                        const Weight d = slack(bestedge_[at(v)]);
                        if (d < delta) {
                            delta = d;
                            deltatype = 2;
                            deltaedge = bestedge_[at(v)];
                        }
                    }
                }
                for (int b = 0; b < 2 * n_; ++b) {
                    if (blossomparent_[at(b)] == -1 && label_[at(b)] == 1 && bestedge_[at(b)] != -1) {
                        const Weight ks = slack(bestedge_[at(b)]);
                        if (ks % 2 != 0) throw InternalError("weighted matching: odd slack between S-blossoms");
                        const Weight d = ks / 2;
                        if (d < delta) {
                            delta = d;
                            deltatype = 3;
                            deltaedge = bestedge_[at(b)];
                        }
                    }
                }
                for (int b = n_; b < 2 * n_; ++b) {
                    if (blossombase_[at(b)] >= 0 && blossomparent_[at(b)] == -1 && label_[at(b)] == 2 &&
                        dualvar_[at(b)] < delta) {
                        delta = dualvar_[at(b)];
                        deltatype = 4;
                        deltablossom = b;
                    }
                }

                for (int v = 0; v < n_; ++v) {
                    const int l = label_[at(inblossom_[at(v)])];
                    if (l == 1) {
                        dualvar_[at(v)] -= delta;
                    } else if (l == 2) {
                        dualvar_[at(v)] += delta;
                    }
                }
                for (int b = n_; b < 2 * n_; ++b) {
                    if (blossombase_[at(b)] >= 0 && blossomparent_[at(b)] == -1) {
                        if (label_[at(b)] == 1) {
                            dualvar_[at(b)] += delta;
                        } else if (label_[at(b)] == 2) {
                            dualvar_[at(b)] -= delta;
                        }
                    }
                }

                if (deltatype == 1) break;
                if (deltatype == 2) {
                    allowedge_[at(deltaedge)] = 1;
                    int i = eu_[at(deltaedge)];
                    if (label_[at(inblossom_[at(i)])] == 0) i = ev_[at(deltaedge)];
                    queue_.push_back(i);
                } else if (deltatype == 3) {
                    allowedge_[at(deltaedge)] = 1;
                    queue_.push_back(eu_[at(deltaedge)]);
                } else {
                    expand_blossom(deltablossom, false);
                }
            }
            if (!augmented) break;

            for (int b = n_; b < 2 * n_; ++b) {
                if (blossomparent_[at(b)] == -1 && blossombase_[at(b)] >= 0 && label_[at(b)] == 1 &&
                    dualvar_[at(b)] == 0) {
                    expand_blossom(b, true);
                }
            }
        }

        Matching out;
        for (int v = 0; v < n_; ++v) {
            if (mate_[at(v)] >= 0) {
                const int w = endpoint_[at(mate_[at(v)])];
                if (v < w) out.edges.push_back({v, w});
            }
        }
        return out;
    }

private:
    static std::size_t at(int i) { return static_cast<std::size_t>(i); }

    Weight slack(int k) const {
        return dualvar_[at(eu_[at(k)])] + dualvar_[at(ev_[at(k)])] - 2 * ew_[at(k)];
    }

    void leaves(int b, std::vector<int>& out) const {
        if (b < n_) {
            out.push_back(b);
            return;
        }
        for (int t : blossomchilds_[at(b)]) leaves(t, out);
    }

    std::vector<int> leaves(int b) const {
        std::vector<int> out;
        leaves(b, out);
        return out;
    }

    void assign_label(int w, int t, int p) {
        const int b = inblossom_[at(w)];
        label_[at(w)] = label_[at(b)] = t;
        labelend_[at(w)] = labelend_[at(b)] = p;
        bestedge_[at(w)] = bestedge_[at(b)] = -1;
        if (t == 1) {
            leaves(b, queue_);
        } else if (t == 2) {
            const int base = blossombase_[at(b)];
            assign_label(endpoint_[at(mate_[at(base)])], 1, mate_[at(base)] ^ 1);
        }
    }

    // Traces back from v and w towards the tree roots; returns the base of a new
    // blossom, or -1 if the two paths end at different roots (augmenting path).
    int scan_blossom(int v, int w) {
        std::vector<int> path;
        int base = -1;
        while (v != -1 || w != -1) {
            int b = inblossom_[at(v)];
            if (label_[at(b)] & 4) {
                base = blossombase_[at(b)];
                break;
            }
            path.push_back(b);
            label_[at(b)] = 5;
            if (labelend_[at(b)] == -1) {
                v = -1;
            } else {
                v = endpoint_[at(labelend_[at(b)])];
                b = inblossom_[at(v)];
                v = endpoint_[at(labelend_[at(b)])];
            }
            if (w != -1) std::swap(v, w);
        }
        for (int b : path) label_[at(b)] = 1;
        return base;
    }

    void add_blossom(int base, int k) {
        int v = eu_[at(k)];
        int w = ev_[at(k)];
        const int bb = inblossom_[at(base)];
        int bv = inblossom_[at(v)];
        int bw = inblossom_[at(w)];
        const int b = unused_.back();
        unused_.pop_back();
        blossombase_[at(b)] = base;
        blossomparent_[at(b)] = -1;
        blossomparent_[at(bb)] = b;
        auto& path = blossomchilds_[at(b)];
        auto& endps = blossomendps_[at(b)];
        path.clear();
        endps.clear();
        while (bv != bb) {
            blossomparent_[at(bv)] = b;
            path.push_back(bv);
            endps.push_back(labelend_[at(bv)]);
            v = endpoint_[at(labelend_[at(bv)])];
            bv = inblossom_[at(v)];
        }
        path.push_back(bb);
        std::reverse(path.begin(), path.end());
        std::reverse(endps.begin(), endps.end());
        endps.push_back(2 * k);
        while (bw != bb) {
            blossomparent_[at(bw)] = b;
            path.push_back(bw);
            endps.push_back(labelend_[at(bw)] ^ 1);
            w = endpoint_[at(labelend_[at(bw)])];
            bw = inblossom_[at(w)];
        }
        label_[at(b)] = 1;
        labelend_[at(b)] = labelend_[at(bb)];
        dualvar_[at(b)] = 0;
        for (int leaf : leaves(b)) {
            if (label_[at(inblossom_[at(leaf)])] == 2) queue_.push_back(leaf);
            inblossom_[at(leaf)] = b;
        }

        std::vector<int> bestedgeto(at(2 * n_), -1);
        for (int sub : path) {
            std::vector<int> candidates;
            if (!has_bestedges_[at(sub)]) {
                for (int leaf : leaves(sub))
                    for (int p : neighbend_[at(leaf)]) candidates.push_back(p / 2);
            } else {
                candidates = blossombestedges_[at(sub)];
            }
            for (int kk : candidates) {
                int i = eu_[at(kk)];
                int j = ev_[at(kk)];
                if (inblossom_[at(j)] == b) std::swap(i, j);
                const int bj = inblossom_[at(j)];
                if (bj != b && label_[at(bj)] == 1 &&
                    (bestedgeto[at(bj)] == -1 || slack(kk) < slack(bestedgeto[at(bj)]))) {
                    bestedgeto[at(bj)] = kk;
                }
            }
            blossombestedges_[at(sub)].clear();
            has_bestedges_[at(sub)] = 0;
            bestedge_[at(sub)] = -1;
        }
        auto& best = blossombestedges_[at(b)];
        best.clear();
        for (int kk : bestedgeto) {
            if (kk != -1) best.push_back(kk);
        }
        has_bestedges_[at(b)] = 1;
        bestedge_[at(b)] = -1;
        for (int kk : best) {
            if (bestedge_[at(b)] == -1 || slack(kk) < slack(bestedge_[at(b)])) bestedge_[at(b)] = kk;
        }
    }

    void expand_blossom(int b, bool endstage) {
        const std::vector<int> childs = blossomchilds_[at(b)];
        for (int s : childs) {
            blossomparent_[at(s)] = -1;
            if (s < n_) {
                inblossom_[at(s)] = s;
            } else if (endstage && dualvar_[at(s)] == 0) {
                expand_blossom(s, endstage);
            } else {
                for (int leaf : leaves(s)) inblossom_[at(leaf)] = s;
            }
        }
        if (!endstage && label_[at(b)] == 2) {
            const auto& endps = blossomendps_[at(b)];
            const int len = static_cast<int>(childs.size());
            auto child_at = [&](int j) { return childs[at(((j % len) + len) % len)]; };
            auto endp_at = [&](int j) { return endps[at(((j % len) + len) % len)]; };
            const int entrychild = inblossom_[at(endpoint_[at(labelend_[at(b)] ^ 1)])];
            int j = static_cast<int>(std::find(childs.begin(), childs.end(), entrychild) - childs.begin());
            int jstep = 0;
            int endptrick = 0;
            if (j & 1) {
                j -= len;
                jstep = 1;
                endptrick = 0;
            } else {
                jstep = -1;
                endptrick = 1;
            }
            int p = labelend_[at(b)];
            while (j != 0) {
                label_[at(endpoint_[at(p ^ 1)])] = 0;
                label_[at(endpoint_[at(endp_at(j - endptrick) ^ endptrick ^ 1)])] = 0;
                assign_label(endpoint_[at(p ^ 1)], 2, p);
                allowedge_[at(endp_at(j - endptrick) / 2)] = 1;
                j += jstep;
                p = endp_at(j - endptrick) ^ endptrick;
                allowedge_[at(p / 2)] = 1;
                j += jstep;
            }
            int bv = child_at(j);
            label_[at(endpoint_[at(p ^ 1)])] = label_[at(bv)] = 2;
            labelend_[at(endpoint_[at(p ^ 1)])] = labelend_[at(bv)] = p;
            bestedge_[at(bv)] = -1;
            j += jstep;
            while (child_at(j) != entrychild) {
                bv = child_at(j);
                if (label_[at(bv)] == 1) {
                    j += jstep;
                    continue;
                }
                int found = -1;
                for (int leaf : leaves(bv)) {
                    if (label_[at(leaf)] != 0) {
                        found = leaf;
                        break;
                    }
                }
                if (found != -1) {
                    label_[at(found)] = 0;
                    label_[at(endpoint_[at(mate_[at(blossombase_[at(bv)])])])] = 0;
                    assign_label(found, 2, labelend_[at(found)]);
                }
                j += jstep;
            }
        }
        label_[at(b)] = -1;
        labelend_[at(b)] = -1;
        blossomchilds_[at(b)].clear();
        blossomendps_[at(b)].clear();
        blossombase_[at(b)] = -1;
        blossombestedges_[at(b)].clear();
        has_bestedges_[at(b)] = 0;
        bestedge_[at(b)] = -1;
        unused_.push_back(b);
    }

    // Swaps matched/unmatched edges along the even path from v to b's base.
    void augment_blossom(int b, int v) {
        int t = v;
        while (blossomparent_[at(t)] != b) t = blossomparent_[at(t)];
        if (t >= n_) augment_blossom(t, v);
        auto& childs = blossomchilds_[at(b)];
        auto& endps = blossomendps_[at(b)];
        const int len = static_cast<int>(childs.size());
        auto wrap = [&](int j) { return at(((j % len) + len) % len); };
        const int i = static_cast<int>(std::find(childs.begin(), childs.end(), t) - childs.begin());
        int j = i;
        int jstep = 0;
        int endptrick = 0;
        if (i & 1) {
            j -= len;
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        while (j != 0) {
            j += jstep;
            t = childs[wrap(j)];
            const int p = endps[wrap(j - endptrick)] ^ endptrick;
            if (t >= n_) augment_blossom(t, endpoint_[at(p)]);
            j += jstep;
            t = childs[wrap(j)];
            if (t >= n_) augment_blossom(t, endpoint_[at(p ^ 1)]);
            mate_[at(endpoint_[at(p)])] = p ^ 1;
            mate_[at(endpoint_[at(p ^ 1)])] = p;
        }
        std::rotate(childs.begin(), childs.begin() + i, childs.end());
        std::rotate(endps.begin(), endps.begin() + i, endps.end());
        blossombase_[at(b)] = blossombase_[at(childs[0])];
    }

    void augment_matching(int k) {
        const int ends[2][2] = {{eu_[at(k)], 2 * k + 1}, {ev_[at(k)], 2 * k}};
        for (const auto& start : ends) {
            int s = start[0];
            int p = start[1];
            for (;;) {
                const int bs = inblossom_[at(s)];
                if (bs >= n_) augment_blossom(bs, s);
                mate_[at(s)] = p;
                if (labelend_[at(bs)] == -1) break;
                const int t = endpoint_[at(labelend_[at(bs)])];
                const int bt = inblossom_[at(t)];
                s = endpoint_[at(labelend_[at(bt)])];
                const int j = endpoint_[at(labelend_[at(bt)] ^ 1)];
                if (bt >= n_) augment_blossom(bt, j);
                mate_[at(j)] = labelend_[at(bt)];
                p = labelend_[at(bt)] ^ 1;
            }
        }
    }

    int n_;
    int nedge_ = 0;
    std::vector<int> eu_, ev_;
    std::vector<Weight> ew_;
    std::vector<int> endpoint_;
    std::vector<std::vector<int>> neighbend_;
    std::vector<int> mate_;
    std::vector<int> label_;
    std::vector<int> labelend_;
    std::vector<int> inblossom_;
    std::vector<int> blossomparent_;
    std::vector<std::vector<int>> blossomchilds_;
    std::vector<int> blossombase_;
    std::vector<std::vector<int>> blossomendps_;
    std::vector<int> bestedge_;
    std::vector<std::vector<int>> blossombestedges_;
    std::vector<char> has_bestedges_;
    std::vector<int> unused_;
    std::vector<Weight> dualvar_;
    std::vector<char> allowedge_;
    std::vector<int> queue_;
};

}  // namespace

Matching max_weighted_matching(const WeightedGraph& g) {
    if (g.vertex_count() == 0 || g.base().edge_count() == 0) return {};
    return WeightedMatcher(g).run();
}

}  // namespace bsched
