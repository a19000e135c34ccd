// Two machines, max-batches, p_i in {p, q}: improvement search on top of the
// IS seed. When the seed has at least two mixed batches, an odd batch count and
// 2p + s >= q, every choice of two q-q batches (i,e) and (j,f) is tried at time
// 0 on separate machines. The p-jobs k, l adjacent to i and j lose all their
// q-edges, and the remaining jobs are re-batched by IS.
//
// That search alone misses optima that merge the q-jobs of two mixed batches
// into a single q-q batch. The makespan depends only on the number of q- and
// p-batches, i.e. on (x, w) = (q-q edges, other edges) of the matching used,
// so every vertex of the upper hull of achievable (x, w) is also scheduled
// exactly and the best schedule of either source is kept.

#include <algorithm>
#include <array>
#include <map>
#include <tuple>

#include "batchsched/errors.hpp"
#include "batchsched/exact.hpp"

namespace bsched::exact {
namespace {

struct SubKey {
    int k;
    int l;
    std::array<int, 4> removed;

    friend auto operator<=>(const SubKey&, const SubKey&) = default;
};

struct Tally {
    long long x = 0;  // q-q edges
    long long w = 0;  // p-p and p-q edges
    Matching matching;
};

// Maximum weight matching with weight a on q-q edges and b on the others.
Tally tally_for(const Instance& inst, Duration q, Weight a, Weight b) {
    const WeightedGraph wg(inst.graph(), [&](const Edge& e) {
        return inst.proc(e.u) == q && inst.proc(e.v) == q ? a : b;
    });
    Tally t;
    t.matching = max_weighted_matching(wg);
    for (const Edge& e : t.matching.edges) {
        if (inst.proc(e.u) == q && inst.proc(e.v) == q) ++t.x; else ++t.w;
    }
    return t;
}

void hull_between(const Instance& inst, Duration q, const Tally& lo, const Tally& hi, std::vector<Tally>& out) {
    if (hi.x - lo.x <= 1) return;
    const Weight a = lo.w - hi.w;
    const Weight b = hi.x - lo.x;
    auto mid = tally_for(inst, q, a, b);
    if (a * mid.x + b * mid.w <= a * lo.x + b * lo.w) return;
    hull_between(inst, q, lo, mid, out);
    out.push_back(mid);
    hull_between(inst, q, mid, hi, out);
}

// Hull vertices ordered by x, from most other-edges to most q-q edges.
std::vector<Tally> frontier(const Instance& inst, Duration q) {
    const Weight big = inst.job_count() + 1;
    std::vector<Tally> out;
    out.push_back(tally_for(inst, q, 1, big));
    auto right = tally_for(inst, q, big, 1);
    if (right.x == out.front().x) return out;
    const auto left = out.front();
    hull_between(inst, q, left, right, out);
    out.push_back(std::move(right));
    return out;
}

struct Candidate {
    Schedule schedule;
    Duration makespan;
    Duration literal;
};

}  // namespace

TuxSolution solve_b2_max_two_values(const Instance& inst) {
    if (inst.machine_count() != 2) throw WrongSubproblem("tux needs exactly two machines");
    if (inst.mode() != BatchMode::Max) throw WrongSubproblem("tux needs max-batches");
    const auto [p, q] = two_values(inst);

    TuxSolution out;
    out.seed = solve_is(inst);
    if (p == q) {
        auto identical = solve_bm_max_identical(inst);
        out.schedule = std::move(identical.schedule);
        out.makespan = identical.makespan;
        return out;
    }
    out.schedule = out.seed.schedule;
    out.makespan = out.seed.makespan;

    for (const Tally& t : frontier(inst, q)) {
        ++out.frontier_points;
        const auto batches = batches_from_pairs(t.matching.edges, inst.job_count());
        auto placed = schedule_p2_two_values(batches, inst);
        if (placed.makespan < out.makespan) {
            out.makespan = placed.makespan;
            out.schedule = std::move(placed.schedule);
            out.frontier_improved = true;
        }
    }

    const auto& prof = out.seed.profile;
    out.guard_fired = prof.n_pq >= 2 && prof.batch_count() % 2 == 1 && 2 * p + inst.setup() >= q;
    if (!out.guard_fired) return out;

    const int n = inst.job_count();
    const auto& g = inst.graph();
    std::vector<int> qjobs;
    std::vector<int> pjobs;
    for (int v = 0; v < n; ++v) (inst.proc(v) == q ? qjobs : pjobs).push_back(v);

    std::map<SubKey, Candidate> memo;
    auto evaluate = [&](int i, int j, int k, int l, int e, int f) -> const Candidate& {
        std::array<int, 4> removed{i, j, e, f};
        std::sort(removed.begin(), removed.end());
        const SubKey key{std::min(k, l), std::max(k, l), removed};
        if (auto it = memo.find(key); it != memo.end()) return it->second;

        std::vector<int> keep;
        for (int v = 0; v < n; ++v) {
            if (!std::binary_search(removed.begin(), removed.end(), v)) keep.push_back(v);
        }
        Candidate cand{Schedule(2), 0, 0};
        if (keep.empty()) {
            cand.literal = q;
        } else {
            std::vector<int> local(static_cast<std::size_t>(n), -1);
            for (std::size_t x = 0; x < keep.size(); ++x) local[static_cast<std::size_t>(keep[x])] = static_cast<int>(x);
            std::vector<Edge> sub_edges;
            for (const Edge& ed : g.edges()) {
                const int a = local[static_cast<std::size_t>(ed.u)];
                const int b = local[static_cast<std::size_t>(ed.v)];
                if (a < 0 || b < 0) continue;
                const bool freed_u = (ed.u == k || ed.u == l) && inst.proc(ed.v) == q;
                const bool freed_v = (ed.v == k || ed.v == l) && inst.proc(ed.u) == q;
                if (freed_u || freed_v) continue;
                sub_edges.push_back({a, b});
            }
            std::vector<Duration> sub_proc;
            for (int v : keep) sub_proc.push_back(inst.proc(v));
            const Instance sub(std::move(sub_proc), 2, inst.setup(), BatchMode::Max,
                               CompatGraph(static_cast<int>(keep.size()), sub_edges));
            const auto sub_sol = solve_is(sub);
            cand.literal = sub_sol.makespan + q;
            for (int mach = 0; mach < 2; ++mach) {
                for (const Batch& b : sub_sol.schedule.machines[static_cast<std::size_t>(mach)]) {
                    if (b.is_pair()) {
                        cand.schedule.machines[static_cast<std::size_t>(mach)].emplace_back(keep[static_cast<std::size_t>(b.first())],
                                                                      keep[static_cast<std::size_t>(b.second())]);
                    } else {
                        cand.schedule.machines[static_cast<std::size_t>(mach)].emplace_back(keep[static_cast<std::size_t>(b.first())]);
                    }
                }
            }
        }
        auto& m0 = cand.schedule.machines[0];
        auto& m1 = cand.schedule.machines[1];
        m0.insert(m0.begin(), Batch(i, e));
        m1.insert(m1.begin(), Batch(j, f));
        cand.makespan = makespan(cand.schedule, inst);
        return memo.emplace(key, std::move(cand)).first->second;
    };

    // (i, j) and (j, i) yield mirrored candidates with equal makespans.
    for (std::size_t ii = 0; ii < qjobs.size(); ++ii) {
        for (std::size_t jj = ii + 1; jj < qjobs.size(); ++jj) {
            const int i = qjobs[ii];
            const int j = qjobs[jj];
            for (int k : pjobs) {
                if (!g.adjacent(k, i)) continue;
                for (int l : pjobs) {
                    if (!g.adjacent(l, j)) continue;
                    for (int e : qjobs) {
                        if (e == i || e == j || !g.adjacent(i, e)) continue;
                        for (int f : qjobs) {
                            if (f == i || f == j || f == e || !g.adjacent(j, f)) continue;
                            ++out.candidates;
                            const Candidate& cand = evaluate(i, j, k, l, e, f);
                            if (cand.makespan < out.makespan) {
                                out.frontier_improved = false;
                                out.makespan = cand.makespan;
                                out.schedule = cand.schedule;
                                out.best_candidate_literal = cand.literal;
                                out.best_candidate_evaluated = cand.makespan;
                            }
                        }
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace bsched::exact
