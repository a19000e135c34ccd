#include "batchsched/exact.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>

#include "batchsched/errors.hpp"

namespace bsched::exact {
namespace {

void require(bool cond, const std::string& what) {
    if (!cond) throw WrongSubproblem(what);
}

bool identical_times(const Instance& inst) {
    const auto p = inst.proc_times();
    return std::all_of(p.begin(), p.end(), [&](Duration x) { return x == p.front(); });
}

Duration ceil_div(Duration a, Duration b) { return (a + b - 1) / b; }

void check_agreement(const ExactSolution& sol, const char* solver) {
    if (sol.makespan != sol.closed_form) {
        throw InternalError(std::string(solver) + ": closed form " + std::to_string(sol.closed_form) +
                            " disagrees with constructed schedule " + std::to_string(sol.makespan));
    }
}

WeightedGraph alpha_graph(const Instance& inst) {
    return WeightedGraph(inst.graph(), [&](const Edge& e) {
        return std::min(inst.proc(e.u), inst.proc(e.v)) + inst.setup();
    });
}

// Two-job batches first, then singletons, each on the machine where it finishes first.
ExactSolution matching_list_schedule(const Instance& inst, Matching matching) {
    ExactSolution sol;
    const auto batches = batches_from_pairs(matching.edges, inst.job_count());
    sol.schedule = list_schedule(batches, inst);
    sol.makespan = makespan(sol.schedule, inst);
    sol.matching = std::move(matching);
    return sol;
}

}  // namespace

ExactSolution solve_b1_max(const Instance& inst) {
    require(inst.machine_count() == 1, "b1max needs a single machine");
    require(inst.mode() == BatchMode::Max, "b1max needs max-batches");
    const auto weighted = alpha_graph(inst);
    auto sol = matching_list_schedule(inst, max_weighted_matching(weighted));
    const auto n = static_cast<Duration>(inst.job_count());
    sol.closed_form = inst.total_proc() + inst.setup() * (n - 1) - matching_weight(sol.matching, weighted);
    check_agreement(sol, "b1max");
    return sol;
}

ExactSolution solve_b1_sum(const Instance& inst) {
    require(inst.machine_count() == 1, "b1sum needs a single machine");
    require(inst.mode() == BatchMode::Sum, "b1sum needs sum-batches");
    auto sol = matching_list_schedule(inst, max_cardinality_matching(inst.graph()));
    const auto n = static_cast<Duration>(inst.job_count());
    const auto matched = static_cast<Duration>(sol.matching.size());
    sol.closed_form = inst.total_proc() + inst.setup() * (n - matched - 1);
    check_agreement(sol, "b1sum");
    return sol;
}

ExactSolution solve_bm_max_identical(const Instance& inst) {
    require(inst.mode() == BatchMode::Max, "bmmax-id needs max-batches");
    require(identical_times(inst), "bmmax-id needs identical processing times");
    auto sol = matching_list_schedule(inst, max_cardinality_matching(inst.graph()));
    const Duration per_machine = ceil_div(static_cast<Duration>(inst.job_count()) -
                                              static_cast<Duration>(sol.matching.size()),
                                          inst.machine_count());
    sol.closed_form = per_machine * inst.proc(0) + (per_machine - 1) * inst.setup();
    check_agreement(sol, "bmmax-id");
    return sol;
}

SumIdenticalFormula sum_identical_formula(int job_count, int matching_size, int machine_count, Duration p,
                                          Duration setup) {
    const long long n = job_count;
    const long long a = matching_size;
    const long long m = machine_count;
    const long long r = a % m;
    const long long rounds = (a + m - 1) / m;

    SumIdenticalFormula f;
    f.free_slots = r == 0 ? 0 : 2 * (m - r);
    const long long remaining = n - 2 * a;
    f.overflow = remaining - f.free_slots;

    // Pair rounds alone; with no pairs this is -s, absorbed by the "+ s" terms below.
    const Duration pairs_span = 2 * rounds * p + (rounds - 1) * setup;
    if (2 * remaining <= f.free_slots) {
        f.which = SumIdenticalCase::WithinFreeSlots;
        f.value = pairs_span;
    } else if (remaining <= f.free_slots) {
        f.which = SumIdenticalCase::FreeSlotsPlusSetup;
        f.value = pairs_span + setup;
    } else {
        const long long extra = (f.overflow + m - 1) / m;
        const long long last = f.overflow % m;
        const Duration tail = extra * p + (extra - 1) * setup;
        // A full last round (last == 0) with r > 0 also lands on the short
        // machines, which already carry one extra setup from the free slots.
        if (r == 0 || (last != 0 && last <= r)) {
            f.which = SumIdenticalCase::ExtraRoundsEven;
            f.value = pairs_span + setup + tail;
        } else {
            f.which = SumIdenticalCase::ExtraRoundsUneven;
            f.value = pairs_span + 2 * setup + tail;
        }
    }
    return f;
}

ExactSolution algorithm4_sum_identical(const Instance& inst) {
    require(inst.mode() == BatchMode::Sum, "bmsum-id needs sum-batches");
    require(identical_times(inst), "bmsum-id needs identical processing times");
    auto sol = matching_list_schedule(inst, max_cardinality_matching(inst.graph()));
    sol.closed_form = sum_identical_formula(inst.job_count(), static_cast<int>(sol.matching.size()),
                                            inst.machine_count(), inst.proc(0), inst.setup())
                          .value;
    check_agreement(sol, "algorithm 4");
    return sol;
}

namespace {

// Pairs and singletons per machine for the sum-mode identical-p problem.
struct Load {
    long long pairs = 0;
    long long singles = 0;
};

// Largest number of singletons a machine holding `pairs` pairs can add
// within `limit`, or -1 when the pairs alone exceed it.
long long singles_within(long long pairs, Duration limit, Duration p, Duration s) {
    // With no pairs the "-s" makes the first singleton carry no setup.
    const Duration pair_span = pairs == 0 ? -s : 2 * pairs * p + (pairs - 1) * s;
    if (pair_span > limit) return -1;
    return (limit - pair_span) / (p + s);
}

// Per-machine loads reaching n jobs within `limit` using at most `max_pairs`
// pairs in total, if any exist. Knapsack over machines on the pair count.
std::optional<std::vector<Load>> loads_within(long long n, long long max_pairs, int m, Duration limit, Duration p,
                                              Duration s) {
    constexpr long long kNone = -1;
    const auto width = static_cast<std::size_t>(max_pairs + 1);
    std::vector<std::vector<long long>> cap(static_cast<std::size_t>(m) + 1, std::vector<long long>(width, kNone));
    std::vector<std::vector<long long>> pick(static_cast<std::size_t>(m) + 1, std::vector<long long>(width, 0));
    cap[0][0] = 0;
    for (std::size_t k = 1; k <= static_cast<std::size_t>(m); ++k) {
        for (long long used = 0; used <= max_pairs; ++used) {
            if (cap[k - 1][static_cast<std::size_t>(used)] == kNone) continue;
            for (long long a = 0; used + a <= max_pairs; ++a) {
                const auto b = singles_within(a, limit, p, s);
                if (b < 0) break;
                const auto total = cap[k - 1][static_cast<std::size_t>(used)] + 2 * a + b;
                auto& slot = cap[k][static_cast<std::size_t>(used + a)];
                if (total > slot) {
                    slot = total;
                    pick[k][static_cast<std::size_t>(used + a)] = a;
                }
            }
        }
    }
    const auto& last = cap[static_cast<std::size_t>(m)];
    const auto best = std::max_element(last.begin(), last.end());
    if (*best < n) return std::nullopt;
    std::vector<Load> loads(static_cast<std::size_t>(m));
    auto used = static_cast<long long>(best - last.begin());
    for (auto k = static_cast<std::size_t>(m); k >= 1; --k) {
        const auto a = pick[k][static_cast<std::size_t>(used)];
        loads[k - 1] = {a, singles_within(a, limit, p, s)};
        used -= a;
    }
    // Drop surplus singleton capacity so exactly n jobs are placed.
    long long surplus = *best - n;
    for (auto& l : loads) {
        const auto cut = std::min(surplus, l.singles);
        l.singles -= cut;
        surplus -= cut;
    }
    return loads;
}

}  // namespace

ExactSolution solve_bm_sum_identical(const Instance& inst) {
    require(inst.mode() == BatchMode::Sum, "bmsum-id needs sum-batches");
    require(identical_times(inst), "bmsum-id needs identical processing times");
    const int m = inst.machine_count();
    const long long n = inst.job_count();
    ExactSolution sol;
    sol.matching = max_cardinality_matching(inst.graph());
    sol.schedule = Schedule(m);
    if (n == 0) return sol;
    const Duration p = inst.proc(0);
    const Duration s = inst.setup();
    const auto max_pairs = static_cast<long long>(sol.matching.size());

    // Smallest feasible makespan; all singletons spread evenly is always feasible.
    const long long rounds = (n + m - 1) / m;
    Duration lo = p;
    Duration hi = rounds * p + (rounds - 1) * s;
    while (lo < hi) {
        const Duration mid = lo + (hi - lo) / 2;
        if (loads_within(n, max_pairs, m, mid, p, s)) hi = mid; else lo = mid + 1;
    }
    const auto loads = *loads_within(n, max_pairs, m, lo, p, s);

    std::size_t next_pair = 0;
    std::vector<char> placed(static_cast<std::size_t>(n), 0);
    for (std::size_t k = 0; k < loads.size(); ++k) {
        for (long long a = 0; a < loads[k].pairs; ++a) {
            const Edge e = sol.matching.edges[next_pair++];
            sol.schedule.machines[k].emplace_back(e.u, e.v);
            placed[static_cast<std::size_t>(e.u)] = placed[static_cast<std::size_t>(e.v)] = 1;
        }
    }
    int job = 0;
    for (std::size_t k = 0; k < loads.size(); ++k) {
        for (long long b = 0; b < loads[k].singles; ++b) {
            while (placed[static_cast<std::size_t>(job)]) ++job;
            sol.schedule.machines[k].emplace_back(job);
            placed[static_cast<std::size_t>(job)] = 1;
        }
    }
    sol.makespan = makespan(sol.schedule, inst);
    sol.closed_form = lo;
    check_agreement(sol, "bmsum-id");
    return sol;
}

std::pair<Duration, Duration> two_values(const Instance& inst) {
    std::set<Duration> values(inst.proc_times().begin(), inst.proc_times().end());
    require(values.size() <= 2, "expected at most two distinct processing times, got " +
                                    std::to_string(values.size()));
    return {*values.begin(), *values.rbegin()};
}

TwoValueProfile profile_of(const Schedule& sched, const Instance& inst, Duration p, Duration q) {
    TwoValueProfile prof{p, q};
    for (const auto& seq : sched.machines) {
        for (const Batch& b : seq) {
            bool has_p = false;
            bool has_q = false;
            for (int j : b.jobs()) {
                if (inst.proc(j) == p) {
                    has_p = true;
                } else {
                    has_q = true;
                }
            }
            if (has_p && has_q) {
                ++prof.n_pq;
            } else if (has_p) {
                ++prof.n_p;
            } else {
                ++prof.n_q;
            }
        }
    }
    return prof;
}

TwoMachineAssignment schedule_p2_two_values(std::span<const Batch> batches, const Instance& inst) {
    require(inst.machine_count() == 2, "two-value placement needs exactly two machines");
    std::vector<Batch> longer;
    std::vector<Batch> shorter;
    std::set<Duration> durations;
    for (const Batch& b : batches) durations.insert(batch_time(b, inst));
    require(durations.size() <= 2, "expected at most two distinct batch durations, got " +
                                       std::to_string(durations.size()));
    TwoMachineAssignment out{Schedule(2), 0};
    if (durations.empty()) return out;
    const Duration q = *durations.rbegin();
    const Duration p = *durations.begin();
    for (const Batch& b : batches) (batch_time(b, inst) == q ? longer : shorter).push_back(b);

    const auto span = [&](long long nq, long long np) -> Duration {
        if (nq + np == 0) return 0;
        return nq * q + np * p + (nq + np - 1) * inst.setup();
    };
    const long long total_q = static_cast<long long>(longer.size());
    const long long total_p = static_cast<long long>(shorter.size());
    long long best_q = 0;
    long long best_p = 0;
    Duration best = -1;
    for (long long a = 0; a <= total_q; ++a) {
        for (long long b = 0; b <= total_p; ++b) {
            const Duration v = std::max(span(a, b), span(total_q - a, total_p - b));
            if (best < 0 || v < best) {
                best = v;
                best_q = a;
                best_p = b;
            }
        }
    }
    for (long long i = 0; i < total_q; ++i) out.schedule.machines[i < best_q ? 0 : 1].push_back(longer[static_cast<std::size_t>(i)]);
    for (long long i = 0; i < total_p; ++i) out.schedule.machines[i < best_p ? 0 : 1].push_back(shorter[static_cast<std::size_t>(i)]);
    out.makespan = best;
    return out;
}

IsSolution solve_is(const Instance& inst) {
    require(inst.machine_count() == 2, "is needs exactly two machines");
    require(inst.mode() == BatchMode::Max, "is needs max-batches");
    const auto [p, q] = two_values(inst);
    IsSolution sol;
    sol.matching = max_weighted_matching(alpha_graph(inst));
    const auto batches = batches_from_pairs(sol.matching.edges, inst.job_count());
    auto placed = schedule_p2_two_values(batches, inst);
    sol.schedule = std::move(placed.schedule);
    sol.makespan = makespan(sol.schedule, inst);
    if (sol.makespan != placed.makespan) throw InternalError("is: placement value disagrees with schedule");
    sol.profile = profile_of(sol.schedule, inst, p, q);
    return sol;
}

}  // namespace bsched::exact
