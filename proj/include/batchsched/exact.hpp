#pragma once

#include <optional>
#include <span>
#include <vector>

#include "batchsched/matching.hpp"
#include "batchsched/model.hpp"

namespace bsched::exact {

/// Output of a matching-based exact solver. `closed_form` is the makespan
/// predicted by the solver's formula; `makespan` is the constructed
/// schedule's evaluated value. The solvers guarantee the two agree.
struct ExactSolution {
    Schedule schedule;
    Duration makespan = 0;
    Duration closed_form = 0;
    Matching matching;
};

/// Single machine, max-batches. Pairs jobs along a maximum weighted matching
/// of the graph weighted by min(p_i, p_j) + s.
ExactSolution solve_b1_max(const Instance& inst);

/// Single machine, sum-batches. Pairs jobs along a maximum cardinality matching.
ExactSolution solve_b1_sum(const Instance& inst);

/// m machines, max-batches, identical processing times.
ExactSolution solve_bm_max_identical(const Instance& inst);

/// m machines, sum-batches, identical processing times. A two-job batch costs
/// 2p on one machine, so with m >= 2 using every matching edge can be worse
/// than splitting pairs (two compatible jobs on two machines: p instead of
/// 2p). The solver takes a maximum cardinality matching, then chooses how
/// many of its edges to use and how many pairs and singletons each machine
/// gets, by a knapsack over machines inside a search on the makespan.
ExactSolution solve_bm_sum_identical(const Instance& inst);

/// The closed-form construction for the same problem: every edge of a
/// maximum cardinality matching becomes a batch, two-job batches are placed
/// first on the earliest-free machine, then the singletons. `closed_form` is
/// sum_identical_formula(); it always equals the constructed makespan, which
/// is optimal when m = 1 or when pairs cannot be profitably split but can
/// exceed solve_bm_sum_identical otherwise.
ExactSolution algorithm4_sum_identical(const Instance& inst);

/// Case split of the sum-mode identical-p closed form.
enum class SumIdenticalCase {
    WithinFreeSlots,       // remaining jobs <= k/2: no extra time
    FreeSlotsPlusSetup,    // k/2 < remaining <= k: one extra setup
    ExtraRoundsEven,       // n' > 0, last round fills only the short machines
    ExtraRoundsUneven,     // n' > 0, last round spills onto the long machines
};

struct SumIdenticalFormula {
    Duration value = 0;
    SumIdenticalCase which = SumIdenticalCase::WithinFreeSlots;
    long long free_slots = 0;  // k
    long long overflow = 0;    // n' = n - 2|M| - k
};

/// Closed form for the sum-mode identical-p makespan given the matching size.
SumIdenticalFormula sum_identical_formula(int job_count, int matching_size, int machine_count, Duration p,
                                          Duration setup);

/// Batch-type tallies of a two-value max-mode schedule.
struct TwoValueProfile {
    Duration p = 0;
    Duration q = 0;
    int n_p = 0;   // batches whose jobs all have time p
    int n_q = 0;   // batches whose jobs all have time q
    int n_pq = 0;  // mixed two-job batches

    int batch_count() const noexcept { return n_p + n_q + n_pq; }
};

/// The two processing-time values of a max-mode instance. Throws
/// WrongSubproblem when more than two distinct values occur. For a
/// single-valued instance both entries are that value.
std::pair<Duration, Duration> two_values(const Instance& inst);

TwoValueProfile profile_of(const Schedule& sched, const Instance& inst, Duration p, Duration q);

struct TwoMachineAssignment {
    Schedule schedule;
    Duration makespan = 0;
};

/// Optimal placement of batches with durations in {p, q} on two machines.
/// Enumerates how many q- and p-batches go to machine 1. Throws
/// WrongSubproblem if more than two distinct batch durations occur.
TwoMachineAssignment schedule_p2_two_values(std::span<const Batch> batches, const Instance& inst);

struct IsSolution {
    Schedule schedule;
    Duration makespan = 0;
    TwoValueProfile profile;
    Matching matching;
};

/// Two machines, max-batches, two processing-time values: weighted matching
/// batching followed by the exact two-machine placement.
IsSolution solve_is(const Instance& inst);

struct TuxSolution {
    Schedule schedule;
    Duration makespan = 0;
    IsSolution seed;
    bool guard_fired = false;
    long long candidates = 0;
    /// Hull points of (q-q edges, other edges) scheduled, and whether the
    /// returned schedule came from one of them rather than the seed or the
    /// q-q pair search.
    int frontier_points = 0;
    bool frontier_improved = false;
    /// Debug record of the best candidate: the literal "IS makespan + q" value
    /// next to the makespan of the actually constructed schedule.
    std::optional<Duration> best_candidate_literal;
    std::optional<Duration> best_candidate_evaluated;
};

/// Two machines, max-batches, two processing-time values: the IS seed, the
/// recombination search over q-job pairs when the seed can be improved, and
/// the exact placement of every hull matching of (q-q edges, other edges).
TuxSolution solve_b2_max_two_values(const Instance& inst);

}  // namespace bsched::exact
