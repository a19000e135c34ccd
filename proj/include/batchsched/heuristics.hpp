#pragma once

#include <cstdint>
#include <vector>

#include "batchsched/model.hpp"

namespace bsched::heuristics {

inline constexpr int kDefaultIterations = 1000;

struct HeuristicConfig {
    int iterations = kDefaultIterations;
    std::uint64_t seed = 0;
};

struct HeuristicResult {
    Schedule schedule;
    Duration makespan = 0;
    /// Makespan of the constructive starting point.
    Duration initial = 0;
    /// Best-so-far makespan after every step; non-increasing.
    std::vector<Duration> trace;
};

/// Matching-seeded improvement heuristic for max-batches on m >= 2 machines.
///
/// Starts from the maximum weighted matching batching (edge weight
/// min(p_i, p_j) + s) placed longest-first on the earliest-free machine, then
///  (a) recombines pairs of two-job batches on critical machines, moving the
///      displaced short job to a machine with slack;
///  (b) runs `iterations` sweeps of random job exchanges between every pair
///      of machines, keeping exchanges that do not increase the makespan;
///  (c) rebuilds the greedy longest-first batching and runs `iterations`
///      random batch swaps between machines.
/// The best schedule seen anywhere is returned. Throws WrongSubproblem for
/// sum-batches or a single machine, InputError for iterations < 1.
HeuristicResult h1(const Instance& inst, const HeuristicConfig& cfg);

/// Longest-first greedy batching (each job joins the first compatible
/// singleton batch, else opens a new one), longest-first placement on the
/// earliest-free machine, then `iterations` random batch swaps between
/// machines keeping the best. Throws WrongSubproblem for sum-batches.
HeuristicResult h2(const Instance& inst, const HeuristicConfig& cfg);

/// Greedy longest-first batching used by h2 and by phase (c) of h1.
std::vector<Batch> greedy_batches(const Instance& inst);

/// Batches sorted by decreasing duration (stable), each on the machine where it finishes first.
Schedule lpt_schedule(std::vector<Batch> batches, const Instance& inst);

/// (cmax - best) / best. Throws InputError when best <= 0.
double gap(Duration cmax, Duration best);

}  // namespace bsched::heuristics
