#pragma once

#include <span>

#include "batchsched/model.hpp"

namespace bsched::oracle {

inline constexpr int kDefaultJobLimit = 10;
inline constexpr int kAssignmentLimit = 12;

struct OracleResult {
    Duration optimum = 0;
    Schedule witness;
    long long explored = 0;  // batchings examined
};

/// Exhaustive optimum: every partition of the jobs into singletons and
/// compatible pairs, each placed optimally on the machines. Throws
/// OracleLimit when the instance has more than `job_limit` jobs.
OracleResult brute_force_solve(const Instance& inst, int job_limit = kDefaultJobLimit);

struct Assignment {
    Duration makespan = 0;
    std::vector<int> machine_of;  // per input duration
};

/// Minimum makespan of placing batches with the given durations on m
/// machines with setup s between consecutive batches. Throws OracleLimit for
/// more than 12 batches.
Duration assign_batches_optimally(std::span<const Duration> durations, Duration setup, int machines);

/// Same search, also returning a witness assignment. Only assignments with
/// makespan below `cutoff` are considered; makespan is -1 when none exists.
Assignment assign_batches_below(std::span<const Duration> durations, Duration setup, int machines, Duration cutoff);

}  // namespace bsched::oracle
