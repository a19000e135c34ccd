#pragma once

#include <span>
#include <string>
#include <string_view>

#include "batchsched/heuristics.hpp"
#include "batchsched/model.hpp"

namespace bsched {

struct SolveOutcome {
    Schedule schedule;
    Duration makespan = 0;
    /// Algorithm that produced the schedule; differs from the request for "auto".
    std::string algorithm;
};

/// b1max, b1sum, bmmax-id, bmsum-id, is, tux, oracle, h1, h2, auto.
std::span<const std::string_view> algorithm_names();

/// Runs one named algorithm. "auto" picks an exact solver when the instance
/// shape allows one, the oracle up to its job limit, and otherwise the better
/// of H1 and H2. Throws InputError for an unknown name and WrongSubproblem
/// (or OracleLimit) when the algorithm does not apply to the instance.
SolveOutcome solve(std::string_view algorithm, const Instance& inst, const heuristics::HeuristicConfig& cfg = {});

}  // namespace bsched
