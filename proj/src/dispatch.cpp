#include "batchsched/dispatch.hpp"

#include <array>
#include <set>

#include "batchsched/errors.hpp"
#include "batchsched/exact.hpp"
#include "batchsched/oracle.hpp"

namespace bsched {
namespace {

constexpr std::array<std::string_view, 10> kNames{"b1max", "b1sum", "bmmax-id", "bmsum-id", "is",
                                                  "tux",   "oracle", "h1",     "h2",       "auto"};

SolveOutcome from_exact(exact::ExactSolution sol, std::string_view name) {
    return {std::move(sol.schedule), sol.makespan, std::string(name)};
}

std::size_t distinct_times(const Instance& inst) {
    const auto p = inst.proc_times();
    return std::set<Duration>(p.begin(), p.end()).size();
}

SolveOutcome solve_auto(const Instance& inst, const heuristics::HeuristicConfig& cfg) {
    const bool max = inst.mode() == BatchMode::Max;
    if (inst.machine_count() == 1) return solve(max ? "b1max" : "b1sum", inst, cfg);
    const auto distinct = distinct_times(inst);
    if (distinct <= 1) return solve(max ? "bmmax-id" : "bmsum-id", inst, cfg);
    if (max && inst.machine_count() == 2 && distinct == 2) return solve("tux", inst, cfg);
    if (inst.job_count() <= oracle::kDefaultJobLimit) return solve("oracle", inst, cfg);
    if (!max) throw WrongSubproblem("no solver covers sum-batches with mixed processing times on several machines above " +
                                    std::to_string(oracle::kDefaultJobLimit) + " jobs");
    auto a = solve("h1", inst, cfg);
    auto b = solve("h2", inst, cfg);
    return b.makespan < a.makespan ? b : a;
}

}  // namespace

std::span<const std::string_view> algorithm_names() { return kNames; }

SolveOutcome solve(std::string_view algorithm, const Instance& inst, const heuristics::HeuristicConfig& cfg) {
    if (algorithm == "b1max") return from_exact(exact::solve_b1_max(inst), algorithm);
    if (algorithm == "b1sum") return from_exact(exact::solve_b1_sum(inst), algorithm);
    if (algorithm == "bmmax-id") return from_exact(exact::solve_bm_max_identical(inst), algorithm);
    if (algorithm == "bmsum-id") return from_exact(exact::solve_bm_sum_identical(inst), algorithm);
    if (algorithm == "is") {
        auto sol = exact::solve_is(inst);
        return {std::move(sol.schedule), sol.makespan, "is"};
    }
    if (algorithm == "tux") {
        auto sol = exact::solve_b2_max_two_values(inst);
        return {std::move(sol.schedule), sol.makespan, "tux"};
    }
    if (algorithm == "oracle") {
        auto res = oracle::brute_force_solve(inst);
        return {std::move(res.witness), res.optimum, "oracle"};
    }
    if (algorithm == "h1" || algorithm == "h2") {
        auto res = algorithm == "h1" ? heuristics::h1(inst, cfg) : heuristics::h2(inst, cfg);
        return {std::move(res.schedule), res.makespan, std::string(algorithm)};
    }
    if (algorithm == "auto") return solve_auto(inst, cfg);
    throw InputError("unknown algorithm '" + std::string(algorithm) + "'");
}

}  // namespace bsched
