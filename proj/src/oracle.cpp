#include "batchsched/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "batchsched/errors.hpp"

namespace bsched::oracle {
namespace {

// Depth-first placement of durations (sorted descending) onto machines.
// Machines with equal load are interchangeable, so only the first of them is
// tried at each level.
class AssignmentSearch {
public:
    AssignmentSearch(std::span<const Duration> sorted, Duration setup, int machines, Duration cutoff)
        : d_(sorted), setup_(setup), load_(static_cast<std::size_t>(machines), 0),
          current_(sorted.size(), -1), best_(cutoff) {}

    Assignment run() {
        lower_bound_ = bound();
        dfs(0, 0);
        return {found_ ? best_ : -1, best_assign_};
    }

private:
    Duration bound() const {
        const Duration total = std::accumulate(d_.begin(), d_.end(), Duration{0});
        const auto batches = static_cast<Duration>(d_.size());
        const auto m = static_cast<Duration>(load_.size());
        const Duration longest = d_.empty() ? 0 : d_.front();
        if (batches <= m) return longest;
        const Duration spread = total + setup_ * (batches - m);
        return std::max(longest, (spread + m - 1) / m);
    }

    // Span of a machine with the given load (sum of duration + setup per batch).
    Duration span(Duration load) const { return load == 0 ? 0 : load - setup_; }

    void dfs(std::size_t i, Duration partial) {
        if (done_) return;
        if (i == d_.size()) {
            best_ = partial;
            best_assign_ = current_;
            found_ = true;
            if (best_ <= lower_bound_) done_ = true;
            return;
        }
        for (std::size_t k = 0; k < load_.size(); ++k) {
            bool duplicate = false;
            for (std::size_t prev = 0; prev < k; ++prev) {
                if (load_[prev] == load_[k]) {
                    duplicate = true;
                    break;
                }
            }
            if (duplicate) continue;
            const Duration next = load_[k] + d_[i] + setup_;
            const Duration next_partial = std::max(partial, span(next));
            if (next_partial >= best_) continue;
            load_[k] = next;
            current_[i] = static_cast<int>(k);
            dfs(i + 1, next_partial);
            load_[k] -= d_[i] + setup_;
            if (done_) return;
        }
    }

    std::span<const Duration> d_;
    Duration setup_;
    std::vector<Duration> load_;
    std::vector<int> current_;
    std::vector<int> best_assign_;
    Duration best_;
    Duration lower_bound_ = 0;
    bool found_ = false;
    bool done_ = false;
};

void check_assignment_size(std::size_t count) {
    if (count > static_cast<std::size_t>(kAssignmentLimit)) {
        throw OracleLimit("batch assignment is limited to " + std::to_string(kAssignmentLimit) + " batches, got " +
                          std::to_string(count));
    }
}

// Exact optimum for durations sorted descending.
Assignment solve_sorted(std::span<const Duration> sorted, Duration setup, int machines) {
    if (sorted.empty()) return {0, {}};
    // Everything on one machine is always feasible, so cutoff one above it.
    const Duration all_on_one = std::accumulate(sorted.begin(), sorted.end(), Duration{0}) +
                                setup * static_cast<Duration>(sorted.size() - 1);
    return AssignmentSearch(sorted, setup, machines, all_on_one + 1).run();
}

struct PartitionSearch {
    const Instance& inst;
    std::vector<char> used;
    std::vector<Batch> batches;
    std::map<std::vector<Duration>, Assignment> cache;
    OracleResult result;
    bool have_best = false;

    void visit() {
        ++result.explored;
        check_assignment_size(batches.size());
        std::vector<std::pair<Duration, std::size_t>> order;
        order.reserve(batches.size());
        for (std::size_t b = 0; b < batches.size(); ++b) order.emplace_back(batch_time(batches[b], inst), b);
        std::stable_sort(order.begin(), order.end(),
                         [](const auto& x, const auto& y) { return x.first > y.first; });
        std::vector<Duration> sorted;
        sorted.reserve(order.size());
        for (const auto& [d, b] : order) sorted.push_back(d);

        auto it = cache.find(sorted);
        if (it == cache.end()) {
            it = cache.emplace(sorted, solve_sorted(sorted, inst.setup(), inst.machine_count())).first;
        }
        const Assignment& a = it->second;
        if (have_best && a.makespan >= result.optimum) return;
        have_best = true;
        result.optimum = a.makespan;
        Schedule witness(inst.machine_count());
        for (std::size_t pos = 0; pos < order.size(); ++pos) {
            witness.machines[static_cast<std::size_t>(a.machine_of[pos])].push_back(batches[order[pos].second]);
        }
        result.witness = std::move(witness);
    }

    // The lowest unassigned job is either a singleton or paired with a later
    // compatible unassigned job; each batching is produced exactly once.
    void search(int from) {
        const int n = inst.job_count();
        while (from < n && used[static_cast<std::size_t>(from)]) ++from;
        if (from == n) {
            visit();
            return;
        }
        used[static_cast<std::size_t>(from)] = 1;
        batches.emplace_back(from);
        search(from + 1);
        batches.pop_back();
        for (int v : inst.graph().neighbors(from)) {
            if (v < from || used[static_cast<std::size_t>(v)]) continue;
            used[static_cast<std::size_t>(v)] = 1;
            batches.emplace_back(from, v);
            search(from + 1);
            batches.pop_back();
            used[static_cast<std::size_t>(v)] = 0;
        }
        used[static_cast<std::size_t>(from)] = 0;
    }
};

}  // namespace

Assignment assign_batches_below(std::span<const Duration> durations, Duration setup, int machines, Duration cutoff) {
    check_assignment_size(durations.size());
    if (machines < 1) throw InputError("machine count must be positive");
    std::vector<std::size_t> order(durations.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return durations[a] > durations[b]; });
    std::vector<Duration> sorted;
    for (auto i : order) sorted.push_back(durations[i]);
    if (sorted.empty()) return {cutoff > 0 ? 0 : -1, {}};
    auto found = AssignmentSearch(sorted, setup, machines, cutoff).run();
    if (found.makespan < 0) return found;
    Assignment out{found.makespan, std::vector<int>(durations.size(), 0)};
    for (std::size_t pos = 0; pos < order.size(); ++pos) out.machine_of[order[pos]] = found.machine_of[pos];
    return out;
}

Duration assign_batches_optimally(std::span<const Duration> durations, Duration setup, int machines) {
    check_assignment_size(durations.size());
    if (machines < 1) throw InputError("machine count must be positive");
    std::vector<Duration> sorted(durations.begin(), durations.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    return solve_sorted(sorted, setup, machines).makespan;
}

OracleResult brute_force_solve(const Instance& inst, int job_limit) {
    if (inst.job_count() > job_limit) {
        throw OracleLimit("oracle is limited to " + std::to_string(job_limit) + " jobs, got " +
                          std::to_string(inst.job_count()));
    }
    if (inst.job_count() > 2 * kAssignmentLimit) {
        throw OracleLimit("oracle cannot place more than " + std::to_string(kAssignmentLimit) + " batches");
    }
    PartitionSearch search{inst, std::vector<char>(static_cast<std::size_t>(inst.job_count()), 0), {}, {}, {}};
    search.search(0);
    return std::move(search.result);
}

}  // namespace bsched::oracle
