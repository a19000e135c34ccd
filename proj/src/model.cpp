#include "batchsched/model.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "batchsched/errors.hpp"

namespace bsched {

InfeasibleSchedule::InfeasibleSchedule(std::vector<std::string> violations)
    : std::runtime_error([&] {
          std::string msg = "infeasible schedule";
          for (const auto& v : violations) msg += "; " + v;
          return msg;
      }()),
      violations_(std::move(violations)) {}

const char* to_string(BatchMode mode) noexcept { return mode == BatchMode::Max ? "max" : "sum"; }

// ---------------------------------------------------------------------------
// CompatGraph

CompatGraph::CompatGraph(int vertex_count, std::span<const Edge> edges) : n_(vertex_count) {
    if (vertex_count < 0) throw InputError("negative vertex count");
    const auto n = static_cast<std::size_t>(vertex_count);
    matrix_.assign(n * n, 0);
    adj_.resize(n);
    edges_.reserve(edges.size());
    for (Edge e : edges) {
        if (e.u < 0 || e.v < 0 || e.u >= n_ || e.v >= n_) {
            throw InputError("edge (" + std::to_string(e.u + 1) + "," + std::to_string(e.v + 1) +
                             ") out of range");
        }
        if (e.u == e.v) throw InputError("self-loop on job " + std::to_string(e.u + 1));
        if (e.u > e.v) std::swap(e.u, e.v);
        auto& cell = matrix_[static_cast<std::size_t>(e.u) * n + static_cast<std::size_t>(e.v)];
        if (cell) {
            throw InputError("duplicate edge (" + std::to_string(e.u + 1) + "," + std::to_string(e.v + 1) +
                             ")");
        }
        cell = 1;
        matrix_[static_cast<std::size_t>(e.v) * n + static_cast<std::size_t>(e.u)] = 1;
        edges_.push_back(e);
        adj_[static_cast<std::size_t>(e.u)].push_back(e.v);
        adj_[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    std::sort(edges_.begin(), edges_.end());
    for (auto& list : adj_) std::sort(list.begin(), list.end());
}

CompatGraph::CompatGraph(int vertex_count, std::initializer_list<std::pair<int, int>> edges)
    : CompatGraph(vertex_count, [&] {
          std::vector<Edge> out;
          for (auto [u, v] : edges) out.push_back({u, v});
          return out;
      }()) {}

CompatGraph CompatGraph::complete(int vertex_count) {
    std::vector<Edge> edges;
    for (int i = 0; i < vertex_count; ++i)
        for (int j = i + 1; j < vertex_count; ++j) edges.push_back({i, j});
    return CompatGraph(vertex_count, edges);
}

bool CompatGraph::adjacent(int i, int j) const noexcept {
    if (i < 0 || j < 0 || i >= n_ || j >= n_) return false;
    return matrix_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)] != 0;
}

CompatGraph CompatGraph::induced(std::span<const int> keep) const {
    std::vector<int> relabel(static_cast<std::size_t>(n_), -1);
    for (std::size_t k = 0; k < keep.size(); ++k) relabel[static_cast<std::size_t>(keep[k])] = static_cast<int>(k);
    std::vector<Edge> sub;
    for (const Edge& e : edges_) {
        const int a = relabel[static_cast<std::size_t>(e.u)];
        const int b = relabel[static_cast<std::size_t>(e.v)];
        if (a >= 0 && b >= 0) sub.push_back({a, b});
    }
    return CompatGraph(static_cast<int>(keep.size()), sub);
}

// ---------------------------------------------------------------------------
// Instance

Instance::Instance(std::vector<Duration> proc_times, int machine_count, Duration setup, BatchMode mode,
                   CompatGraph graph)
    : proc_(std::move(proc_times)), machines_(machine_count), setup_(setup), mode_(mode), graph_(std::move(graph)) {
    if (proc_.empty()) throw InputError("instance has no jobs");
    if (machines_ < 1) throw InputError("machine count must be positive");
    if (setup_ < 0) throw InputError("setup time must be nonnegative");
    for (std::size_t i = 0; i < proc_.size(); ++i) {
        if (proc_[i] <= 0) throw InputError("processing time of job " + std::to_string(i + 1) + " must be positive");
    }
    if (graph_.vertex_count() != job_count()) {
        throw InputError("graph has " + std::to_string(graph_.vertex_count()) + " vertices for " +
                         std::to_string(job_count()) + " jobs");
    }
}

Duration Instance::total_proc() const noexcept { return std::accumulate(proc_.begin(), proc_.end(), Duration{0}); }

Duration Instance::max_proc() const noexcept { return *std::max_element(proc_.begin(), proc_.end()); }

Instance Instance::with_machines(int machine_count) const {
    return Instance(proc_, machine_count, setup_, mode_, graph_);
}

// ---------------------------------------------------------------------------
// Batch / Schedule

Batch::Batch(int a, int b) : jobs_{std::min(a, b), std::max(a, b)}, size_(2) {
    if (a == b) throw InputError("batch repeats job " + std::to_string(a + 1));
}

std::size_t Schedule::batch_count() const noexcept {
    std::size_t total = 0;
    for (const auto& seq : machines) total += seq.size();
    return total;
}

Duration batch_time(const Batch& batch, const Instance& inst) {
    for (int j : batch.jobs()) {
        if (j < 0 || j >= inst.job_count()) throw InputError("job index " + std::to_string(j + 1) + " out of range");
    }
    if (!batch.is_pair()) return inst.proc(batch.first());
    if (!inst.graph().adjacent(batch.first(), batch.second())) {
        throw InputError("incompatible pair [" + std::to_string(batch.first() + 1) + "," +
                         std::to_string(batch.second() + 1) + "]");
    }
    const Duration a = inst.proc(batch.first());
    const Duration b = inst.proc(batch.second());
    return inst.mode() == BatchMode::Max ? std::max(a, b) : a + b;
}

Duration machine_span(std::span<const Batch> seq, const Instance& inst) {
    if (seq.empty()) return 0;
    Duration total = inst.setup() * static_cast<Duration>(seq.size() - 1);
    for (const Batch& b : seq) total += batch_time(b, inst);
    return total;
}

Duration span_of(std::span<const Duration> durations, Duration setup) noexcept {
    if (durations.empty()) return 0;
    Duration total = setup * static_cast<Duration>(durations.size() - 1);
    for (Duration d : durations) total += d;
    return total;
}

ValidationReport validate(const Schedule& sched, const Instance& inst) {
    ValidationReport report;
    auto& out = report.violations;
    if (sched.machine_count() != inst.machine_count()) {
        out.push_back("schedule has " + std::to_string(sched.machine_count()) + " machines, instance has " +
                      std::to_string(inst.machine_count()));
    }
    const int n = inst.job_count();
    std::vector<int> seen(static_cast<std::size_t>(n), 0);
    for (std::size_t k = 0; k < sched.machines.size(); ++k) {
        for (const Batch& b : sched.machines[k]) {
            bool in_range = true;
            for (int j : b.jobs()) {
                if (j < 0 || j >= n) {
                    out.push_back("job index " + std::to_string(j + 1) + " out of range on machine " +
                                  std::to_string(k + 1));
                    in_range = false;
                } else {
                    ++seen[static_cast<std::size_t>(j)];
                }
            }
            if (in_range && b.is_pair() && !inst.graph().adjacent(b.first(), b.second())) {
                out.push_back("incompatible pair [" + std::to_string(b.first() + 1) + "," +
                              std::to_string(b.second() + 1) + "] on machine " + std::to_string(k + 1));
            }
        }
    }
    for (int j = 0; j < n; ++j) {
        const int c = seen[static_cast<std::size_t>(j)];
        if (c == 0) out.push_back("missing job " + std::to_string(j + 1));
        if (c > 1) out.push_back("duplicate job " + std::to_string(j + 1) + " (" + std::to_string(c) + " times)");
    }
    return report;
}

Duration makespan(const Schedule& sched, const Instance& inst) {
    auto report = validate(sched, inst);
    if (!report.ok()) throw InfeasibleSchedule(std::move(report.violations));
    Duration best = 0;
    for (const auto& seq : sched.machines) best = std::max(best, machine_span(seq, inst));
    return best;
}

Schedule list_schedule(std::span<const Batch> batches, const Instance& inst) {
    const int m = inst.machine_count();
    Schedule sched(m);
    std::vector<Duration> span(static_cast<std::size_t>(m), 0);
    for (const Batch& b : batches) {
        const Duration d = batch_time(b, inst);
        int pick = 0;
        Duration pick_end = 0;
        for (int k = 0; k < m; ++k) {
            const auto& seq = sched.machines[static_cast<std::size_t>(k)];
            const Duration end = seq.empty() ? d : span[static_cast<std::size_t>(k)] + inst.setup() + d;
            if (k == 0 || end < pick_end) {
                pick = k;
                pick_end = end;
            }
        }
        sched.machines[static_cast<std::size_t>(pick)].push_back(b);
        span[static_cast<std::size_t>(pick)] = pick_end;
    }
    return sched;
}

std::vector<Batch> batches_from_pairs(std::span<const Edge> pairs, int job_count) {
    std::vector<Batch> out;
    std::vector<char> covered(static_cast<std::size_t>(job_count), 0);
    for (const Edge& e : pairs) {
        out.emplace_back(e.u, e.v);
        covered[static_cast<std::size_t>(e.u)] = 1;
        covered[static_cast<std::size_t>(e.v)] = 1;
    }
    for (int j = 0; j < job_count; ++j) {
        if (!covered[static_cast<std::size_t>(j)]) out.emplace_back(j);
    }
    return out;
}

}  // namespace bsched
