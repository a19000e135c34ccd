#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bsched {

/// Integral time units. Processing times, setup and makespans all use this.
using Duration = std::int64_t;

enum class BatchMode { Max, Sum };

const char* to_string(BatchMode mode) noexcept;

/// Undirected edge with u < v (0-based job indices).
struct Edge {
    int u = 0;
    int v = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on jobs 0..n-1. Adjacent jobs may share a batch.
class CompatGraph {
public:
    CompatGraph() = default;
    /// Throws InputError on self-loops, duplicate edges or out-of-range endpoints.
    CompatGraph(int vertex_count, std::span<const Edge> edges);
    CompatGraph(int vertex_count, std::initializer_list<std::pair<int, int>> edges);

    static CompatGraph complete(int vertex_count);

    int vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    bool adjacent(int i, int j) const noexcept;
    /// Sorted ascending.
    std::span<const int> neighbors(int i) const { return adj_[static_cast<std::size_t>(i)]; }
    /// Sorted lexicographically, each with u < v.
    std::span<const Edge> edges() const noexcept { return edges_; }

    /// Induced subgraph on the kept vertices, relabelled 0..k-1 in the order given.
    CompatGraph induced(std::span<const int> keep) const;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<std::uint8_t> matrix_;
};

class Instance {
public:
    static constexpr int kCapacity = 2;

    /// Throws InputError unless every processing time is positive, machines >= 1,
    /// setup >= 0 and the graph has one vertex per job.
    Instance(std::vector<Duration> proc_times, int machine_count, Duration setup, BatchMode mode,
             CompatGraph graph);

    int job_count() const noexcept { return static_cast<int>(proc_.size()); }
    int machine_count() const noexcept { return machines_; }
    Duration setup() const noexcept { return setup_; }
    BatchMode mode() const noexcept { return mode_; }
    const CompatGraph& graph() const noexcept { return graph_; }
    std::span<const Duration> proc_times() const noexcept { return proc_; }
    Duration proc(int job) const { return proc_[static_cast<std::size_t>(job)]; }
    Duration total_proc() const noexcept;
    Duration max_proc() const noexcept;

    Instance with_machines(int machine_count) const;

private:
    std::vector<Duration> proc_;
    int machines_;
    Duration setup_;
    BatchMode mode_;
    CompatGraph graph_;
};

/// One or two jobs processed together. Pairs are stored with the smaller index first.
class Batch {
public:
    explicit Batch(int job) : jobs_{job, -1}, size_(1) {}
    Batch(int a, int b);

    int size() const noexcept { return size_; }
    bool is_pair() const noexcept { return size_ == 2; }
    int first() const noexcept { return jobs_[0]; }
    /// Only meaningful for pairs.
    int second() const noexcept { return jobs_[1]; }
    std::span<const int> jobs() const noexcept { return {jobs_.data(), static_cast<std::size_t>(size_)}; }
    bool contains(int job) const noexcept { return jobs_[0] == job || (size_ == 2 && jobs_[1] == job); }

    friend bool operator==(const Batch&, const Batch&) = default;

private:
    std::array<int, 2> jobs_;
    int size_;
};

using MachineSequence = std::vector<Batch>;

struct Schedule {
    std::vector<MachineSequence> machines;

    Schedule() = default;
    explicit Schedule(int machine_count) : machines(static_cast<std::size_t>(machine_count)) {}

    int machine_count() const noexcept { return static_cast<int>(machines.size()); }
    std::size_t batch_count() const noexcept;

    friend bool operator==(const Schedule&, const Schedule&) = default;
};

struct ValidationReport {
    std::vector<std::string> violations;

    bool ok() const noexcept { return violations.empty(); }
};

/// Throws InputError for an empty, out-of-range or incompatible batch.
Duration batch_time(const Batch& batch, const Instance& inst);

/// Sum of batch times plus one setup between consecutive batches; 0 when empty.
Duration machine_span(std::span<const Batch> seq, const Instance& inst);

/// Throws InfeasibleSchedule when validate() reports anything.
Duration makespan(const Schedule& sched, const Instance& inst);

ValidationReport validate(const Schedule& sched, const Instance& inst);

/// Span of a machine holding batches with the given durations.
Duration span_of(std::span<const Duration> durations, Duration setup) noexcept;

/// Places batches in the given order, each on the machine where it would finish
/// earliest (lowest index on ties).
Schedule list_schedule(std::span<const Batch> batches, const Instance& inst);

/// Pairs from `pairs` plus singletons for every job not covered, in job order.
std::vector<Batch> batches_from_pairs(std::span<const Edge> pairs, int job_count);

}  // namespace bsched
