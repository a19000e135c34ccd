#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "batchsched/heuristics.hpp"
#include "batchsched/model.hpp"

namespace bsched::bench {

/// One benchmark cell: random instances with n jobs on m machines, an
/// Erdős–Rényi compatibility graph of the given edge density, processing
/// times uniform in [p_min, p_max] and a setup drawn per instance from
/// s_choices.
struct GenSpec {
    int n = 10;
    int m = 2;
    double density_pct = 50.0;
    Duration p_min = 10;
    Duration p_max = 100;
    std::vector<Duration> s_choices{2, 3, 4};
    BatchMode mode = BatchMode::Max;
    std::uint64_t seed = 0;
};

/// Throws InputError unless n >= 1, m >= 1, 0 < density <= 100,
/// 1 <= p_min <= p_max and s_choices is nonempty and nonnegative.
void check_spec(const GenSpec& spec);

/// Deterministic in the spec. Draw order: processing times, setup, then one
/// uniform draw per pair (i, j), i < j, in lexicographic order.
Instance generate_instance(const GenSpec& spec);

/// Seed for instance `index` of a cell seeded with `cell_seed`.
std::uint64_t instance_seed(std::uint64_t cell_seed, std::uint64_t index);

enum class BsSource { Oracle, BestOfMethods };

const char* to_string(BsSource source) noexcept;

struct BestKnown {
    Duration value = 0;
    BsSource source = BsSource::Oracle;
};

/// Best-known value used as the GAP denominator: the oracle optimum when the
/// instance is within the oracle's job limit (reusing `oracle_value` when
/// already computed), otherwise the minimum of `results`. Throws InputError
/// when that minimum is needed and `results` is empty.
BestKnown bs_policy(const Instance& inst, std::span<const Duration> results,
                    std::optional<Duration> oracle_value = std::nullopt);

struct ReportRow {
    int n = 0;
    int m = 0;
    double density_pct = 0;
    BatchMode mode = BatchMode::Max;
    std::string method;
    int instances = 0;  // instances the method ran on
    int skipped = 0;    // instances where the method does not apply
    int sol_count = 0;  // instances where the method hit the best-known value
    double gap_min = 0, gap_mean = 0, gap_max = 0;
    double time_min_s = 0, time_mean_s = 0, time_max_s = 0;
    /// Where the cell's best-known values came from; "mixed" if both policies applied.
    std::string bs_source;
};

struct RunReport {
    std::vector<ReportRow> rows;
};

/// Runs every method on `instances_per_cell` instances of every cell. A
/// method that does not apply to an instance is counted as skipped. Rows
/// come out cell by cell in method order.
RunReport run_experiment(std::span<const GenSpec> cells, std::span<const std::string> methods, int instances_per_cell,
                         const heuristics::HeuristicConfig& heuristic);

/// Header n,m,density,mode,method,instances,sol_count,gap_min,gap_mean,gap_max,
/// time_min_s,time_mean_s,time_max_s and one line per row.
std::string to_csv(const RunReport& report);

/// Contents of a bench config file.
struct ExperimentConfig {
    std::vector<int> sizes{10};
    std::vector<int> machines{2};
    std::vector<double> densities{50.0};
    Duration p_min = 10;
    Duration p_max = 100;
    std::vector<Duration> s_set{2, 3, 4};
    int iters = heuristics::kDefaultIterations;
    std::uint64_t seed = 1;
    std::vector<std::string> methods{"h1", "h2"};
    int instances_per_cell = 50;
    BatchMode mode = BatchMode::Max;

    /// One GenSpec per (size, machines, density) combination, in that nesting order.
    std::vector<GenSpec> cells() const;
};

/// `key = value` lines; lists are comma separated; '#' starts a comment.
/// Keys: sizes, machines, densities, p_min, p_max, s_set, iters, seed,
/// methods, instances_per_cell, mode. Throws InputError naming the line on
/// unknown keys or bad values.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config(const std::string& text);

}  // namespace bsched::bench
