#include "batchsched/bench.hpp"

#include <algorithm>
#include <chrono>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "batchsched/dispatch.hpp"
#include "batchsched/errors.hpp"
#include "batchsched/oracle.hpp"
#include "batchsched/rng.hpp"

namespace bsched::bench {
namespace {

// SplitMix64 finaliser.
std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct Summary {
    double min = 0, mean = 0, max = 0;
};

Summary summarise(const std::vector<double>& xs) {
    if (xs.empty()) return {};
    Summary out{xs.front(), 0, xs.front()};
    double total = 0;
    for (double x : xs) {
        out.min = std::min(out.min, x);
        out.max = std::max(out.max, x);
        total += x;
    }
    out.mean = total / static_cast<double>(xs.size());
    // Keep min <= mean <= max despite rounding in the sum.
    out.mean = std::clamp(out.mean, out.min, out.max);
    return out;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream in(value);
    for (std::string item; std::getline(in, item, ',');) {
        auto t = trim(item);
        if (!t.empty()) out.push_back(std::move(t));
    }
    return out;
}

template <class T>
T parse_number(const std::string& text, int line, const std::string& key) {
    T value{};
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw InputError("config line " + std::to_string(line) + ": bad value '" + text + "' for " + key);
    }
    return value;
}

template <class T>
std::vector<T> parse_numbers(const std::string& value, int line, const std::string& key) {
    std::vector<T> out;
    for (const auto& item : split_list(value)) out.push_back(parse_number<T>(item, line, key));
    if (out.empty()) throw InputError("config line " + std::to_string(line) + ": " + key + " needs at least one value");
    return out;
}

}  // namespace

void check_spec(const GenSpec& spec) {
    if (spec.n < 1) throw InputError("n must be at least 1");
    if (spec.m < 1) throw InputError("m must be at least 1");
    if (!(spec.density_pct > 0.0 && spec.density_pct <= 100.0)) {
        throw InputError("density must lie in (0, 100], got " + std::to_string(spec.density_pct));
    }
    if (spec.p_min < 1 || spec.p_max < spec.p_min) throw InputError("processing-time range must satisfy 1 <= p_min <= p_max");
    if (spec.s_choices.empty()) throw InputError("at least one setup value is required");
    for (auto s : spec.s_choices)
        if (s < 0) throw InputError("setup values must be nonnegative");
}

Instance generate_instance(const GenSpec& spec) {
    check_spec(spec);
    Rng rng(spec.seed);
    std::vector<Duration> p(static_cast<std::size_t>(spec.n));
    for (auto& x : p) x = rng.between(spec.p_min, spec.p_max);
    const Duration s = spec.s_choices[rng.below(spec.s_choices.size())];
    const double prob = spec.density_pct / 100.0;
    std::vector<Edge> edges;
    for (int i = 0; i < spec.n; ++i)
        for (int j = i + 1; j < spec.n; ++j)
            if (rng.unit() < prob) edges.push_back({i, j});
    return Instance(std::move(p), spec.m, s, spec.mode, CompatGraph(spec.n, edges));
}

std::uint64_t instance_seed(std::uint64_t cell_seed, std::uint64_t index) { return mix(mix(cell_seed) ^ index); }

const char* to_string(BsSource source) noexcept {
    return source == BsSource::Oracle ? "oracle" : "best-of-methods";
}

BestKnown bs_policy(const Instance& inst, std::span<const Duration> results, std::optional<Duration> oracle_value) {
    if (inst.job_count() <= oracle::kDefaultJobLimit) {
        const auto v = oracle_value ? *oracle_value : oracle::brute_force_solve(inst).optimum;
        return {v, BsSource::Oracle};
    }
    if (results.empty()) throw InputError("no method result to take the best-known value from");
    return {*std::min_element(results.begin(), results.end()), BsSource::BestOfMethods};
}

RunReport run_experiment(std::span<const GenSpec> cells, std::span<const std::string> methods, int instances_per_cell,
                         const heuristics::HeuristicConfig& heuristic) {
    if (methods.empty()) throw InputError("at least one method is required");
    if (instances_per_cell < 1) throw InputError("instances_per_cell must be at least 1");
    RunReport report;
    for (const GenSpec& cell : cells) {
        check_spec(cell);
        const auto k = methods.size();
        std::vector<std::vector<double>> gaps(k), times(k);
        std::vector<int> skipped(k, 0), hits(k, 0);
        bool used_oracle = false, used_best = false;
        for (int idx = 0; idx < instances_per_cell; ++idx) {
            GenSpec spec = cell;
            spec.seed = instance_seed(cell.seed, static_cast<std::uint64_t>(idx));
            const Instance inst = generate_instance(spec);
            heuristics::HeuristicConfig cfg = heuristic;
            cfg.seed = heuristic.seed ^ spec.seed;

            std::vector<std::optional<Duration>> value(k);
            std::vector<double> elapsed(k, 0.0);
            std::optional<Duration> oracle_value;
            std::vector<Duration> ran;
            for (std::size_t mth = 0; mth < k; ++mth) {
                const auto start = std::chrono::steady_clock::now();
                try {
                    const auto out = solve(methods[mth], inst, cfg);
                    elapsed[mth] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                    value[mth] = out.makespan;
                    ran.push_back(out.makespan);
                    if (out.algorithm == "oracle") oracle_value = out.makespan;
                } catch (const WrongSubproblem&) {
                    ++skipped[mth];
                } catch (const OracleLimit&) {
                    ++skipped[mth];
                }
            }
            if (ran.empty()) continue;
            const auto bs = bs_policy(inst, ran, oracle_value);
            (bs.source == BsSource::Oracle ? used_oracle : used_best) = true;
            for (std::size_t mth = 0; mth < k; ++mth) {
                if (!value[mth]) continue;
                gaps[mth].push_back(heuristics::gap(*value[mth], bs.value));
                times[mth].push_back(elapsed[mth]);
                if (*value[mth] == bs.value) ++hits[mth];
            }
        }
        for (std::size_t mth = 0; mth < k; ++mth) {
            ReportRow row;
            row.n = cell.n;
            row.m = cell.m;
            row.density_pct = cell.density_pct;
            row.mode = cell.mode;
            row.method = methods[mth];
            row.instances = static_cast<int>(gaps[mth].size());
            row.skipped = skipped[mth];
            row.sol_count = hits[mth];
            const auto g = summarise(gaps[mth]);
            const auto t = summarise(times[mth]);
            row.gap_min = g.min;
            row.gap_mean = g.mean;
            row.gap_max = g.max;
            row.time_min_s = t.min;
            row.time_mean_s = t.mean;
            row.time_max_s = t.max;
            row.bs_source = used_oracle && used_best ? "mixed" : used_oracle ? "oracle" : used_best ? "best-of-methods" : "none";
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

std::string to_csv(const RunReport& report) {
    std::ostringstream out;
    out << "n,m,density,mode,method,instances,sol_count,gap_min,gap_mean,gap_max,time_min_s,time_mean_s,time_max_s\n";
    for (const auto& r : report.rows) {
        out << r.n << ',' << r.m << ',' << r.density_pct << ',' << to_string(r.mode) << ',' << r.method << ','
            << r.instances << ',' << r.sol_count << std::fixed << std::setprecision(6) << ',' << r.gap_min << ','
            << r.gap_mean << ',' << r.gap_max << ',' << r.time_min_s << ',' << r.time_mean_s << ',' << r.time_max_s
            << std::defaultfloat << '\n';
    }
    return out.str();
}

std::vector<GenSpec> ExperimentConfig::cells() const {
    std::vector<GenSpec> out;
    std::uint64_t index = 0;
    for (int n : sizes)
        for (int m : machines)
            for (double d : densities) {
                GenSpec spec{n, m, d, p_min, p_max, s_set, mode, instance_seed(seed, index++)};
                out.push_back(std::move(spec));
            }
    return out;
}

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const auto text = trim(raw);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) throw InputError("config line " + std::to_string(line) + ": expected key = value");
        const auto key = trim(std::string_view(text).substr(0, eq));
        const auto value = trim(std::string_view(text).substr(eq + 1));
        if (key == "sizes") {
            cfg.sizes = parse_numbers<int>(value, line, key);
        } else if (key == "machines") {
            cfg.machines = parse_numbers<int>(value, line, key);
        } else if (key == "densities") {
            cfg.densities = parse_numbers<double>(value, line, key);
        } else if (key == "p_min") {
            cfg.p_min = parse_number<Duration>(value, line, key);
        } else if (key == "p_max") {
            cfg.p_max = parse_number<Duration>(value, line, key);
        } else if (key == "s_set") {
            cfg.s_set = parse_numbers<Duration>(value, line, key);
        } else if (key == "iters") {
            cfg.iters = parse_number<int>(value, line, key);
        } else if (key == "seed") {
            cfg.seed = parse_number<std::uint64_t>(value, line, key);
        } else if (key == "methods") {
            cfg.methods = split_list(value);
            if (cfg.methods.empty()) throw InputError("config line " + std::to_string(line) + ": methods is empty");
        } else if (key == "instances_per_cell") {
            cfg.instances_per_cell = parse_number<int>(value, line, key);
        } else if (key == "mode") {
            if (value == "max") cfg.mode = BatchMode::Max;
            else if (value == "sum") cfg.mode = BatchMode::Sum;
            else throw InputError("config line " + std::to_string(line) + ": mode must be max or sum");
        } else {
            throw InputError("config line " + std::to_string(line) + ": unknown key '" + key + "'");
        }
    }
    if (cfg.iters < 1) throw InputError("iters must be at least 1");
    if (cfg.instances_per_cell < 1) throw InputError("instances_per_cell must be at least 1");
    for (auto& spec : cfg.cells()) check_spec(spec);
    return cfg;
}

ExperimentConfig parse_config(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

}  // namespace bsched::bench
