// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "batchsched/bench.hpp"
#include "batchsched/errors.hpp"
#include "batchsched/exact.hpp"
#include "batchsched/heuristics.hpp"
#include "batchsched/matching.hpp"
#include "batchsched/milp.hpp"
#include "batchsched/oracle.hpp"
#include "batchsched/rng.hpp"

using namespace bsched;

namespace {

constexpr double kDensities[] = {12.5, 25.0, 50.0, 75.0, 100.0};

struct Outcome {
    bool ok = true;
    std::string detail;
};

CompatGraph random_graph(int n, double density_pct, Rng& rng) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.unit() < density_pct / 100.0) edges.push_back({i, j});
    return CompatGraph(n, edges);
}

double pick_density(Rng& rng) { return kDensities[rng.below(std::size(kDensities))]; }

std::string fmt(const char* pattern, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

Outcome matching_correctness() {
    Rng rng(101);
    int weight_bad = 0, card_bad = 0;
    for (int t = 0; t < 1000; ++t) {
        const int n = static_cast<int>(rng.between(1, 12));
        auto g = random_graph(n, pick_density(rng), rng);
        std::vector<Weight> w(g.edge_count());
        for (auto& x : w) x = rng.between(1, 100);
        const WeightedGraph wg(g, w);
        const auto fast = max_weighted_matching(wg);
        const auto slow = brute_force_matching(wg, MatchObjective::Weight);
        if (!is_matching(fast, g) || matching_weight(fast, wg) != matching_weight(slow, wg)) ++weight_bad;
        const auto card = max_cardinality_matching(g);
        if (!is_matching(card, g) || card.size() != brute_force_matching(wg, MatchObjective::Cardinality).size()) ++card_bad;
    }
    return {weight_bad == 0 && card_bad == 0,
            fmt("1000 graphs, weight mismatches %d, cardinality mismatches %d", weight_bad, card_bad)};
}

Outcome single_machine() {
    Rng rng(202);
    int bad = 0, formula_bad = 0;
    for (BatchMode mode : {BatchMode::Max, BatchMode::Sum}) {
        for (int t = 0; t < 500; ++t) {
            const int n = static_cast<int>(rng.between(1, 8));
            std::vector<Duration> p(static_cast<std::size_t>(n));
            for (auto& x : p) x = rng.between(1, 30);
            const Duration s = rng.between(0, 6);
            const Instance inst(p, 1, s, mode, random_graph(n, kDensities[t % 5], rng));
            const auto sol = mode == BatchMode::Max ? exact::solve_b1_max(inst) : exact::solve_b1_sum(inst);
            if (sol.closed_form != makespan(sol.schedule, inst)) ++formula_bad;
            if (sol.makespan != oracle::brute_force_solve(inst).optimum) ++bad;
        }
    }
    return {bad == 0 && formula_bad == 0,
            fmt("1000 instances (500 per mode), oracle mismatches %d, closed-form mismatches %d", bad, formula_bad)};
}

Outcome identical_times() {
    Rng rng(303);
    int bad = 0, formula_bad = 0, alg4_worse = 0;
    for (BatchMode mode : {BatchMode::Max, BatchMode::Sum}) {
        for (int t = 0; t < 500; ++t) {
            const int n = static_cast<int>(rng.between(1, 8));
            const int m = static_cast<int>(rng.between(2, 3));
            const Duration p = rng.between(1, 20);
            const Duration s = rng.between(0, 6);
            const Instance inst(std::vector<Duration>(static_cast<std::size_t>(n), p), m, s, mode,
                                random_graph(n, kDensities[t % 5], rng));
            const auto sol = mode == BatchMode::Max ? exact::solve_bm_max_identical(inst) : exact::solve_bm_sum_identical(inst);
            const auto built = makespan(sol.schedule, inst);
            if (sol.closed_form != built) ++formula_bad;
            const auto optimum = oracle::brute_force_solve(inst).optimum;
            if (built != optimum) ++bad;
            if (mode == BatchMode::Sum) {
                const auto alg4 = exact::algorithm4_sum_identical(inst);
                const auto alg4_built = makespan(alg4.schedule, inst);
                const auto formula = exact::sum_identical_formula(n, static_cast<int>(alg4.matching.size()), m, p, s);
                if (formula.value != alg4_built) ++formula_bad;
                alg4_worse += alg4_built > optimum;
            }
        }
    }
    return {bad == 0 && formula_bad == 0,
            fmt("1000 instances (500 per mode), oracle mismatches %d, formula/construction mismatches %d; "
                "literal Algorithm 4 above the optimum on %d sum instances",
                bad, formula_bad, alg4_worse)};
}

Outcome two_values() {
    Rng rng(404);
    int bad = 0;
    int regime[2] = {0, 0}, parity[2] = {0, 0}, fired = 0;
    for (int t = 0; t < 300; ++t) {
        const int n = static_cast<int>(rng.between(2, 10));
        const Duration p = rng.between(1, 15);
        const Duration s = rng.between(0, 5);
        const bool loose = t % 2 == 0;  // 2p + s >= q
        const Duration q = loose ? rng.between(p + 1, 2 * p + s) : rng.between(2 * p + s + 1, 2 * p + s + 30);
        std::vector<Duration> times(static_cast<std::size_t>(n));
        for (auto& x : times) x = rng.below(2) ? q : p;
        times[0] = p;
        times[1] = q;
        const Instance inst(times, 2, s, BatchMode::Max, random_graph(n, kDensities[t % 5], rng));
        const auto sol = exact::solve_b2_max_two_values(inst);
        const auto built = makespan(sol.schedule, inst);
        if (built != sol.makespan || built != oracle::brute_force_solve(inst).optimum) ++bad;
        ++regime[2 * p + s >= q ? 0 : 1];
        ++parity[(sol.seed.profile.n_p + sol.seed.profile.n_q) % 2];
        fired += sol.guard_fired;
    }
    const bool coverage = regime[0] > 0 && regime[1] > 0 && parity[0] > 0 && parity[1] > 0;
    return {bad == 0 && coverage,
            fmt("300 instances, oracle mismatches %d; 2p+s>=q %d / 2p+s<q %d; n_p+n_q even %d / odd %d; search ran %d",
                bad, regime[0], regime[1], parity[0], parity[1], fired)};
}

Outcome milp_counts() {
    int bad = 0;
    for (int n = 1; n <= 50; ++n) {
        for (int m = 1; m <= 5; ++m) {
            const Instance inst(std::vector<Duration>(static_cast<std::size_t>(n), 1), m, 1, BatchMode::Max,
                                CompatGraph::complete(n));
            const auto model = milp::build_model(inst);
            const auto bin = static_cast<std::size_t>(m * n * (n + 1) / 2);
            const auto rows = static_cast<std::size_t>(n * (n + 5) / 2 + m);
            if (model.binary_count() != bin || model.continuous_count() != 1 || model.constraints.size() != rows) ++bad;
        }
    }
    return {bad == 0, fmt("250 (n, m) shapes, count mismatches %d", bad)};
}

Outcome milp_semantics() {
    Rng rng(606);
    std::vector<std::pair<int, int>> shapes;
    for (int n = 1; n <= 6; ++n)
        for (int m = 1; m <= 5; ++m)
            if (m * n * (n + 1) / 2 <= static_cast<int>(milp::kEnumerationLimit)) shapes.emplace_back(n, m);
    int bad = 0;
    for (int t = 0; t < 100; ++t) {
        const auto [n, m] = shapes[rng.below(shapes.size())];
        std::vector<Duration> p(static_cast<std::size_t>(n));
        for (auto& x : p) x = rng.between(1, 30);
        const Instance inst(p, m, rng.between(0, 5), BatchMode::Max, random_graph(n, kDensities[t % 5], rng));
        const auto model = milp::build_model(inst);
        const auto res = milp::enumerate_milp_optimum(model, inst);
        if (res.optimum != oracle::brute_force_solve(inst).optimum || res.optimum != makespan(res.witness, inst)) ++bad;
    }
    return {bad == 0, fmt("100 instances with <= %zu binaries, oracle mismatches %d", milp::kEnumerationLimit, bad)};
}

bench::GenSpec heuristic_cell(int n, int m, double density, std::uint64_t seed) {
    bench::GenSpec spec;
    spec.n = n;
    spec.m = m;
    spec.density_pct = density;
    spec.seed = seed;
    return spec;
}

Outcome heuristic_quality() {
    heuristics::HeuristicConfig cfg;
    cfg.iterations = 1000;
    bool ok = true;
    int infeasible = 0, non_monotone = 0, nondeterministic = 0;
    auto check_run = [&](const Instance& inst, const heuristics::HeuristicResult& r) {
        if (!validate(r.schedule, inst).ok() || makespan(r.schedule, inst) != r.makespan) ++infeasible;
        for (std::size_t i = 1; i < r.trace.size(); ++i)
            if (r.trace[i] > r.trace[i - 1]) ++non_monotone;
        if (r.trace.empty() || r.trace.back() != r.makespan || r.makespan > r.initial) ++non_monotone;
    };

    // n = 10 against the oracle.
    int hit1 = 0, hit2 = 0;
    int cap2 = 0;  // instances whose greedy batching can reach the optimum at all
    double gap1 = 0, gap2 = 0;
    for (int t = 0; t < 50; ++t) {
        const auto spec = heuristic_cell(10, 2 + t % 4, kDensities[t % 5], bench::instance_seed(707, static_cast<std::uint64_t>(t)));
        const auto inst = bench::generate_instance(spec);
        cfg.seed = spec.seed;
        const auto best = oracle::brute_force_solve(inst).optimum;
        const auto r1 = heuristics::h1(inst, cfg);
        const auto r2 = heuristics::h2(inst, cfg);
        check_run(inst, r1);
        check_run(inst, r2);
        if (r1.makespan < best || r2.makespan < best) ++infeasible;
        std::vector<Duration> dur;
        for (const auto& b : heuristics::greedy_batches(inst)) dur.push_back(batch_time(b, inst));
        cap2 += oracle::assign_batches_optimally(dur, inst.setup(), inst.machine_count()) == best;
        hit1 += r1.makespan == best;
        hit2 += r2.makespan == best;
        gap1 += heuristics::gap(r1.makespan, best) / 50;
        gap2 += heuristics::gap(r2.makespan, best) / 50;
        if (t < 5) {
            const auto again = heuristics::h1(inst, cfg);
            if (again.schedule != r1.schedule || again.trace != r1.trace) ++nondeterministic;
            const auto again2 = heuristics::h2(inst, cfg);
            if (again2.schedule != r2.schedule || again2.trace != r2.trace) ++nondeterministic;
        }
    }
    ok = ok && hit1 >= 45 && hit2 >= 45 && gap1 <= 0.01 && gap2 <= 0.01;

    // Larger cells against the best of both methods.
    double mid_gap1 = 0;
    int mid_count = 0;
    double sum1 = 0, sum2 = 0;
    int count = 0;
    for (int n : {20, 30, 40}) {
        for (int t = 0; t < 20; ++t) {
            const auto spec = heuristic_cell(n, 2 + t % 4, kDensities[t % 5],
                                             bench::instance_seed(808 + static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(t)));
            const auto inst = bench::generate_instance(spec);
            cfg.seed = spec.seed;
            const auto r1 = heuristics::h1(inst, cfg);
            const auto r2 = heuristics::h2(inst, cfg);
            check_run(inst, r1);
            check_run(inst, r2);
            const auto bs = std::min(r1.makespan, r2.makespan);
            const auto g1 = heuristics::gap(r1.makespan, bs);
            const auto g2 = heuristics::gap(r2.makespan, bs);
            if (n <= 30) {
                mid_gap1 += g1;
                ++mid_count;
            }
            sum1 += g1;
            sum2 += g2;
            ++count;
        }
    }
    mid_gap1 /= mid_count;
    ok = ok && mid_gap1 <= 0.05 && sum1 <= sum2 && infeasible == 0 && non_monotone == 0 && nondeterministic == 0;
    return {ok, fmt("n=10: H1 optimal %d/50 mean GAP %.4f, H2 optimal %d/50 mean GAP %.4f (H2 batching admits the "
                    "optimum on %d/50); n=20,30 H1 mean GAP %.4f; n=20..40 mean GAP H1 %.4f vs H2 %.4f; infeasible %d, "
                    "non-monotone %d, nondeterministic %d",
                    hit1, gap1, hit2, gap2, cap2, mid_gap1, sum1 / count, sum2 / count, infeasible, non_monotone,
                    nondeterministic)};
}

Outcome scale_smoke() {
    using clock = std::chrono::steady_clock;
    auto spec = heuristic_cell(400, 5, 50.0, 909);
    const auto inst = bench::generate_instance(spec);
    heuristics::HeuristicConfig cfg;
    cfg.iterations = 1000;
    cfg.seed = 909;
    auto t0 = clock::now();
    const auto r = heuristics::h2(inst, cfg);
    const double h2_time = std::chrono::duration<double>(clock::now() - t0).count();
    const bool valid = validate(r.schedule, inst).ok();

    Rng rng(910);
    const auto g = CompatGraph::complete(400);
    std::vector<Weight> w(g.edge_count());
    for (auto& x : w) x = rng.between(1, 100);
    t0 = clock::now();
    const auto mt = max_weighted_matching(WeightedGraph(g, w));
    const double match_time = std::chrono::duration<double>(clock::now() - t0).count();
    const bool ok = valid && h2_time < 60.0 && match_time < 10.0 && is_matching(mt, g);
    return {ok, fmt("H2 n=400 d=50%% iter=1000: %.2f s, %s; weighted matching on K400: %.2f s, %zu edges", h2_time,
                    valid ? "valid" : "INVALID", match_time, mt.size())};
}

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
};

}  // namespace

// With arguments, runs only the listed criterion numbers.
int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {1, "matching correctness", 30, matching_correctness},
        {2, "single-machine solvers vs oracle", 60, single_machine},
        {3, "identical-time solvers vs oracle", 60, identical_times},
        {4, "two-machine two-value solver vs oracle", 120, two_values},
        {5, "MILP variable and constraint counts", 5, milp_counts},
        {6, "MILP enumeration vs oracle", 120, milp_semantics},
        {7, "heuristic quality", 600, heuristic_quality},
        {8, "scale smoke test", 70, scale_smoke},
    };
    std::vector<int> wanted;
    for (int a = 1; a < argc; ++a) wanted.push_back(std::atoi(argv[a]));
    int failed = 0;
    for (const auto& c : criteria) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.budget_s) {
            out.ok = false;
            out.detail += fmt(" (over the %.0f s budget)", c.budget_s);
        }
        std::printf("%s criterion %d: %s: %s [%.1f s]\n", out.ok ? "PASS" : "FAIL", c.id, c.name, out.detail.c_str(), secs);
        std::fflush(stdout);
        failed += !out.ok;
    }
    return failed == 0 ? 0 : 1;
}
