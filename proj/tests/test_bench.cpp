#include <doctest.h>

#include <cmath>

#include "batchsched/bench.hpp"
#include "batchsched/errors.hpp"
#include "batchsched/io.hpp"
#include "helpers.hpp"

using namespace bsched;
using namespace bsched::bench;

TEST_SUITE("bench") {
    TEST_CASE("generator respects its parameters") {
        GenSpec spec;
        spec.n = 12;
        spec.density_pct = 100;
        const auto full = generate_instance(spec);
        CHECK(full.graph().edge_count() == 66);
        for (auto p : full.proc_times()) CHECK((p >= spec.p_min && p <= spec.p_max));
        CHECK((full.setup() >= 2 && full.setup() <= 4));

        spec.density_pct = 0;
        CHECK_THROWS_AS(generate_instance(spec), InputError);
        spec.density_pct = 50;
        spec.p_min = 0;
        CHECK_THROWS_AS(generate_instance(spec), InputError);
    }

    TEST_CASE("generator is deterministic per seed") {
        GenSpec spec;
        spec.n = 30;
        spec.seed = 77;
        const auto a = io::format_instance(generate_instance(spec));
        CHECK(a == io::format_instance(generate_instance(spec)));
        spec.seed = 78;
        CHECK(a != io::format_instance(generate_instance(spec)));
        CHECK(instance_seed(1, 0) != instance_seed(1, 1));
        CHECK(instance_seed(1, 0) == instance_seed(1, 0));
    }

    TEST_CASE("empirical density is close to the target") {
        GenSpec spec;
        spec.n = 200;
        spec.density_pct = 30;
        const auto inst = generate_instance(spec);
        const double pairs = 200.0 * 199.0 / 2.0;
        const double sd = std::sqrt(pairs * 0.3 * 0.7);
        CHECK(std::abs(static_cast<double>(inst.graph().edge_count()) - 0.3 * pairs) < 3 * sd);
    }

    TEST_CASE("best-known policy") {
        GenSpec spec;
        spec.n = 6;
        const auto small = generate_instance(spec);
        const std::vector<Duration> results{500, 400};
        const auto given = bs_policy(small, results, Duration{123});
        CHECK(given.value == 123);
        CHECK(given.source == BsSource::Oracle);
        CHECK(bs_policy(small, results).source == BsSource::Oracle);

        spec.n = 14;
        const auto large = generate_instance(spec);
        const auto best = bs_policy(large, results);
        CHECK(best.value == 400);
        CHECK(best.source == BsSource::BestOfMethods);
        CHECK_THROWS_AS(bs_policy(large, {}), InputError);
    }

    TEST_CASE("oracle-only experiment has zero gap") {
        GenSpec cell;
        cell.n = 6;
        const std::vector<GenSpec> cells{cell};
        const std::vector<std::string> methods{"oracle", "tux"};
        const auto report = run_experiment(cells, methods, 5, {20, 1});
        REQUIRE(report.rows.size() == 2);
        const auto& row = report.rows[0];
        CHECK(row.instances == 5);
        CHECK(row.sol_count == 5);
        CHECK(row.gap_max == 0.0);
        CHECK(row.bs_source == "oracle");
        CHECK(report.rows[1].instances + report.rows[1].skipped == 5);
        const auto csv = to_csv(report);
        CHECK(csv.rfind("n,m,density,mode,method,instances,sol_count,gap_min,gap_mean,gap_max,time_min_s,time_mean_s,"
                        "time_max_s\n",
                        0) == 0);
    }

    TEST_CASE("config parsing") {
        const auto cfg = parse_config("# demo\nsizes = 10, 20\nmachines = 2,3\ndensities = 25\n"
                                      "s_set = 1\niters = 5\nmethods = h1\ninstances_per_cell = 2\nmode = max\n");
        CHECK(cfg.sizes == std::vector<int>{10, 20});
        CHECK(cfg.cells().size() == 4);
        CHECK(cfg.iters == 5);
        CHECK(cfg.methods == std::vector<std::string>{"h1"});
        CHECK_THROWS_AS(parse_config("colour = red\n"), InputError);
        CHECK_THROWS_AS(parse_config("sizes = ten\n"), InputError);
        CHECK_THROWS_AS(parse_config("densities = 0\n"), InputError);
        CHECK_THROWS_AS(parse_config("sizes\n"), InputError);
    }
}
