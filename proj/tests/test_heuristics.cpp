#include <doctest.h>

#include "batchsched/errors.hpp"
#include "batchsched/heuristics.hpp"
#include "batchsched/oracle.hpp"
#include "helpers.hpp"

using namespace bsched;
using namespace bsched::heuristics;

TEST_SUITE("heuristics") {
    TEST_CASE("degenerate inputs") {
        const Instance one({5}, 2, 1, BatchMode::Max, CompatGraph(1, {}));
        CHECK(h1(one, {}).makespan == 5);
        CHECK(h2(one, {}).makespan == 5);

        const Instance apart({2, 3, 4, 5}, 1, 2, BatchMode::Max, CompatGraph(4, {}));
        CHECK(h2(apart, {}).makespan == 14 + 2 * 3);

        const Instance pair({5, 3}, 1, 1, BatchMode::Max, testing::path(2));
        CHECK(h2(pair, {}).makespan == 5);
    }

    TEST_CASE("argument checks") {
        CHECK_THROWS_AS(h1(testing::triangle(1), {}), WrongSubproblem);
        CHECK_THROWS_AS(h1(testing::triangle(2, BatchMode::Sum), {}), WrongSubproblem);
        CHECK_THROWS_AS(h2(testing::triangle(2, BatchMode::Sum), {}), WrongSubproblem);
        CHECK_THROWS_AS(h2(testing::triangle(2), {0, 1}), InputError);
        CHECK_THROWS_AS(gap(5, 0), InputError);
    }

    TEST_CASE("gap") {
        CHECK(gap(11, 11) == 0.0);
        CHECK(gap(12, 10) == doctest::Approx(0.2));
    }

    TEST_CASE("greedy batching pairs long jobs first") {
        const Instance inst({1, 9, 8, 2}, 2, 1, BatchMode::Max, CompatGraph::complete(4));
        const auto b = greedy_batches(inst);
        REQUIRE(b.size() == 2);
        CHECK(b[0] == Batch(1, 2));
        CHECK(b[1] == Batch(3, 0));
    }

    TEST_CASE("runs are deterministic, monotone, feasible and no better than optimal") {
        Rng rng(21);
        for (int t = 0; t < 60; ++t) {
            const auto inst = testing::random_instance(rng, static_cast<int>(rng.between(2, 9)),
                                                       static_cast<int>(rng.between(2, 3)), BatchMode::Max);
            const HeuristicConfig cfg{50, static_cast<std::uint64_t>(t)};
            const auto opt = oracle::brute_force_solve(inst).optimum;
            for (auto* run : {&h1, &h2}) {
                const auto a = run(inst, cfg);
                const auto b = run(inst, cfg);
                CHECK(a.schedule == b.schedule);
                CHECK(a.trace == b.trace);
                CHECK(validate(a.schedule, inst).ok());
                CHECK(makespan(a.schedule, inst) == a.makespan);
                CHECK(a.makespan >= opt);
                CHECK(a.makespan <= a.initial);
                CHECK(std::is_sorted(a.trace.rbegin(), a.trace.rend()));
                CHECK(a.trace.back() == a.makespan);
            }
        }
    }
}
