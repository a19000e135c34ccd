#include <doctest.h>

#include "batchsched/errors.hpp"
#include "batchsched/oracle.hpp"
#include "helpers.hpp"

using namespace bsched;

TEST_SUITE("oracle") {
    TEST_CASE("tiny instances") {
        const Instance one({4}, 3, 2, BatchMode::Max, CompatGraph(1, {}));
        const auto r = oracle::brute_force_solve(one);
        CHECK(r.optimum == 4);
        CHECK(validate(r.witness, one).ok());

        const auto tri = oracle::brute_force_solve(testing::triangle());
        CHECK(tri.optimum == 11);
        CHECK(makespan(tri.witness, testing::triangle()) == 11);
    }

    TEST_CASE("sum mode on a 5-cycle") {
        const Instance c5({3, 3, 3, 3, 3}, 2, 1, BatchMode::Sum, testing::cycle(5));
        CHECK(oracle::brute_force_solve(c5).optimum == 10);
    }

    TEST_CASE("optimal assignment of fixed batches") {
        const std::vector<Duration> d{3, 3, 2};
        CHECK(oracle::assign_batches_optimally(d, 1, 2) == 6);
        CHECK(oracle::assign_batches_optimally(d, 1, 1) == 10);
        CHECK(oracle::assign_batches_optimally({}, 1, 2) == 0);
        const auto a = oracle::assign_batches_below(d, 1, 2, 7);
        CHECK(a.makespan == 6);
        CHECK(a.machine_of.size() == 3);
    }

    TEST_CASE("size limits") {
        const Instance big(std::vector<Duration>(11, 1), 2, 0, BatchMode::Max, CompatGraph(11, {}));
        CHECK_THROWS_AS(oracle::brute_force_solve(big), OracleLimit);
        const std::vector<Duration> many(oracle::kAssignmentLimit + 1, 1);
        CHECK_THROWS_AS(oracle::assign_batches_optimally(many, 0, 2), OracleLimit);
    }

    TEST_CASE("witness is always feasible and matches the optimum") {
        Rng rng(3);
        for (int t = 0; t < 100; ++t) {
            const auto inst = testing::random_instance(rng, static_cast<int>(rng.between(1, 7)),
                                                       static_cast<int>(rng.between(1, 3)),
                                                       t % 2 ? BatchMode::Sum : BatchMode::Max);
            const auto r = oracle::brute_force_solve(inst);
            CHECK(validate(r.witness, inst).ok());
            CHECK(makespan(r.witness, inst) == r.optimum);
        }
    }
}
