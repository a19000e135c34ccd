#include <doctest.h>

#include "batchsched/errors.hpp"
#include "batchsched/milp.hpp"
#include "batchsched/oracle.hpp"
#include "helpers.hpp"

using namespace bsched;

TEST_SUITE("milp") {
    TEST_CASE("model sizes") {
        const Instance two({3, 2}, 1, 1, BatchMode::Max, testing::path(2));
        const auto m2 = milp::build_model(two);
        CHECK(m2.binary_count() == 3);
        CHECK(m2.continuous_count() == 1);
        CHECK(m2.constraints.size() == 8);

        const Instance four({1, 2, 3, 4}, 2, 1, BatchMode::Max, testing::path(4));
        const auto m4 = milp::build_model(four);
        CHECK(m4.binary_count() == 20);
        CHECK(m4.constraints.size() == 20);
    }

    TEST_CASE("one job") {
        const Instance one({6}, 1, 2, BatchMode::Max, CompatGraph(1, {}));
        const auto model = milp::build_model(one);
        CHECK(model.find("y_1_1").has_value());
        CHECK(milp::enumerate_milp_optimum(model, one).optimum == 6);
    }

    TEST_CASE("sum mode is refused") {
        CHECK_THROWS_AS(milp::build_model(testing::triangle(1, BatchMode::Sum)), WrongSubproblem);
    }

    TEST_CASE("LP text round trip") {
        const auto model = milp::build_model(testing::triangle(2));
        const auto text = milp::export_lp(model);
        CHECK(text.find("Minimize") != std::string::npos);
        CHECK(milp::parse_lp(text) == model);
        CHECK(milp::export_lp(milp::parse_lp(text)) == text);
    }

    TEST_CASE("enumeration matches the oracle") {
        CHECK(milp::enumerate_milp_optimum(milp::build_model(testing::triangle()), testing::triangle()).optimum == 11);
        Rng rng(9);
        for (int t = 0; t < 40; ++t) {
            const auto inst = testing::random_instance(rng, static_cast<int>(rng.between(1, 4)), 1, BatchMode::Max);
            const auto model = milp::build_model(inst);
            if (model.binary_count() > milp::kEnumerationLimit) continue;
            const auto r = milp::enumerate_milp_optimum(model, inst);
            CHECK(r.optimum == oracle::brute_force_solve(inst).optimum);
            CHECK(validate(r.witness, inst).ok());
        }
    }

    TEST_CASE("schedule and assignment convert both ways") {
        const auto inst = testing::triangle(2);
        const auto model = milp::build_model(inst);
        const auto best = oracle::brute_force_solve(inst);
        const auto values = milp::assignment_from_schedule(model, best.witness, inst);
        for (const auto& row : model.constraints) CHECK(milp::row_satisfied(model, row, values, best.optimum));
        CHECK(makespan(milp::schedule_from_assignment(model, values), inst) == best.optimum);
    }
}
