#include <doctest.h>

#include <string>

#include "batchsched/errors.hpp"
#include "batchsched/io.hpp"
#include "helpers.hpp"

using namespace bsched;

namespace {

std::string error_of(std::string_view text) {
    try {
        io::parse_instance(text);
    } catch (const InputError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_SUITE("io") {
    TEST_CASE("instance round trip") {
        const auto inst = testing::triangle(2, BatchMode::Sum);
        const auto text = io::format_instance(inst);
        CHECK(text == "3 2 1 sum\n3 5 7\n1 2\n1 3\n2 3\n");
        const auto back = io::parse_instance(text);
        CHECK(io::format_instance(back) == text);
        CHECK(back.mode() == BatchMode::Sum);
        CHECK(back.graph().adjacent(0, 2));
    }

    TEST_CASE("comments and blank lines are skipped") {
        const auto inst = io::parse_instance("# header\n\n2 1 0 max\n# times\n4 6\n\n1 2\n");
        CHECK(inst.job_count() == 2);
        CHECK(inst.graph().edge_count() == 1);
    }

    TEST_CASE("errors carry line and column") {
        CHECK(error_of("").find("line 1") != std::string::npos);
        CHECK(error_of("2 1 0 max\n4 x\n").find("line 2, column 3") != std::string::npos);
        CHECK(error_of("2 1 0 avg\n4 5\n").find("line 1, column 7") != std::string::npos);
        CHECK(error_of("2 1 0 max\n4 5\n1 3\n").find("line 3, column 3") != std::string::npos);
        CHECK(error_of("2 1 0 max\n4 5\n1 1\n").find("self-loop") != std::string::npos);
        CHECK(error_of("2 1 0 max\n4 5\n1 2\n2 1\n").find("duplicate edge") != std::string::npos);
        CHECK(error_of("2 1 0 max\n4\n").find("expected 2 processing times") != std::string::npos);
        CHECK(error_of("2 1 0 max\n4 0\n").find("positive") != std::string::npos);
    }

    TEST_CASE("schedule round trip") {
        Schedule s(2);
        s.machines[0] = {Batch(1, 2), Batch(0)};
        const auto text = io::format_schedule(s, 11);
        CHECK(text == "[2,3] [1]\n\nCmax 11\n");
        const auto back = io::parse_schedule(text);
        CHECK(back.schedule == s);
        REQUIRE(back.cmax);
        CHECK(*back.cmax == 11);
    }

    TEST_CASE("malformed schedules are rejected") {
        CHECK_THROWS_AS(io::parse_schedule("[1,2\nCmax 3\n"), InputError);
        CHECK_THROWS_AS(io::parse_schedule("[0]\n"), InputError);
        CHECK_THROWS_AS(io::parse_schedule("[2,2]\n"), InputError);
    }
}
