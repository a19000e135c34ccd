#include <doctest.h>

#include <algorithm>

#include "batchsched/errors.hpp"
#include "batchsched/model.hpp"
#include "helpers.hpp"

using namespace bsched;
using testing::triangle;

TEST_SUITE("model") {
    TEST_CASE("graph rejects bad edges") {
        CHECK_THROWS_AS(CompatGraph(3, {{0, 0}}), InputError);
        CHECK_THROWS_AS(CompatGraph(3, {{0, 3}}), InputError);
        CHECK_THROWS_AS(CompatGraph(3, {{0, 1}, {1, 0}}), InputError);
        const CompatGraph g(4, {{2, 1}, {0, 3}});
        CHECK(g.adjacent(1, 2));
        CHECK(g.adjacent(2, 1));
        CHECK_FALSE(g.adjacent(0, 1));
        REQUIRE(g.edge_count() == 2);
        CHECK(g.edges()[0] == Edge{0, 3});
        CHECK(g.edges()[1] == Edge{1, 2});
    }

    TEST_CASE("complete graph and induced subgraph") {
        const auto k5 = CompatGraph::complete(5);
        CHECK(k5.edge_count() == 10);
        const std::vector<int> keep{4, 1, 2};
        const auto sub = k5.induced(keep);
        CHECK(sub.vertex_count() == 3);
        CHECK(sub.edge_count() == 3);
        const auto p = testing::path(4).induced(std::vector<int>{0, 2, 3});
        CHECK(p.edge_count() == 1);
        CHECK(p.adjacent(1, 2));
    }

    TEST_CASE("instance validation") {
        CHECK_THROWS_AS(Instance({}, 1, 0, BatchMode::Max, CompatGraph(0, {})), InputError);
        CHECK_THROWS_AS(Instance({1, 0}, 1, 0, BatchMode::Max, CompatGraph(2, {})), InputError);
        CHECK_THROWS_AS(Instance({1}, 0, 0, BatchMode::Max, CompatGraph(1, {})), InputError);
        CHECK_THROWS_AS(Instance({1}, 1, -1, BatchMode::Max, CompatGraph(1, {})), InputError);
        CHECK_THROWS_AS(Instance({1, 2}, 1, 0, BatchMode::Max, CompatGraph(3, {})), InputError);
        const auto t = triangle();
        CHECK(t.total_proc() == 15);
        CHECK(t.max_proc() == 7);
        CHECK(t.with_machines(3).machine_count() == 3);
    }

    TEST_CASE("batch basics") {
        const Batch b(5, 2);
        CHECK(b.first() == 2);
        CHECK(b.second() == 5);
        CHECK(b.contains(5));
        CHECK_FALSE(b.contains(3));
        CHECK(Batch(4).size() == 1);
        CHECK_THROWS_AS(Batch(1, 1), InputError);
    }

    TEST_CASE("batch time") {
        const Instance single({7}, 1, 1, BatchMode::Max, CompatGraph(1, {}));
        CHECK(batch_time(Batch(0), single) == 7);
        CHECK(batch_time(Batch(1, 2), triangle()) == 7);
        CHECK(batch_time(Batch(1, 2), triangle(1, BatchMode::Sum)) == 12);
        const Instance apart({1, 2}, 1, 0, BatchMode::Max, CompatGraph(2, {}));
        CHECK_THROWS_AS(batch_time(Batch(0, 1), apart), InputError);
        CHECK_THROWS_AS(batch_time(Batch(5), apart), InputError);
    }

    TEST_CASE("machine span and makespan") {
        const auto t = triangle();
        CHECK(machine_span({}, t) == 0);
        const std::vector<Batch> seq{Batch(1, 2), Batch(0)};
        CHECK(machine_span(seq, t) == 11);
        const Instance big_setup({7}, 1, 100, BatchMode::Max, CompatGraph(1, {}));
        CHECK(machine_span(std::vector<Batch>{Batch(0)}, big_setup) == 7);

        Schedule s(1);
        s.machines[0] = seq;
        CHECK(makespan(s, t) == 11);

        const Instance two({3, 5, 7}, 2, 1, BatchMode::Max, CompatGraph(3, {{1, 2}}));
        Schedule s2(2);
        s2.machines[0] = {Batch(1, 2), Batch(0)};
        CHECK(makespan(s2, two) == 11);
        s2.machines[0] = {Batch(1, 2)};
        s2.machines[1] = {Batch(0)};
        CHECK(makespan(s2, two) == 7);
    }

    TEST_CASE("validate reports duplicates, missing jobs and incompatible pairs") {
        const Instance inst({1, 1, 1}, 2, 0, BatchMode::Max, CompatGraph(3, {{1, 2}}));
        Schedule s(2);
        s.machines[0] = {Batch(0), Batch(1, 2)};
        CHECK(validate(s, inst).ok());

        s.machines[1] = {Batch(0)};
        auto report = validate(s, inst);
        REQUIRE_FALSE(report.ok());
        CHECK(report.violations.front().find("duplicate job 1") != std::string::npos);

        Schedule bad(2);
        bad.machines[0] = {Batch(0, 1), Batch(2)};
        report = validate(bad, inst);
        REQUIRE_FALSE(report.ok());
        CHECK(report.violations.front().find("incompatible pair [1,2]") != std::string::npos);

        Schedule partial(2);
        partial.machines[0] = {Batch(0)};
        report = validate(partial, inst);
        CHECK(std::count_if(report.violations.begin(), report.violations.end(),
                            [](const std::string& v) { return v.find("missing job") != std::string::npos; }) == 2);

        CHECK_FALSE(validate(Schedule(3), inst).ok());
        CHECK_THROWS_AS(makespan(bad, inst), InfeasibleSchedule);
    }

    TEST_CASE("span_of") {
        CHECK(span_of(std::vector<Duration>{}, 3) == 0);
        CHECK(span_of(std::vector<Duration>{4}, 3) == 4);
        CHECK(span_of(std::vector<Duration>{4, 5, 6}, 3) == 21);
    }

    TEST_CASE("list scheduling uses the earliest finish, lowest index on ties") {
        const Instance inst({5, 3, 3, 1}, 2, 1, BatchMode::Max, CompatGraph(4, {}));
        const std::vector<Batch> order{Batch(0), Batch(1), Batch(2), Batch(3)};
        const auto s = list_schedule(order, inst);
        CHECK(s.machines[0] == MachineSequence{Batch(0), Batch(3)});
        CHECK(s.machines[1] == MachineSequence{Batch(1), Batch(2)});
        CHECK(makespan(s, inst) == 7);
    }

    TEST_CASE("batches from pairs covers every job once") {
        const std::vector<Edge> pairs{{1, 3}};
        const auto b = batches_from_pairs(pairs, 5);
        REQUIRE(b.size() == 4);
        CHECK(b[0] == Batch(1, 3));
        CHECK(b[1] == Batch(0));
        CHECK(b[3] == Batch(4));
    }
}
