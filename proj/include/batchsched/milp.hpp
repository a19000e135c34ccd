#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "batchsched/model.hpp"

namespace bsched::milp {

enum class VarKind { Binary, Continuous };

/// x_{ijk}: jobs i < j share a batch on machine k. y_{ik}: job i runs alone on
/// machine k. Indices are 0-based here and 1-based in names.
struct Variable {
    std::string name;
    VarKind kind = VarKind::Binary;
    int i = -1;
    int j = -1;
    int k = -1;

    friend bool operator==(const Variable&, const Variable&) = default;
};

enum class Sense { LessEqual, Equal, GreaterEqual };

struct Term {
    int var = 0;
    std::int64_t coef = 0;

    friend bool operator==(const Term&, const Term&) = default;
};

/// sum(terms) <sense> rhs. `family` is the constraint group 1..5.
struct Constraint {
    std::string name;
    int family = 0;
    std::vector<Term> terms;
    Sense sense = Sense::LessEqual;
    std::int64_t rhs = 0;

    friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// minimize Cmax subject to the constraint families:
///   (1) every job is in at most one two-job batch
///   (2) sum_k x_ijk <= a_ij
///   (3) every job is a singleton on at most one machine
///   (4) every job is in exactly one batch
///   (5) per machine: sum of batch times plus setups <= Cmax
/// with Cmax >= 0 as a bound and every x, y binary.
struct MilpModel {
    int job_count = 0;
    int machine_count = 0;
    std::vector<Variable> variables;
    std::vector<Constraint> constraints;
    int objective_var = -1;

    std::size_t binary_count() const noexcept;
    std::size_t continuous_count() const noexcept;
    std::optional<int> find(std::string_view name) const;

    friend bool operator==(const MilpModel&, const MilpModel&) = default;
};

/// Throws InputError for sum-batch instances (the model covers max-batches only).
MilpModel build_model(const Instance& inst);

/// CPLEX LP text: Minimize / Subject To / Bounds / Binaries / End.
std::string export_lp(const MilpModel& model);

/// Reads text produced by export_lp back into a model. Throws InputError on
/// anything outside that subset of the format.
MilpModel parse_lp(std::string_view text);

using Assignment = std::vector<std::uint8_t>;  // one 0/1 value per variable; the continuous slot is ignored

/// Left-hand side of a row under the assignment, with Cmax valued at `cmax`.
std::int64_t row_activity(const MilpModel& model, const Constraint& row, const Assignment& values, Duration cmax);
bool row_satisfied(const MilpModel& model, const Constraint& row, const Assignment& values, Duration cmax);

/// Binary assignment describing a feasible schedule.
Assignment assignment_from_schedule(const MilpModel& model, const Schedule& sched, const Instance& inst);

/// Schedule encoded by a feasible assignment. Batch order within a machine
/// follows variable order.
Schedule schedule_from_assignment(const MilpModel& model, const Assignment& values);

inline constexpr std::size_t kEnumerationLimit = 24;

struct EnumerationResult {
    Duration optimum = 0;
    Assignment values;
    Schedule witness;
};

/// Exhaustive search over binary assignments of a model with at most 24
/// binaries; partial assignments that can no longer satisfy a row are cut.
/// Throws OracleLimit above the limit and InputError if the model does not
/// describe `inst` (job or machine count mismatch).
EnumerationResult enumerate_milp_optimum(const MilpModel& model, const Instance& inst);

}  // namespace bsched::milp
