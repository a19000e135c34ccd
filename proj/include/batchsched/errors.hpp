#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bsched {

/// Malformed or inconsistent input (bad instance data, invalid batch, parse failure).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An exact solver was asked to handle an instance outside its tractable class.
class WrongSubproblem : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An exhaustive routine was called on an instance above its size limit.
class OracleLimit : public std::length_error {
public:
    using std::length_error::length_error;
};

/// A schedule failed validation where a feasible one was required.
class InfeasibleSchedule : public std::runtime_error {
public:
    explicit InfeasibleSchedule(std::vector<std::string> violations);

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// Broken internal invariant, e.g. a closed form disagreeing with its constructed schedule.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace bsched
