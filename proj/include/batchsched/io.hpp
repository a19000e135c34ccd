#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "batchsched/model.hpp"

namespace bsched::io {

// Instance text format (job indices are 1-based on disk):
//
//   n m s mode          mode is "max" or "sum"
//   p_1 ... p_n
//   i j                 one compatible pair per line, any number of lines
//
// Errors are reported as InputError with "line L, column C: ..." prefixes.
Instance parse_instance(std::istream& in);
Instance parse_instance(std::string_view text);
Instance read_instance_file(const std::string& path);
std::string format_instance(const Instance& inst);

struct ParsedSchedule {
    Schedule schedule;
    std::optional<Duration> cmax;
};

// Schedule text format: one line per machine with batches written as [i] or
// [i,j] separated by spaces, followed by "Cmax <value>".
ParsedSchedule parse_schedule(std::istream& in);
ParsedSchedule parse_schedule(std::string_view text);
std::string format_schedule(const Schedule& sched, Duration cmax);

}  // namespace bsched::io
