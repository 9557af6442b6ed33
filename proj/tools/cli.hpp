#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "catlab/designer.hpp"

namespace catlab::cli {

enum ExitCode : int { kOk = 0, kRuntimeFailure = 1, kUsageError = 2, kDataError = 3 };

// Entry point shared by the executable and the tests. `args` excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// const:A | asc[:LO:HI] | desc[:HI:LO] | strat:L1,L2,...:BLOCK | explicit:A1,A2,... | cubic
// Bare asc/desc span [a_min, a_max]. Throws InvalidInput.
ASchedule parse_a_schedule(std::string_view spec, double a_min, double a_max);

// "10,20,30" -> {10, 20, 30}; empty string -> {}. Throws InvalidInput.
std::vector<std::size_t> parse_size_list(std::string_view text);

// Shortest string that reads back to the same double; '.' separator always.
std::string format_double(double v);

// Worker count after applying the CAT_LAB_THREADS cap (0 or unset: no cap).
unsigned resolve_threads(unsigned requested, const char* env_value);

}  // namespace catlab::cli
