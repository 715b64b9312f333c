#pragma once

#include <ostream>

namespace vecmeasure {

/// Entry point of the `vecmeasure` executable. Exit codes: 0 success or all
/// checks passed, 1 a verification check failed, 2 invalid input.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vecmeasure
