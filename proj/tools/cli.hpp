#pragma once

#include <ostream>

namespace fdstc {

// Exit codes: 0 success, 2 invalid input, 3 numerical failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fdstc
