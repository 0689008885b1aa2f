#pragma once
#include <iosfwd>

namespace qsim {

// Exit codes: 0 success, 1 data or usage error, 2 numerical failure.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qsim
