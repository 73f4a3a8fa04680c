#pragma once

#include <ostream>

namespace tightcert {

// Entry point behind the tightcert executable. Exit codes: 0 success,
// 1 configuration or usage error, 2 I/O error, 3 numerical non-convergence.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tightcert
