#pragma once

#include <ostream>

namespace flagforms::cli {

// Entry point of the command-line tool. Returns 0 when every check passes,
// 1 on a failed check and 2 on a usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace flagforms::cli
