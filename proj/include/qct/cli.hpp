#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qct {

// Runs the qct command line (args exclude the program name). Returns 0 on
// success, 1 when a construction or verification fails, 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qct
