#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cryptolab {

/// The whole command line, minus the program name. Returns the exit code:
/// 0 success, 1 the operation failed, 2 bad arguments.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cryptolab
