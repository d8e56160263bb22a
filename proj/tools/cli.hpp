#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace arrowlab::cli {

/// Parses args (without the program name), runs the command and writes the
/// record (or DOT text) to out. Returns 0 on verdicts, 2 when the node budget
/// ran out and 1 on errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace arrowlab::cli
