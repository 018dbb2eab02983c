#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qh {

// Exit codes of the command-line driver.
enum ExitCode { kOk = 0, kCheckFailed = 1, kUsage = 2, kBudget = 3, kAlgebra = 4, kIO = 5 };

// args excludes the program name
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qh
