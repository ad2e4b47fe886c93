#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chanlin {

// Runs one command; args exclude the program name. Returns the exit code:
// 0 consistent/success, 1 inconsistent, 2 usage or validation error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chanlin
