#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bfto {

// Runs one command line (without the program name). Exit codes: 0 success,
// 1 domain error or an internally inconsistent engine run, 2 usage error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bfto
