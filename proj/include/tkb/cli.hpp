#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tkb::cli {

// Exit codes: 0 success, 1 domain error (error name on `err`), 2 usage error.
// `check` exits 1 when any error-severity diagnostic exists.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace tkb::cli
