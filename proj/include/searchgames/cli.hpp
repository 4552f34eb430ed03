#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace searchgames {

// Runs the command-line surface on the given arguments (without argv[0]).
// Returns the process exit code: 0 success, 1 verification or internal
// failure, 2 usage error. All output goes through out/err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace searchgames
