#ifndef EXTDEP_CLI_HPP
#define EXTDEP_CLI_HPP

#include <string>
#include <vector>

namespace extdep::cli {

// Exit codes: 0 success, 1 domain/validation error, 2 usage error,
// 3 numerical non-convergence.
int run(const std::vector<std::string>& args);
int run(int argc, const char* const* argv);

}  // namespace extdep::cli

#endif
