#ifndef DENSECOUNT_CLI_COMMANDS_HPP
#define DENSECOUNT_CLI_COMMANDS_HPP

#include <ostream>
#include <string>
#include <vector>

namespace densecount::cli {

/// Entry point of the `densecount` tool. Returns the process exit code:
/// 0 on success, 1 when the command reported diagnostics, 2 on usage errors.
///
/// Subcommands: densify, split, evaluate, stats, yield, render, manifest,
/// predict, selftest.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace densecount::cli

#endif  // DENSECOUNT_CLI_COMMANDS_HPP
