#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stackyfan::cli {

enum ExitCode : int { ok = 0, verdict_false = 1, usage = 2 };

/// Runs one command (args excludes the program name). JSON goes to out,
/// human-readable summaries and errors to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stackyfan::cli
