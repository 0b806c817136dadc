#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twoml::cli {

/// Exit codes of the command-line tool.
enum Exit : int { kOk = 0, kFail = 1, kUsage = 2, kIncompatible = 3 };

/// Runs one command line (without the program name), e.g. {"synth", "--frontier", ...}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twoml::cli
