#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twisted::cli {

enum ExitCode : int { kOk = 0, kInternal = 1, kConfig = 2, kVerdict = 3 };

/// Command-line entry point; args excludes the program name.
int run_app(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twisted::cli
