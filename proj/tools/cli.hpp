#pragma once

// Command-line front end, callable in-process for tests.

#include <iosfwd>
#include <string>
#include <vector>

namespace confgas::cli {

enum ExitCode : int {
  kOk = 0,
  kWarned = 2,
  kModelInvalid = 3,
  kAccuracy = 4,
};

/// args excludes the program name. Rows go to `out` (or the --out file),
/// JSON diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace confgas::cli
