#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace chordal::cli {

enum Exit { ok = 0, verification_failed = 1, usage_error = 2 };

// Runs one command line (without the program name). The report goes to
// `out` or to the --output file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chordal::cli
