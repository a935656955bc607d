#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rdv {

// Command-line entry point behind main(). `args` excludes the program name.
// Results go to `out` (or the file named by --output); diagnostics go to
// `err`. Returns the process exit code: 0 on success with every verifier
// passing, 1 when a verifier or scan reports a failure, 2 on usage or parse
// errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rdv
