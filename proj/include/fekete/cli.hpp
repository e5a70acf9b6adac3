#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fekete {

// Runs one command line (argv without the program name) against the given
// streams and returns the process exit code: 0 success, 2 input error,
// 3 budget exhausted, 4 certificate violation.  All payloads, including
// error objects, are JSON documents on `out`; `err` stays quiet except for
// usage help requested explicitly.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace fekete
