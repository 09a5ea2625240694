#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace conical {

/// Entry point for the `conical` command line tool. `args` excludes the
/// program name. Returns the process exit status (0 on success, 1 on any
/// validation or I/O failure).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace conical
