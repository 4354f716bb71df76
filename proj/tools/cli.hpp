#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rsp_cli {

enum ExitCode { kExitOk = 0, kExitFailure = 1, kExitValidation = 2, kExitNonConvergence = 3 };

// args excludes the program name. The payload goes to out (or --output),
// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rsp_cli
