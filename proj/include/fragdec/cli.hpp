#pragma once

#include <string>
#include <vector>

namespace fragdec {

/// Runs the fragdec command line. `args` excludes the program name.
/// Exit codes: 0 definable/holds/success, 1 not definable/fails,
/// 2 reduced instance emitted, 3 errors, 64 usage errors.
int run_cli(const std::vector<std::string>& args);

}  // namespace fragdec
