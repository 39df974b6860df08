#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vass {

/// Runs one CLI invocation. Exit codes: 0 yes/success, 1 no, 2 unknown,
/// 3 usage or parse error.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

} // namespace vass
