#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bmcx::cli {

// Parses argv-style arguments and runs the requested subcommand.
// Exit status: 0 success, 2 usage error, 3 numeric failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bmcx::cli
