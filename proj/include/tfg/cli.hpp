#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tfg::cli {

// Exit codes: 0 all asserted checks pass, 1 a check failed, 2 bad arguments or configuration.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace tfg::cli
