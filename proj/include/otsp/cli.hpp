#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace otsp {

// Exit codes: 0 ok, 1 infeasible input / bad parameters / failed verification,
// 2 resource cap hit, 64 usage error, 70 internal consistency failure.
// args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace otsp
