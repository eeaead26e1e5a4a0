#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wpa {

// Exit codes: 0 pass, 1 fail, 2 invalid input. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wpa
