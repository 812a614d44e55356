#ifndef CRNF_CLI_COMMANDS_HPP
#define CRNF_CLI_COMMANDS_HPP

#include <iostream>
#include <string>
#include <vector>

namespace crnf {

/// Full CLI dispatch. `args` excludes the program name; `-` paths use the
/// given streams. Exit codes: 0 ok, 1 validation, 2 internal invariant,
/// 3 parse/usage.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace crnf

#endif
