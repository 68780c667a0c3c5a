// Command-line front end: subcommand dispatch and file outputs.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace survivordim::cli {

// Runs one subcommand. Returns 0 on success, 1 on usage errors, 2 on
// parse/validation errors, 3 on numerical/budget errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Locale-independent shortest-exact decimal rendering (17 significant digits).
std::string format_double(double value);

}  // namespace survivordim::cli
