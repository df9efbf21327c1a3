#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "etrails/config.hpp"

namespace etrails {

// Routes a command line to the module operations. JSON results go to `out`,
// diagnostics to `err`. Exit codes: 0 ok, 1 domain error, 2 bad usage.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
             const RunConfig& base = RunConfig::load_env());

}  // namespace etrails
