#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace divgrp::cli {

// Runs one subcommand; `args` excludes the program name. Exit code 0 on
// success, 1 on domain errors, 2 on usage or parse errors. All regular output
// goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace divgrp::cli
