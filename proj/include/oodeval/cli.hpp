#pragma once

#include <ostream>
#include <span>
#include <string>

namespace oodeval::cli {

// Runs one subcommand (synth, score, fit, predict, eval, sweep, report).
// args[0] is the program name. Failures print a single line
// "error: <CODE>: <message>" to `err` and return a nonzero status.
int run_command(std::span<const std::string> args, std::ostream& out, std::ostream& err);

} // namespace oodeval::cli
