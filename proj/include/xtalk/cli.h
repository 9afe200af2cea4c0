#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace xtalk {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitUsage = 2,  // bad arguments, unreadable or malformed netlist
    kExitSingular = 3,  // floating subcircuit or singular free block
    kExitZeroTarget = 4,
};

/// Entry point of `xtalk`; args exclude the program name.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace xtalk
