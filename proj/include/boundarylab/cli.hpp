#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace bl {

// Entry point behind the boundary-lab executable. Subcommands:
//   classify, depth, limit-set, cover, prime-end, true-crosscut,
//   lift, correspond, harmonic, render
// Reports go to --out when given, otherwise to `out`. Returns the process
// exit code (0 ok, 1 usage, 2 computation error).
int run_cli(std::vector<std::string> args, std::ostream& out = std::cout,
            std::ostream& err = std::cerr);

}  // namespace bl
