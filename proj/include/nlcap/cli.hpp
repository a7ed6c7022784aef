#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nlcap {

// Batch front end. `args` are argv-style arguments without the program name:
//   <command> <config-file | key=value> [key=value ...]
// Commands: solve-angle, scan, verify, minimize. Returns the process exit
// code; all printing goes through the supplied streams so tests can capture
// it.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

} // namespace nlcap
