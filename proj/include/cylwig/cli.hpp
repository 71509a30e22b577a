#pragma once

#include <ostream>
#include <string>

#include "cylwig/cylinder.hpp"

namespace cylwig::cli {

// Runs one command line. Returns 0 on success, 2 on validation failures
// (bad flags, bad files, violated preconditions), 1 on anything else.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// {"n_min", "dim", "re", "im"}, rows are bra indices.
CylinderOperator load_density_file(const std::string& path);
std::string density_to_json(const CylinderOperator& op);

// {"M", "n_min", "dim", "re", "im"}, Theta-major: re[j][n - n_min].
CylinderFunction load_symbol_file(const std::string& path, double hbar);
std::string symbol_to_json(const CylinderFunction& f);

}  // namespace cylwig::cli
