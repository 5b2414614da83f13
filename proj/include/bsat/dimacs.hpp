#pragma once

#include <string>
#include <string_view>

#include "bsat/grounder.hpp"
#include "bsat/prop.hpp"

namespace bsat {

/// DIMACS CNF with one `c <index> <ground atom>` comment per atom variable.
std::string emit_dimacs(const prop::Cnf& cnf, const AtomTable& atoms);
std::string emit_dimacs(const prop::Cnf& cnf);

/// Reads DIMACS CNF, skipping comment lines. Throws SyntaxError.
prop::Cnf read_dimacs(std::string_view text);

}  // namespace bsat
