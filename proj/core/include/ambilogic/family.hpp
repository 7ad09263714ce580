// ===== family.hpp — deterministic formula enumeration =====
//
// Probe families for property scans and equivalence checks. Enumeration is
// deterministic in the inputs and de-duplicated by interned identity, so a
// family is reproducible across runs and never evaluates one shape twice.
//
// Depth 0 is `true`, every proposition, and every negated proposition.
// Each further depth adds, to the propositional pool, the conjunctions,
// disjunctions, and their negations over ordered pairs from the previous
// pool; and wraps every formula of the previous round in B_i, K_i,
// Pr_i >= t for t in {0, 1/4, 1/2, 3/4, 1}, and CB over the full group.
// Growth is steep in depth; callers cap depth at 3.

#pragma once

#include "ambilogic/formula.hpp"

#include <string>
#include <vector>

namespace ambilogic {

// The propositional pool only (no belief wrappers).
std::vector<FormulaId> propositional_family(FormulaFactory& factory,
                                            const std::vector<std::string>& props, int depth);

std::vector<FormulaId> formula_family(FormulaFactory& factory,
                                      const std::vector<std::string>& props, int players,
                                      int depth);

}  // namespace ambilogic
