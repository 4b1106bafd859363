#pragma once

#include <optional>
#include <vector>

#include "advsat/cnf.hpp"

namespace advsat {

// Complete DPLL decision for n <= 30 (guarded). Branches on the lowest-index
// unset variable trying 0 before 1, which makes the first model found the
// lexicographically smallest one; unit propagation only ever sets literals
// shared by every extension, so it preserves that order.
std::optional<std::vector<bool>> brute_force_sat(const CnfFormula& phi);

// Number of satisfying assignments, stopping early once `limit` are found.
// Used to verify solution uniqueness of planted instances (n <= 30).
long count_solutions(const CnfFormula& phi, long limit);

}  // namespace advsat
