#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "advsat/advice.hpp"
#include "advsat/cnf.hpp"

namespace advsat {

struct ApproxResult {
    std::vector<bool> assignment;
    int satisfied = 0;
    std::optional<double> ratio_vs_opt;
    std::string baseline_name;
};

// uniform random assignment; satisfies a width-w clause with probability 1-2^-w
ApproxResult baseline_random(const CnfFormula& phi, std::uint64_t seed);

// derandomized random assignment via conditional expectations; deterministic
// and always satisfies at least sum over clauses of (1 - 2^-width)
ApproxResult baseline_condexp(const CnfFormula& phi);

// assignment = advice labels verbatim
ApproxResult baseline_follow_label(const CnfFormula& phi, const LabelAdvice& advice);

// Fix advice variables, run the baseline on the reduced formula, splice the
// results; the satisfied count is over the original formula.
ApproxResult advice_pipeline(const CnfFormula& phi, const SubsetAdvice& advice,
                             const std::function<ApproxResult(const CnfFormula&)>& baseline);

// Exact optimum by a gray-code scan over all 2^n assignments with incremental
// clause updates; parallelized over contiguous chunks whose (count, lex-min
// assignment) maxima merge associatively, so the result is worker-invariant.
// Guarded to n <= 26. Tie-break: lexicographically smallest optimal assignment.
std::pair<int, std::vector<bool>> brute_force_maxsat(const CnfFormula& phi);

// serial reference for the scan above: evaluates count_satisfied on every
// assignment directly (n <= 20); used by tests and the benchmark
std::pair<int, std::vector<bool>> brute_force_maxsat_reference(const CnfFormula& phi);

}  // namespace advsat
