#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "advsat/advice.hpp"
#include "advsat/cnf.hpp"

namespace advsat {

struct SolverConfig {
    int implication_D = 1;
    long iterations_T = 0;  // 0 = auto from failure_prob_delta
    double failure_prob_delta = 0.01;
    std::uint64_t seed = 0;
    int num_workers = 0;  // 0 = resolve from environment
    bool record_iterations = false;
};

enum class SolverStatus { Sat, UnsatPresumed, AdviceContradiction };

struct RunStats {
    long iterations_used = 0;
    int advice_assigned = 0;
    long sum_forced = 0;   // across completed iterations
    long sum_guessed = 0;  // across completed iterations
    long completed_iterations = 0;  // iterations that assigned all variables
    // filled only when SolverConfig::record_iterations is set; aborted
    // iterations (a guess led to an empty clause) carry completed=0 and count
    // only the variables processed before the contradiction
    std::vector<int> forced_per_iter;
    std::vector<int> guessed_per_iter;
    std::vector<std::uint8_t> completed_per_iter;
};

struct SolveResult {
    SolverStatus status = SolverStatus::UnsatPresumed;
    std::optional<std::vector<bool>> assignment;
    RunStats stats;
};

// Checks whether sigma plus some set of <= D not-yet-satisfied clauses pins
// var to a single value: forced(b) iff every assignment of the unset variables
// in those clauses that satisfies all of them sets var to b. Only connected
// clause subsets touching var are enumerated (forcing factorizes over
// variable-disjoint components, so this loses nothing). Returns nullopt when
// unforced. Sets *contradiction when some subset is unsatisfiable under sigma,
// meaning the current branch is dead. Supports D <= 3.
std::optional<bool> d_implies(const CnfFormula& phi, const PartialAssignment& sigma,
                              int var, int D, bool* contradiction = nullptr);

// Predicted guessed fraction per variable and iteration: the D=1 forcing
// analysis gives (1-eps) - (1/k)(1-eps^k), rigorous at every n; for D >= 2
// the asymptotic profile-integral prediction 1-R_k-eps_k is corrected by the
// d-implication loss bound and capped by the D=1 value (larger D only forces
// more, so the D=1 rate is always an upper bound).
double guess_rate(int k, double epsilon, int D);

// Iteration budget ceil(ln(1/delta) * 2^(n * guess_rate)).
long auto_iterations(int n, int k, double epsilon, int D, double delta);

// Randomized decision solver: fixes advice variables, then repeats up to T
// permutation rounds of force-or-guess. Any sat verdict is verified against
// the full formula before returning. Deterministic for fixed config,
// independent of worker count.
SolveResult ppsz_with_advice(const CnfFormula& phi, const SubsetAdvice& advice,
                             const SolverConfig& cfg);

struct WalkCounts {
    int forced = 0;
    int guessed = 0;
    int advice_assigned = 0;
};

// One permutation round conditioned on the accepting path: every non-forced
// variable is "guessed" to its planted value, so the trajectory follows the
// planted assignment and the counts measure the guess/force split along it.
// Requires planted to satisfy phi (then any forced value agrees with it).
// The order comes from one shuffle of all n variables with advice-set ones
// skipped, so for a fixed perm_seed the guessed count is pointwise
// non-increasing as the advice set grows (nested sets, same seed).
WalkCounts planted_walk(const CnfFormula& phi, const std::vector<bool>& planted,
                        const SubsetAdvice& advice, int D, std::uint64_t perm_seed);

}  // namespace advsat
