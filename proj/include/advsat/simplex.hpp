#pragma once

#include <vector>

namespace advsat {

// Dense revised simplex for bounded-variable LPs in equality form:
//   minimize c'x  subject to  A x = b,  lower <= x <= upper.
// The caller supplies a feasible starting basis (basis[i] = column index basic
// in row i) and starting point. Nonbasic variables must sit on a finite bound.

struct LpProblem {
    int rows = 0;
    int cols = 0;
    std::vector<double> A;  // rows x cols, row-major
    std::vector<double> b;
    std::vector<double> c;
    std::vector<double> lower;
    std::vector<double> upper;

    double at(int r, int col) const { return A[static_cast<size_t>(r) * cols + col]; }
};

enum class LpStatus { Optimal, IterationLimit, Unbounded, NumericalFailure };

struct LpResult {
    LpStatus status = LpStatus::NumericalFailure;
    std::vector<double> x;
    double objective = 0.0;
    std::vector<double> row_duals;  // y = c_B' B^-1 at the final basis
    long iterations = 0;
};

LpResult solve_lp(const LpProblem& p, std::vector<int> basis, std::vector<double> x0,
                  long max_iterations, double tol = 1e-9);

}  // namespace advsat
