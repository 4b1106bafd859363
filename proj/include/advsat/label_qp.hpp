#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "advsat/advice.hpp"
#include "advsat/cnf.hpp"
#include "advsat/maxsat.hpp"

namespace advsat {

// Padded-literal quadratic form for E2 formulas: literal i in 1..n is x_i,
// literal n+i is !x_i. A[i][j] counts clauses (l_i v l_j) with multiplicity;
// satisfied clauses of an integer sign vector y obey
//   #SAT(y) = (3/4)m - (1/8)f(y),  f(y) = 2 sum_i y_0 y_i d_i + <y, A y>.
struct QuadraticModel {
    int n = 0;
    long m = 0;
    std::vector<int> A;   // (2n+1)^2 row-major; row/col 0 and diagonal are zero
    std::vector<long> d;  // literal degrees, index 1..2n

    int at(int i, int j) const { return A[static_cast<size_t>(i) * (2 * n + 1) + j]; }
    int dim() const { return 2 * n + 1; }
};

QuadraticModel build_model(const CnfFormula& phi);

// y has length 2n+1 with y[0] = 1, y[i] in [-1,1], y[n+i] = -y[i]
using SignVec = std::vector<double>;

bool feasible_sign_vec(const QuadraticModel& model, const SignVec& y, double tol = 1e-9);

double f_value(const QuadraticModel& model, const SignVec& y);

// integer-exact f for y entries in {-1,+1}; 8*#SAT(y) == 6m - f holds exactly
long f_value_integer(const QuadraticModel& model, const std::vector<int>& y);

// advice surrogate F(y, ytilde) = 2 sum y0 yi di + <y, A ytilde/eps> + |A(y - ytilde/eps)|_1
double F_value(const QuadraticModel& model, const SignVec& y, const std::vector<int>& y_tilde,
               double epsilon);

// sign conventions: +1 encodes false, -1 encodes true; y_0 = 1
std::vector<int> label_to_sign(const QuadraticModel& model, const LabelAdvice& advice);
std::vector<int> assignment_to_sign(const QuadraticModel& model, const std::vector<bool>& x);
std::vector<bool> sign_to_assignment(const QuadraticModel& model, const std::vector<int>& y);

struct QpSolve {
    SignVec y;               // fractional minimizer of F
    double objective_F = 0.0;
    double certified_gap = 0.0;  // relative duality gap from the l1 dual bound
    bool converged = false;
    long iterations = 0;
};

// Minimizes the convex surrogate over the box/pairing polytope through an
// exact LP reformulation (residual split into positive/negative parts),
// warm-started at the advice point. Relative gap target and iteration cap
// are reported in the result; non-convergence returns the best incumbent.
QpSolve solve_advice_program(const QuadraticModel& model, const std::vector<int>& y_tilde,
                             double epsilon, double gap_tol = 1e-6,
                             long max_iterations = 100000);

// Coordinate rounding over pairs (i, n+i): f restricted to the pair is linear
// (zero diagonal, no tautologies), so each step picks the endpoint sign that
// does not increase f. Ties break to the sign of the fractional value, then +1.
std::vector<int> round_solution(const QuadraticModel& model, const SignVec& y);

struct ChainAudit {
    double f_rounded = 0.0;    // f(y_hat)
    double f_relaxed = 0.0;    // f(y)
    double F_relaxed = 0.0;    // F(y, ytilde)
    std::optional<double> F_star;  // F(y*, ytilde) when the plant is known
    double certified_gap = 0.0;
    bool converged = false;
};

struct LabelQpResult {
    ApproxResult approx;
    ChainAudit audit;
};

// Full pipeline: build the model, seed from advice signs, solve the convex
// program, round, and map back to a Boolean assignment with its audit trail.
LabelQpResult max2sat_with_label_advice(const CnfFormula& phi, const LabelAdvice& advice,
                                        double gap_tol = 1e-6, long max_iterations = 100000,
                                        const std::vector<bool>* planted = nullptr);

// MAX-2-LIN instance: constraints x_i * x_j = c with c in {-1,+1} over
// +-1-valued variables (x_i = +1 encodes the Boolean value true).
struct Lin2Constraint {
    int i = 0;
    int j = 0;
    int rhs = 1;
};

struct Lin2Instance {
    int n = 0;
    std::vector<Lin2Constraint> constraints;
};

// file format: one constraint per line, "i j +1" or "i j -1"
Lin2Instance parse_lin2(const std::string& text);
Lin2Instance read_lin2_file(const std::string& path);
std::string serialize_lin2(const Lin2Instance& lin);

// x_i x_j = +1 -> (x_i v !x_j) and (!x_i v x_j); = -1 -> (x_i v x_j) and
// (!x_i v !x_j). Satisfied counts obey #LIN = #SAT - m exactly.
CnfFormula lin2_to_sat2(const Lin2Instance& lin);

int count_lin_satisfied(const Lin2Instance& lin, const std::vector<bool>& x);

}  // namespace advsat
