#pragma once

#include <optional>
#include <string>

namespace advsat {

// Numeric reproduction of the solver analysis constants: the forcing profile
// R_k(r), its integral R_k, the advice gain eps_k, the d-implication loss
// bound, and the PPZ/PPSZ base constants with and without advice.

// Smallest nonnegative solution R of (r + (1-r)R)^(k-1) = R, to 1e-12.
// Exactly 1 for r >= (k-2)/(k-1).
double rk_fixedpoint(int k, double r);

// integral of rk_fixedpoint over [0, upto]; adaptive Simpson with the kink at
// (k-2)/(k-1) split out (R_k(r) = 1 above it, integrated exactly)
double rk_integral_prefix(int k, double upto);

// R_k = integral over [0,1]
double rk_integral(int k);

// series form R_k = (1/(k-1)) sum_j 1/(j(j + 1/(k-1))), accelerated through
// zeta(2) and zeta(3) so the truncation tail is O(1/N^3)
double rk_integral_series(int k);

// eps_k = eps - integral of R_k(r) over [0, eps]
double eps_k(int k, double epsilon);

// closed form for k=3: 1 - 1/(1-eps) - 2 ln(1-eps) on [0, 1/2], constant
// 2 ln 2 - 1 above (the profile saturates at 1 past r = 1/2)
double eps3_closed_form(double epsilon);

// upper bound 3/((d-1)(k-2)+2) on the exponent loss of d-implication
double delta_bound_value(int k, int d);

// Solves the substituted fixed-point equation [eps+(1-eps)(r+(1-r)R)]^(k-1)=R
// with an independent root-finder on a grid and compares against
// R_k(eps+(1-eps)r); returns the max absolute deviation.
double substitution_identity_check(int k, double epsilon, int grid_points = 1001);

struct TheoryReport {
    int k = 3;
    double epsilon = 0.0;
    double rk_integral = 0.0;
    double eps_k = 0.0;
    double ppz_base = 0.0;          // 2^(1-1/k)
    double ppz_base_advice = 0.0;   // 2^((1-(1/k)(1-eps^k)/(1-eps))(1-eps))
    double ppsz_base = 0.0;         // 2^(1-R_k), o(1) suppressed
    double ppsz_base_advice = 0.0;  // ppsz_base * 2^(-eps_k), o(1) suppressed
    bool ppsz_subexponential = false;  // eps >= (k-2)/(k-1)
    bool o1_suppressed = true;
    std::optional<int> d;
    std::optional<double> delta_bound;
};

TheoryReport base_constants(int k, double epsilon, std::optional<int> d = std::nullopt);

std::string theory_report_json(const TheoryReport& r);

// rows k=3..6 of the base-constant table at eps=0 as JSON
std::string theory_table_json();

}  // namespace advsat
