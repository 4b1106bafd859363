#include "advsat/theory.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace advsat {

namespace {

double fixed_point_map(int k, double r, double R) {
    return std::pow(r + (1.0 - r) * R, k - 1);
}

// analytic minimizer of g(R) = (r+(1-r)R)^(k-1) - R on [0,1]; g is convex,
// so the smallest root (if any) lies in [0, argmin] and g(argmin) <= 0 there
double convex_argmin(int k, double r) {
    double base = std::pow((k - 1) * (1.0 - r), -1.0 / (k - 2));
    return (base - r) / (1.0 - r);
}

double bisect_root(const std::function<double(double)>& g, double lo, double hi) {
    double glo = g(lo);
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        double mid = 0.5 * (lo + hi);
        double gm = g(mid);
        if ((gm <= 0.0) == (glo <= 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// generic smallest fixed point of a convex increasing map h on [0,1]:
// locate the minimum of h(R)-R by ternary search, then bisect on its left
double smallest_fixed_point_generic(const std::function<double(double)>& h) {
    auto g = [&](double R) { return h(R) - R; };
    if (g(0.0) <= 0.0) return 0.0;
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 300; ++it) {
        double m1 = lo + (hi - lo) / 3.0;
        double m2 = hi - (hi - lo) / 3.0;
        if (g(m1) < g(m2)) hi = m2; else lo = m1;
    }
    double argmin = 0.5 * (lo + hi);
    if (g(argmin) > 0.0) return 1.0;  // no crossing below 1
    return bisect_root(g, 0.0, argmin);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (b <= a) return 0.0;
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

constexpr double kZeta3 = 1.2020569031595942854;

void require_k(int k) {
    if (k < 3) throw std::invalid_argument("k must be >= 3");
}

}  // namespace

double rk_fixedpoint(int k, double r) {
    require_k(k);
    if (r < 0.0 || r > 1.0) throw std::invalid_argument("r out of [0,1]");
    double threshold = static_cast<double>(k - 2) / (k - 1);
    if (r >= threshold) return 1.0;
    if (r == 0.0) return 0.0;
    double argmin = convex_argmin(k, r);
    auto g = [&](double R) { return fixed_point_map(k, r, R) - R; };
    if (g(argmin) > 0.0) return 1.0;  // tangency regime, only root is 1
    return bisect_root(g, 0.0, argmin);
}

double rk_integral_prefix(int k, double upto) {
    require_k(k);
    if (upto < 0.0 || upto > 1.0) throw std::invalid_argument("upper limit out of [0,1]");
    double threshold = static_cast<double>(k - 2) / (k - 1);
    auto f = [&](double r) { return rk_fixedpoint(k, r); };
    double smooth_end = std::min(upto, threshold);
    double val;
    if (smooth_end < threshold - 1e-12) {
        val = integrate(f, 0.0, smooth_end, 1e-10);
    } else {
        // For k >= 4 the profile approaches 1 with a sqrt singularity at the
        // threshold; substitute r = threshold - t^2 on the last stretch so the
        // integrand is Lipschitz there.
        double h = std::min(0.1, threshold / 2.0);
        val = integrate(f, 0.0, threshold - h, 1e-10);
        auto tail = [&](double t) { return rk_fixedpoint(k, threshold - t * t) * 2.0 * t; };
        val += integrate(tail, 0.0, std::sqrt(h), 1e-10);
    }
    if (upto > threshold) val += upto - threshold;  // R_k(r) = 1 above the kink
    return val;
}

double rk_integral(int k) { return rk_integral_prefix(k, 1.0); }

double rk_integral_series(int k) {
    require_k(k);
    double a = 1.0 / (k - 1);
    // 1/(j(j+a)) = 1/j^2 - a/j^3 + a^2/(j^3 (j+a))
    double zeta2 = M_PI * M_PI / 6.0;
    double rest = 0.0;
    const int N = 200000;
    for (int j = N; j >= 1; --j) {
        double dj = j;
        rest += 1.0 / (dj * dj * dj * (dj + a));
    }
    double sum = zeta2 - a * kZeta3 + a * a * rest;
    return a * sum;
}

double eps_k(int k, double epsilon) {
    require_k(k);
    if (epsilon < 0.0 || epsilon > 1.0) throw std::invalid_argument("epsilon out of [0,1]");
    return epsilon - rk_integral_prefix(k, epsilon);
}

double eps3_closed_form(double epsilon) {
    if (epsilon < 0.0 || epsilon > 1.0) throw std::invalid_argument("epsilon out of [0,1]");
    if (epsilon <= 0.5) {
        return 1.0 - 1.0 / (1.0 - epsilon) - 2.0 * std::log(1.0 - epsilon);
    }
    return 2.0 * std::log(2.0) - 1.0;
}

double delta_bound_value(int k, int d) {
    require_k(k);
    if (d < 1) throw std::invalid_argument("d must be >= 1");
    return 3.0 / (static_cast<double>(d - 1) * (k - 2) + 2.0);
}

double substitution_identity_check(int k, double epsilon, int grid_points) {
    require_k(k);
    double threshold = static_cast<double>(k - 2) / (k - 1);
    if (epsilon < 0.0 || epsilon >= threshold) {
        throw std::invalid_argument("epsilon out of [0, (k-2)/(k-1))");
    }
    double max_dev = 0.0;
    for (int i = 0; i < grid_points; ++i) {
        double r = static_cast<double>(i) / (grid_points - 1);
        auto h = [&](double R) {
            return std::pow(epsilon + (1.0 - epsilon) * (r + (1.0 - r) * R), k - 1);
        };
        double via_substituted = smallest_fixed_point_generic(h);
        double via_shifted = rk_fixedpoint(k, epsilon + (1.0 - epsilon) * r);
        max_dev = std::max(max_dev, std::fabs(via_substituted - via_shifted));
    }
    return max_dev;
}

TheoryReport base_constants(int k, double epsilon, std::optional<int> d) {
    require_k(k);
    if (epsilon < 0.0 || epsilon > 1.0) throw std::invalid_argument("epsilon out of [0,1]");
    TheoryReport rep;
    rep.k = k;
    rep.epsilon = epsilon;
    rep.rk_integral = rk_integral(k);
    rep.eps_k = eps_k(k, epsilon);
    rep.ppz_base = std::pow(2.0, 1.0 - 1.0 / k);
    if (epsilon >= 1.0) {
        rep.ppz_base_advice = 1.0;
    } else {
        double ratio = (1.0 - std::pow(epsilon, k)) / (1.0 - epsilon);
        double expo = (1.0 - ratio / k) * (1.0 - epsilon);
        rep.ppz_base_advice = std::pow(2.0, expo);
    }
    rep.ppsz_base = std::pow(2.0, 1.0 - rep.rk_integral);
    double threshold = static_cast<double>(k - 2) / (k - 1);
    rep.ppsz_subexponential = epsilon >= threshold - 1e-15;
    double ppsz_expo = std::max(0.0, 1.0 - rep.rk_integral - rep.eps_k);
    rep.ppsz_base_advice = std::pow(2.0, ppsz_expo);
    if (d) {
        rep.d = d;
        rep.delta_bound = delta_bound_value(k, *d);
    }
    return rep;
}

std::string theory_report_json(const TheoryReport& r) {
    nlohmann::json j;
    j["k"] = r.k;
    j["epsilon"] = r.epsilon;
    j["Rk_integral"] = r.rk_integral;
    j["eps_k"] = r.eps_k;
    j["ppz_base"] = r.ppz_base;
    j["ppz_base_advice"] = r.ppz_base_advice;
    j["ppsz_base"] = r.ppsz_base;
    j["ppsz_base_advice"] = r.ppsz_base_advice;
    j["ppsz_subexponential"] = r.ppsz_subexponential;
    j["o1_suppressed"] = r.o1_suppressed;
    if (r.d) {
        j["d"] = *r.d;
        j["delta_bound"] = *r.delta_bound;
    }
    return j.dump(2);
}

std::string theory_table_json() {
    nlohmann::json rows = nlohmann::json::array();
    for (int k = 3; k <= 6; ++k) {
        TheoryReport rep = base_constants(k, 0.0);
        rows.push_back({{"k", k},
                        {"ppz_base", rep.ppz_base},
                        {"ppsz_base", rep.ppsz_base},
                        {"o1_suppressed", true}});
    }
    return nlohmann::json{{"table", rows}}.dump(2);
}

}  // namespace advsat
