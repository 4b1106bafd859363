#include "advsat/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace advsat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Tableau {
    const LpProblem* p;
    std::vector<int> basis;          // basis[r] = column basic in row r
    std::vector<int> in_basis_row;   // column -> row, or -1
    std::vector<char> at_upper;      // nonbasic position flag
    std::vector<double> x;
    std::vector<double> binv;        // rows x rows, row-major

    double binv_at(int r, int c) const {
        return binv[static_cast<size_t>(r) * p->rows + c];
    }

    // recompute binv = inverse of the basis matrix by Gauss-Jordan
    bool refactor() {
        int m = p->rows;
        std::vector<double> mat(static_cast<size_t>(m) * 2 * m, 0.0);
        for (int r = 0; r < m; ++r) {
            for (int i = 0; i < m; ++i) {
                mat[static_cast<size_t>(r) * 2 * m + i] = p->at(r, basis[static_cast<size_t>(i)]);
            }
            mat[static_cast<size_t>(r) * 2 * m + m + r] = 1.0;
        }
        for (int col = 0; col < m; ++col) {
            int piv = -1;
            double best = 1e-11;
            for (int r = col; r < m; ++r) {
                double v = std::fabs(mat[static_cast<size_t>(r) * 2 * m + col]);
                if (v > best) {
                    best = v;
                    piv = r;
                }
            }
            if (piv < 0) return false;
            if (piv != col) {
                for (int j = 0; j < 2 * m; ++j) {
                    std::swap(mat[static_cast<size_t>(piv) * 2 * m + j],
                              mat[static_cast<size_t>(col) * 2 * m + j]);
                }
            }
            double d = mat[static_cast<size_t>(col) * 2 * m + col];
            for (int j = 0; j < 2 * m; ++j) mat[static_cast<size_t>(col) * 2 * m + j] /= d;
            for (int r = 0; r < m; ++r) {
                if (r == col) continue;
                double f = mat[static_cast<size_t>(r) * 2 * m + col];
                if (f == 0.0) continue;
                for (int j = 0; j < 2 * m; ++j) {
                    mat[static_cast<size_t>(r) * 2 * m + j] -=
                        f * mat[static_cast<size_t>(col) * 2 * m + j];
                }
            }
        }
        for (int r = 0; r < m; ++r) {
            for (int j = 0; j < m; ++j) {
                binv[static_cast<size_t>(r) * m + j] = mat[static_cast<size_t>(r) * 2 * m + m + j];
            }
        }
        return true;
    }

    // recompute basic variable values from nonbasic bounds: x_B = B^-1 (b - N x_N)
    void recompute_basics() {
        int m = p->rows;
        std::vector<double> rhs(p->b);
        for (int j = 0; j < p->cols; ++j) {
            if (in_basis_row[static_cast<size_t>(j)] >= 0) continue;
            double v = x[static_cast<size_t>(j)];
            if (v == 0.0) continue;
            for (int r = 0; r < m; ++r) rhs[static_cast<size_t>(r)] -= p->at(r, j) * v;
        }
        for (int r = 0; r < m; ++r) {
            double v = 0.0;
            for (int i = 0; i < m; ++i) v += binv_at(r, i) * rhs[static_cast<size_t>(i)];
            x[static_cast<size_t>(basis[static_cast<size_t>(r)])] = v;
        }
    }
};

}  // namespace

LpResult solve_lp(const LpProblem& p, std::vector<int> basis, std::vector<double> x0,
                  long max_iterations, double tol) {
    LpResult res;
    int m = p.rows, n = p.cols;
    if (static_cast<int>(basis.size()) != m || static_cast<int>(x0.size()) != n) {
        throw std::invalid_argument("solve_lp: bad starting basis or point");
    }
    Tableau t;
    t.p = &p;
    t.basis = std::move(basis);
    t.x = std::move(x0);
    t.in_basis_row.assign(static_cast<size_t>(n), -1);
    for (int r = 0; r < m; ++r) t.in_basis_row[static_cast<size_t>(t.basis[static_cast<size_t>(r)])] = r;
    t.at_upper.assign(static_cast<size_t>(n), 0);
    for (int j = 0; j < n; ++j) {
        if (t.in_basis_row[static_cast<size_t>(j)] >= 0) continue;
        double lo = p.lower[static_cast<size_t>(j)], hi = p.upper[static_cast<size_t>(j)];
        double v = t.x[static_cast<size_t>(j)];
        if (std::fabs(v - lo) <= 1e-7) {
            t.x[static_cast<size_t>(j)] = lo;
        } else if (std::fabs(v - hi) <= 1e-7) {
            t.x[static_cast<size_t>(j)] = hi;
            t.at_upper[static_cast<size_t>(j)] = 1;
        } else {
            throw std::invalid_argument("solve_lp: nonbasic start not on a bound");
        }
    }
    t.binv.assign(static_cast<size_t>(m) * m, 0.0);
    if (!t.refactor()) {
        res.status = LpStatus::NumericalFailure;
        return res;
    }
    t.recompute_basics();

    std::vector<double> y(static_cast<size_t>(m));
    std::vector<double> w(static_cast<size_t>(m));
    long it = 0;
    long since_refactor = 0;
    long stall = 0;
    double last_obj = kInf;
    while (it < max_iterations) {
        // duals y = c_B' B^-1
        for (int i = 0; i < m; ++i) {
            double v = 0.0;
            for (int r = 0; r < m; ++r) {
                v += p.c[static_cast<size_t>(t.basis[static_cast<size_t>(r)])] * t.binv_at(r, i);
            }
            y[static_cast<size_t>(i)] = v;
        }
        // pricing
        bool use_bland = stall > 2 * (m + 10);
        int enter = -1;
        double best_score = tol;
        for (int j = 0; j < n; ++j) {
            if (t.in_basis_row[static_cast<size_t>(j)] >= 0) continue;
            double d = p.c[static_cast<size_t>(j)];
            for (int r = 0; r < m; ++r) d -= y[static_cast<size_t>(r)] * p.at(r, j);
            double score;
            if (t.at_upper[static_cast<size_t>(j)]) {
                score = d;  // leaving upper bound pays when reduced cost positive
            } else {
                score = -d;
            }
            if (score > best_score) {
                if (use_bland) {
                    enter = j;
                    break;
                }
                best_score = score;
                enter = j;
            }
        }
        if (enter < 0) {
            res.status = LpStatus::Optimal;
            break;
        }
        ++it;
        bool from_upper = t.at_upper[static_cast<size_t>(enter)] != 0;
        double dir = from_upper ? -1.0 : 1.0;  // movement direction of x_enter
        // w = B^-1 A_enter
        for (int r = 0; r < m; ++r) {
            double v = 0.0;
            for (int i = 0; i < m; ++i) v += t.binv_at(r, i) * p.at(i, enter);
            w[static_cast<size_t>(r)] = v;
        }
        // ratio test: x_B moves by -dir * w * step
        double limit = p.upper[static_cast<size_t>(enter)] - p.lower[static_cast<size_t>(enter)];
        int leave_row = -1;
        bool leave_to_upper = false;
        for (int r = 0; r < m; ++r) {
            int bj = t.basis[static_cast<size_t>(r)];
            double xr = t.x[static_cast<size_t>(bj)];
            double delta = -dir * w[static_cast<size_t>(r)];
            if (delta > 1e-11) {
                double room = (p.upper[static_cast<size_t>(bj)] - xr) / delta;
                if (room < limit - 1e-12) {
                    limit = room;
                    leave_row = r;
                    leave_to_upper = true;
                }
            } else if (delta < -1e-11) {
                double room = (p.lower[static_cast<size_t>(bj)] - xr) / delta;
                if (room < limit - 1e-12) {
                    limit = room;
                    leave_row = r;
                    leave_to_upper = false;
                }
            }
        }
        if (limit >= 1e29) {  // bounds at or above 1e29 stand in for +inf
            res.status = LpStatus::Unbounded;
            break;
        }
        double step = std::max(0.0, limit);
        // apply the move
        t.x[static_cast<size_t>(enter)] += dir * step;
        for (int r = 0; r < m; ++r) {
            int bj = t.basis[static_cast<size_t>(r)];
            t.x[static_cast<size_t>(bj)] -= dir * step * w[static_cast<size_t>(r)];
        }
        if (leave_row < 0) {
            // bound-to-bound flip
            t.at_upper[static_cast<size_t>(enter)] = from_upper ? 0 : 1;
        } else {
            int out = t.basis[static_cast<size_t>(leave_row)];
            t.x[static_cast<size_t>(out)] = leave_to_upper ? p.upper[static_cast<size_t>(out)]
                                                           : p.lower[static_cast<size_t>(out)];
            t.at_upper[static_cast<size_t>(out)] = leave_to_upper ? 1 : 0;
            t.in_basis_row[static_cast<size_t>(out)] = -1;
            t.basis[static_cast<size_t>(leave_row)] = enter;
            t.in_basis_row[static_cast<size_t>(enter)] = leave_row;
            t.at_upper[static_cast<size_t>(enter)] = 0;
            // product-form update of B^-1: pivot on w[leave_row]
            double piv = w[static_cast<size_t>(leave_row)];
            if (std::fabs(piv) < 1e-11) {
                if (!t.refactor()) {
                    res.status = LpStatus::NumericalFailure;
                    break;
                }
            } else {
                for (int i = 0; i < m; ++i) {
                    t.binv[static_cast<size_t>(leave_row) * m + i] /= piv;
                }
                for (int r = 0; r < m; ++r) {
                    if (r == leave_row) continue;
                    double f = w[static_cast<size_t>(r)];
                    if (f == 0.0) continue;
                    for (int i = 0; i < m; ++i) {
                        t.binv[static_cast<size_t>(r) * m + i] -=
                            f * t.binv_at(leave_row, i);
                    }
                }
            }
            if (++since_refactor >= 256) {
                since_refactor = 0;
                if (!t.refactor()) {
                    res.status = LpStatus::NumericalFailure;
                    break;
                }
                t.recompute_basics();
            }
        }
        double obj = 0.0;
        for (int j = 0; j < n; ++j) obj += p.c[static_cast<size_t>(j)] * t.x[static_cast<size_t>(j)];
        if (obj < last_obj - 1e-12) {
            last_obj = obj;
            stall = 0;
        } else {
            ++stall;
        }
    }
    if (it >= max_iterations && res.status != LpStatus::Optimal) {
        res.status = LpStatus::IterationLimit;
    }
    res.iterations = it;
    // final duals for the caller's certificate
    for (int i = 0; i < m; ++i) {
        double v = 0.0;
        for (int r = 0; r < m; ++r) {
            v += p.c[static_cast<size_t>(t.basis[static_cast<size_t>(r)])] * t.binv_at(r, i);
        }
        y[static_cast<size_t>(i)] = v;
    }
    res.row_duals = y;
    res.x = t.x;
    res.objective = 0.0;
    for (int j = 0; j < n; ++j) {
        res.objective += p.c[static_cast<size_t>(j)] * res.x[static_cast<size_t>(j)];
    }
    return res;
}

}  // namespace advsat
