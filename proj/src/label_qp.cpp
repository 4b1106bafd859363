#include "advsat/label_qp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "advsat/simplex.hpp"

namespace advsat {

QuadraticModel build_model(const CnfFormula& phi) {
    QuadraticModel model;
    model.n = phi.num_vars();
    model.m = phi.num_clauses();
    int dim = 2 * model.n + 1;
    model.A.assign(static_cast<size_t>(dim) * dim, 0);
    model.d.assign(static_cast<size_t>(dim), 0);
    auto lit_index = [&](Lit l) {
        return lit_positive(l) ? lit_var(l) : model.n + lit_var(l);
    };
    for (int ci = 0; ci < phi.num_clauses(); ++ci) {
        const Clause& c = phi.clause(ci);
        if (c.size() != 2) {
            throw std::invalid_argument("clause " + std::to_string(ci + 1) +
                                        " does not have width 2");
        }
        int a = lit_index(c[0]);
        int b = lit_index(c[1]);
        model.A[static_cast<size_t>(a) * dim + b] += 1;
        model.A[static_cast<size_t>(b) * dim + a] += 1;
        model.d[static_cast<size_t>(a)] += 1;
        model.d[static_cast<size_t>(b)] += 1;
    }
    return model;
}

bool feasible_sign_vec(const QuadraticModel& model, const SignVec& y, double tol) {
    if (static_cast<int>(y.size()) != model.dim()) return false;
    if (std::fabs(y[0] - 1.0) > tol) return false;
    for (int i = 1; i <= model.n; ++i) {
        double v = y[static_cast<size_t>(i)];
        if (v < -1.0 - tol || v > 1.0 + tol) return false;
        if (std::fabs(y[static_cast<size_t>(model.n + i)] + v) > tol) return false;
    }
    return true;
}

double f_value(const QuadraticModel& model, const SignVec& y) {
    if (!feasible_sign_vec(model, y)) throw std::invalid_argument("infeasible sign vector");
    int dim = model.dim();
    double linear = 0.0;
    for (int i = 1; i < dim; ++i) {
        linear += y[static_cast<size_t>(i)] * static_cast<double>(model.d[static_cast<size_t>(i)]);
    }
    double quad = 0.0;
    for (int i = 1; i < dim; ++i) {
        double yi = y[static_cast<size_t>(i)];
        if (yi == 0.0) continue;
        double row = 0.0;
        const int* arow = &model.A[static_cast<size_t>(i) * dim];
        for (int j = 1; j < dim; ++j) {
            if (arow[j]) row += arow[j] * y[static_cast<size_t>(j)];
        }
        quad += yi * row;
    }
    return 2.0 * y[0] * linear + quad;
}

long f_value_integer(const QuadraticModel& model, const std::vector<int>& y) {
    int dim = model.dim();
    if (static_cast<int>(y.size()) != dim || y[0] != 1) {
        throw std::invalid_argument("integer sign vector must have y[0] = 1");
    }
    for (int i = 1; i <= model.n; ++i) {
        if ((y[static_cast<size_t>(i)] != 1 && y[static_cast<size_t>(i)] != -1) ||
            y[static_cast<size_t>(model.n + i)] != -y[static_cast<size_t>(i)]) {
            throw std::invalid_argument("integer sign vector infeasible");
        }
    }
    long linear = 0;
    for (int i = 1; i < dim; ++i) {
        linear += static_cast<long>(y[static_cast<size_t>(i)]) * model.d[static_cast<size_t>(i)];
    }
    long quad = 0;
    for (int i = 1; i < dim; ++i) {
        const int* arow = &model.A[static_cast<size_t>(i) * dim];
        long row = 0;
        for (int j = 1; j < dim; ++j) {
            if (arow[j]) row += static_cast<long>(arow[j]) * y[static_cast<size_t>(j)];
        }
        quad += static_cast<long>(y[static_cast<size_t>(i)]) * row;
    }
    return 2 * linear + quad;
}

double F_value(const QuadraticModel& model, const SignVec& y, const std::vector<int>& y_tilde,
               double epsilon) {
    if (!feasible_sign_vec(model, y)) throw std::invalid_argument("infeasible sign vector");
    if (epsilon <= 0.0 || epsilon > 1.0) throw std::invalid_argument("epsilon out of (0,1]");
    int dim = model.dim();
    double linear = 0.0;
    for (int i = 1; i < dim; ++i) {
        linear += y[static_cast<size_t>(i)] * static_cast<double>(model.d[static_cast<size_t>(i)]);
    }
    double cross = 0.0, l1 = 0.0;
    for (int j = 1; j < dim; ++j) {
        const int* arow = &model.A[static_cast<size_t>(j) * dim];
        double ay = 0.0, adiff = 0.0;
        for (int i = 1; i < dim; ++i) {
            if (!arow[i]) continue;
            double w = static_cast<double>(y_tilde[static_cast<size_t>(i)]) / epsilon;
            ay += arow[i] * w;
            adiff += arow[i] * (y[static_cast<size_t>(i)] - w);
        }
        cross += y[static_cast<size_t>(j)] * ay;
        l1 += std::fabs(adiff);
    }
    return 2.0 * y[0] * linear + cross + l1;
}

std::vector<int> label_to_sign(const QuadraticModel& model, const LabelAdvice& advice) {
    if (static_cast<int>(advice.labels.size()) != model.n) {
        throw std::invalid_argument("label advice length mismatch");
    }
    std::vector<int> y(static_cast<size_t>(model.dim()), 0);
    y[0] = 1;
    for (int i = 1; i <= model.n; ++i) {
        int s = advice.labels[static_cast<size_t>(i) - 1] ? -1 : 1;  // +1 encodes false
        y[static_cast<size_t>(i)] = s;
        y[static_cast<size_t>(model.n + i)] = -s;
    }
    return y;
}

std::vector<int> assignment_to_sign(const QuadraticModel& model, const std::vector<bool>& x) {
    if (static_cast<int>(x.size()) != model.n) {
        throw std::invalid_argument("assignment length mismatch");
    }
    std::vector<int> y(static_cast<size_t>(model.dim()), 0);
    y[0] = 1;
    for (int i = 1; i <= model.n; ++i) {
        int s = x[static_cast<size_t>(i) - 1] ? -1 : 1;
        y[static_cast<size_t>(i)] = s;
        y[static_cast<size_t>(model.n + i)] = -s;
    }
    return y;
}

std::vector<bool> sign_to_assignment(const QuadraticModel& model, const std::vector<int>& y) {
    std::vector<bool> x(static_cast<size_t>(model.n), false);
    for (int i = 1; i <= model.n; ++i) {
        x[static_cast<size_t>(i) - 1] = y[static_cast<size_t>(i)] == -1;
    }
    return x;
}

QpSolve solve_advice_program(const QuadraticModel& model, const std::vector<int>& y_tilde,
                             double epsilon, double gap_tol, long max_iterations) {
    if (epsilon <= 0.0 || epsilon > 1.0) throw std::invalid_argument("epsilon out of (0,1]");
    int n = model.n;
    int dim = model.dim();
    int rows = 2 * n;          // residual coordinates j = 1..2n
    int cols = n + 2 * rows;   // v, then p (positive part), then s (negative part)
    QpSolve out;

    // reduced data: Bmat[j][i] = A[j][i] - A[j][n+i], q_j = (A ytilde)_j / eps
    std::vector<double> Bmat(static_cast<size_t>(rows) * n, 0.0);
    std::vector<double> q(static_cast<size_t>(rows), 0.0);
    for (int j = 1; j < dim; ++j) {
        const int* arow = &model.A[static_cast<size_t>(j) * dim];
        double* brow = &Bmat[static_cast<size_t>(j - 1) * n];
        double qj = 0.0;
        for (int i = 1; i <= n; ++i) {
            int diff = arow[i] - arow[n + i];
            if (diff) brow[i - 1] = diff;
        }
        for (int i = 1; i < dim; ++i) {
            if (arow[i]) qj += arow[i] * (static_cast<double>(y_tilde[static_cast<size_t>(i)]) / epsilon);
        }
        q[static_cast<size_t>(j - 1)] = qj;
    }
    std::vector<double> cv(static_cast<size_t>(n), 0.0);
    for (int i = 1; i <= n; ++i) {
        cv[static_cast<size_t>(i - 1)] =
            2.0 * static_cast<double>(model.d[static_cast<size_t>(i)] -
                                      model.d[static_cast<size_t>(n + i)]) +
            (q[static_cast<size_t>(i - 1)] - q[static_cast<size_t>(n + i - 1)]);
    }

    if (model.m == 0) {
        // degenerate: any feasible point is optimal with F = 0
        out.y.assign(static_cast<size_t>(dim), 0.0);
        out.y[0] = 1.0;
        for (int i = 1; i <= n; ++i) {
            out.y[static_cast<size_t>(i)] = y_tilde[static_cast<size_t>(i)];
            out.y[static_cast<size_t>(n + i)] = -y_tilde[static_cast<size_t>(i)];
        }
        out.objective_F = 0.0;
        out.converged = true;
        return out;
    }

    LpProblem lp;
    lp.rows = rows;
    lp.cols = cols;
    lp.A.assign(static_cast<size_t>(rows) * cols, 0.0);
    lp.b = q;
    lp.c.assign(static_cast<size_t>(cols), 0.0);
    lp.lower.assign(static_cast<size_t>(cols), 0.0);
    lp.upper.assign(static_cast<size_t>(cols), 1e30);
    for (int i = 0; i < n; ++i) {
        lp.c[static_cast<size_t>(i)] = cv[static_cast<size_t>(i)];
        lp.lower[static_cast<size_t>(i)] = -1.0;
        lp.upper[static_cast<size_t>(i)] = 1.0;
    }
    for (int j = 0; j < rows; ++j) {
        for (int i = 0; i < n; ++i) {
            lp.A[static_cast<size_t>(j) * cols + i] = Bmat[static_cast<size_t>(j) * n + i];
        }
        lp.c[static_cast<size_t>(n + j)] = 1.0;          // p_j
        lp.c[static_cast<size_t>(n + rows + j)] = 1.0;   // s_j
        lp.A[static_cast<size_t>(j) * cols + n + j] = -1.0;
        lp.A[static_cast<size_t>(j) * cols + n + rows + j] = 1.0;
    }

    // warm start at v = ytilde signs; residual split gives the basis
    std::vector<double> x0(static_cast<size_t>(cols), 0.0);
    std::vector<int> basis(static_cast<size_t>(rows));
    for (int i = 0; i < n; ++i) x0[static_cast<size_t>(i)] = y_tilde[static_cast<size_t>(i + 1)];
    for (int j = 0; j < rows; ++j) {
        double r = -q[static_cast<size_t>(j)];
        for (int i = 0; i < n; ++i) {
            r += Bmat[static_cast<size_t>(j) * n + i] * x0[static_cast<size_t>(i)];
        }
        if (r >= 0.0) {
            basis[static_cast<size_t>(j)] = n + j;  // p_j basic
            x0[static_cast<size_t>(n + j)] = r;
        } else {
            basis[static_cast<size_t>(j)] = n + rows + j;  // s_j basic
            x0[static_cast<size_t>(n + rows + j)] = -r;
        }
    }

    LpResult lpres = solve_lp(lp, std::move(basis), std::move(x0), max_iterations);
    out.iterations = lpres.iterations;

    // l1 dual certificate: for any s in [-1,1]^rows,
    //   min >= -|cv + Bmat' s|_1 - q's
    double best_lb = -1e300;
    for (double sign : {-1.0, 1.0}) {
        double lb = 0.0;
        std::vector<double> bts(static_cast<size_t>(n), 0.0);
        double qs = 0.0;
        for (int j = 0; j < rows; ++j) {
            double sj = std::clamp(sign * lpres.row_duals[static_cast<size_t>(j)], -1.0, 1.0);
            qs += q[static_cast<size_t>(j)] * sj;
            for (int i = 0; i < n; ++i) {
                bts[static_cast<size_t>(i)] += Bmat[static_cast<size_t>(j) * n + i] * sj;
            }
        }
        double norm = 0.0;
        for (int i = 0; i < n; ++i) norm += std::fabs(cv[static_cast<size_t>(i)] + bts[static_cast<size_t>(i)]);
        lb = -norm - qs;
        best_lb = std::max(best_lb, lb);
    }

    out.objective_F = lpres.objective;
    out.certified_gap = (lpres.objective - best_lb) / std::max(1.0, std::fabs(lpres.objective));
    out.converged = lpres.status == LpStatus::Optimal && out.certified_gap <= gap_tol;

    out.y.assign(static_cast<size_t>(dim), 0.0);
    out.y[0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        double v = std::clamp(lpres.x[static_cast<size_t>(i - 1)], -1.0, 1.0);
        out.y[static_cast<size_t>(i)] = v;
        out.y[static_cast<size_t>(n + i)] = -v;
    }
    return out;
}

std::vector<int> round_solution(const QuadraticModel& model, const SignVec& y) {
    if (!feasible_sign_vec(model, y)) throw std::invalid_argument("infeasible sign vector");
    int n = model.n;
    int dim = model.dim();
    // running Ay over the current mixed (partially rounded) vector
    std::vector<double> cur(y);
    std::vector<double> Ay(static_cast<size_t>(dim), 0.0);
    for (int j = 1; j < dim; ++j) {
        const int* arow = &model.A[static_cast<size_t>(j) * dim];
        double acc = 0.0;
        for (int i = 1; i < dim; ++i) {
            if (arow[i]) acc += arow[i] * cur[static_cast<size_t>(i)];
        }
        Ay[static_cast<size_t>(j)] = acc;
    }
    std::vector<int> rounded(static_cast<size_t>(dim), 0);
    rounded[0] = 1;
    for (int i = 1; i <= n; ++i) {
        // d f / d y_i with the pairing substituted; self terms vanish because
        // the diagonal and the (i, n+i) entries are zero
        double slope = 2.0 * static_cast<double>(model.d[static_cast<size_t>(i)] -
                                                 model.d[static_cast<size_t>(n + i)]) +
                       2.0 * (Ay[static_cast<size_t>(i)] - Ay[static_cast<size_t>(n + i)]);
        int s;
        if (slope > 0.0) {
            s = -1;
        } else if (slope < 0.0) {
            s = 1;
        } else {
            double frac = cur[static_cast<size_t>(i)];
            s = frac > 0.0 ? 1 : (frac < 0.0 ? -1 : 1);
        }
        double delta = s - cur[static_cast<size_t>(i)];
        if (delta != 0.0) {
            for (int j = 1; j < dim; ++j) {
                const int* arow = &model.A[static_cast<size_t>(j) * dim];
                double upd = 0.0;
                if (arow[i]) upd += arow[i] * delta;
                if (arow[n + i]) upd -= arow[n + i] * delta;
                if (upd != 0.0) Ay[static_cast<size_t>(j)] += upd;
            }
            cur[static_cast<size_t>(i)] = s;
            cur[static_cast<size_t>(n + i)] = -s;
        }
        rounded[static_cast<size_t>(i)] = s;
        rounded[static_cast<size_t>(n + i)] = -s;
    }
    return rounded;
}

LabelQpResult max2sat_with_label_advice(const CnfFormula& phi, const LabelAdvice& advice,
                                        double gap_tol, long max_iterations,
                                        const std::vector<bool>* planted) {
    QuadraticModel model = build_model(phi);
    std::vector<int> y_tilde = label_to_sign(model, advice);
    QpSolve solved = solve_advice_program(model, y_tilde, advice.epsilon, gap_tol, max_iterations);
    std::vector<int> y_hat = round_solution(model, solved.y);

    LabelQpResult out;
    out.audit.F_relaxed = F_value(model, solved.y, y_tilde, advice.epsilon);
    out.audit.certified_gap = solved.certified_gap;
    out.audit.converged = solved.converged;
    out.audit.f_relaxed = f_value(model, solved.y);
    SignVec y_hat_d(y_hat.begin(), y_hat.end());
    out.audit.f_rounded = f_value(model, y_hat_d);
    if (planted) {
        std::vector<int> y_star = assignment_to_sign(model, *planted);
        SignVec y_star_d(y_star.begin(), y_star.end());
        out.audit.F_star = F_value(model, y_star_d, y_tilde, advice.epsilon);
    }

    out.approx.baseline_name = "label-qp";
    out.approx.assignment = sign_to_assignment(model, y_hat);
    out.approx.satisfied = count_satisfied(phi, out.approx.assignment);
    return out;
}

Lin2Instance parse_lin2(const std::string& text) {
    Lin2Instance lin;
    std::istringstream in(text);
    std::string line;
    int max_var = 0;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#' || line[0] == 'c') continue;
        std::istringstream ls(line);
        Lin2Constraint con;
        if (!(ls >> con.i >> con.j >> con.rhs)) {
            throw std::runtime_error("bad constraint at line " + std::to_string(line_no));
        }
        if (con.i < 1 || con.j < 1 || (con.rhs != 1 && con.rhs != -1)) {
            throw std::runtime_error("bad constraint at line " + std::to_string(line_no));
        }
        if (con.i == con.j) {
            throw std::runtime_error("self-loop constraint at line " + std::to_string(line_no));
        }
        max_var = std::max({max_var, con.i, con.j});
        lin.constraints.push_back(con);
    }
    lin.n = max_var;
    return lin;
}

Lin2Instance read_lin2_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_lin2(ss.str());
}

std::string serialize_lin2(const Lin2Instance& lin) {
    std::ostringstream out;
    for (const Lin2Constraint& c : lin.constraints) {
        out << c.i << " " << c.j << " " << (c.rhs > 0 ? "+1" : "-1") << "\n";
    }
    return out.str();
}

CnfFormula lin2_to_sat2(const Lin2Instance& lin) {
    std::vector<Clause> clauses;
    clauses.reserve(lin.constraints.size() * 2);
    for (size_t idx = 0; idx < lin.constraints.size(); ++idx) {
        const Lin2Constraint& c = lin.constraints[idx];
        if (c.i == c.j) {
            throw std::invalid_argument("self-loop constraint " + std::to_string(idx + 1));
        }
        if (c.rhs == 1) {
            clauses.push_back({c.i, -c.j});
            clauses.push_back({-c.i, c.j});
        } else {
            clauses.push_back({c.i, c.j});
            clauses.push_back({-c.i, -c.j});
        }
    }
    return CnfFormula(lin.n, std::move(clauses), 2);
}

int count_lin_satisfied(const Lin2Instance& lin, const std::vector<bool>& x) {
    if (static_cast<int>(x.size()) != lin.n) {
        throw std::invalid_argument("assignment length mismatch");
    }
    int cnt = 0;
    for (const Lin2Constraint& c : lin.constraints) {
        int zi = x[static_cast<size_t>(c.i) - 1] ? 1 : -1;
        int zj = x[static_cast<size_t>(c.j) - 1] ? 1 : -1;
        if (zi * zj == c.rhs) ++cnt;
    }
    return cnt;
}

}  // namespace advsat
