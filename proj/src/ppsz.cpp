#include "advsat/ppsz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "advsat/parallel.hpp"
#include "advsat/rng.hpp"
#include "advsat/theory.hpp"

namespace advsat {

namespace {

constexpr std::uint64_t kPermTag = 0x5045524dULL;
constexpr std::uint64_t kIterTag = 0x49544552ULL;

// incremental clause bookkeeping for one solver iteration
struct ClauseCounts {
    std::vector<int> n_unset;
    std::vector<int> n_true;

    void init(const CnfFormula& phi, const PartialAssignment& sigma) {
        int m = phi.num_clauses();
        n_unset.assign(static_cast<size_t>(m), 0);
        n_true.assign(static_cast<size_t>(m), 0);
        for (int ci = 0; ci < m; ++ci) {
            for (Lit l : phi.clause(ci)) {
                std::optional<bool> v = sigma.lit_value(l);
                if (!v) {
                    ++n_unset[static_cast<size_t>(ci)];
                } else if (*v) {
                    ++n_true[static_cast<size_t>(ci)];
                }
            }
        }
    }

    // returns false if assigning v=b empties a clause (contradiction)
    bool assign(const CnfFormula& phi, int v, bool b) {
        bool ok = true;
        for (int ci : phi.occurrences(v)) {
            size_t c = static_cast<size_t>(ci);
            bool pos = false;
            for (Lit l : phi.clause(ci)) {
                if (lit_var(l) == v) {
                    pos = lit_positive(l);
                    break;
                }
            }
            --n_unset[c];
            if (pos == b) {
                ++n_true[c];
            } else if (n_true[c] == 0 && n_unset[c] == 0) {
                ok = false;
            }
        }
        return ok;
    }

    // D=1 forcing: some unsatisfied clause has v as its only unset literal
    std::optional<bool> unit_forced(const CnfFormula& phi, int v) const {
        for (int ci : phi.occurrences(v)) {
            size_t c = static_cast<size_t>(ci);
            if (n_true[c] == 0 && n_unset[c] == 1) {
                for (Lit l : phi.clause(ci)) {
                    if (lit_var(l) == v) return lit_positive(l);
                }
            }
        }
        return std::nullopt;
    }
};

// brute-force agreement check over the unset variables of a clause subset
struct SubsetForcer {
    const CnfFormula* phi;
    const PartialAssignment* sigma;
    int var;
    std::vector<int> unset_vars;  // scratch: union of unset vars of the subset

    void collect(const std::vector<int>& subset) {
        unset_vars.clear();
        for (int ci : subset) {
            for (Lit l : phi->clause(ci)) {
                int v = lit_var(l);
                if (!sigma->is_set(v) &&
                    std::find(unset_vars.begin(), unset_vars.end(), v) == unset_vars.end()) {
                    unset_vars.push_back(v);
                }
            }
        }
    }

    // returns forced value if every satisfying assignment of the subset agrees
    // on var; unsat subsets set *contradiction
    std::optional<bool> check(const std::vector<int>& subset, bool* contradiction) {
        collect(subset);
        int u = static_cast<int>(unset_vars.size());
        if (u > 20) return std::nullopt;  // cannot happen for D<=3, k small
        bool seen_true = false, seen_false = false, seen_any = false;
        for (unsigned mask = 0; mask < (1u << u); ++mask) {
            bool all_sat = true;
            for (int ci : subset) {
                bool sat = false;
                for (Lit l : phi->clause(ci)) {
                    int v = lit_var(l);
                    std::optional<bool> sv = sigma->lit_value(l);
                    bool value;
                    if (sv) {
                        value = *sv;
                    } else {
                        int pos = static_cast<int>(
                            std::find(unset_vars.begin(), unset_vars.end(), v) -
                            unset_vars.begin());
                        bool bit = (mask >> pos) & 1u;
                        value = bit == lit_positive(l);
                    }
                    if (value) {
                        sat = true;
                        break;
                    }
                }
                if (!sat) {
                    all_sat = false;
                    break;
                }
            }
            if (!all_sat) continue;
            seen_any = true;
            int pos = static_cast<int>(std::find(unset_vars.begin(), unset_vars.end(), var) -
                                       unset_vars.begin());
            bool value = (mask >> pos) & 1u;
            if (value) seen_true = true; else seen_false = true;
            if (seen_true && seen_false) return std::nullopt;
        }
        if (!seen_any) {
            if (contradiction) *contradiction = true;
            return std::nullopt;
        }
        return seen_true;
    }
};

}  // namespace

std::optional<bool> d_implies(const CnfFormula& phi, const PartialAssignment& sigma,
                              int var, int D, bool* contradiction) {
    if (D < 1) throw std::invalid_argument("D must be >= 1");
    if (D > 3) throw std::invalid_argument("D > 3 not supported");
    if (sigma.is_set(var)) throw std::invalid_argument("d_implies: var already set");
    if (contradiction) *contradiction = false;

    // alive = not yet satisfied by sigma; precompute unset-variable lists
    int m = phi.num_clauses();
    std::vector<char> alive(static_cast<size_t>(m), 0);
    std::vector<std::vector<int>> unset(static_cast<size_t>(m));
    for (int ci = 0; ci < m; ++ci) {
        bool sat = false;
        for (Lit l : phi.clause(ci)) {
            std::optional<bool> v = sigma.lit_value(l);
            if (v && *v) {
                sat = true;
                break;
            }
        }
        if (sat) continue;
        alive[static_cast<size_t>(ci)] = 1;
        for (Lit l : phi.clause(ci)) {
            if (!sigma.is_set(lit_var(l))) unset[static_cast<size_t>(ci)].push_back(lit_var(l));
        }
        if (unset[static_cast<size_t>(ci)].empty()) {
            // sigma already falsifies this clause
            if (contradiction) *contradiction = true;
            return std::nullopt;
        }
    }

    std::vector<int> touching;  // alive clauses containing var
    for (int ci : phi.occurrences(var)) {
        if (alive[static_cast<size_t>(ci)]) touching.push_back(ci);
    }
    if (touching.empty()) return std::nullopt;

    SubsetForcer forcer{&phi, &sigma, var, {}};
    bool contra = false;

    // clauses sharing an unset variable with clause ci
    auto neighbors = [&](int ci, std::vector<int>& out) {
        for (int v : unset[static_cast<size_t>(ci)]) {
            for (int cj : phi.occurrences(v)) {
                if (cj != ci && alive[static_cast<size_t>(cj)] &&
                    std::find(out.begin(), out.end(), cj) == out.end()) {
                    out.push_back(cj);
                }
            }
        }
    };

    std::vector<int> subset;
    for (int c1 : touching) {
        subset = {c1};
        if (auto f = forcer.check(subset, &contra)) return f;
        if (contra) break;
    }
    if (!contra && D >= 2) {
        std::vector<int> cand2;
        for (int c1 : touching) {
            cand2.clear();
            neighbors(c1, cand2);
            for (int c2 : touching) {
                if (c2 != c1 && std::find(cand2.begin(), cand2.end(), c2) == cand2.end()) {
                    cand2.push_back(c2);
                }
            }
            for (int c2 : cand2) {
                subset = {c1, c2};
                if (auto f = forcer.check(subset, &contra)) return f;
                if (contra) break;
                if (D >= 3) {
                    std::vector<int> cand3 = cand2;
                    neighbors(c2, cand3);
                    for (int c3 : cand3) {
                        if (c3 == c1 || c3 == c2) continue;
                        subset = {c1, c2, c3};
                        if (auto f = forcer.check(subset, &contra)) return f;
                        if (contra) break;
                    }
                    subset.resize(2);
                }
                if (contra) break;
            }
            if (contra) break;
        }
    }
    if (contra) {
        if (contradiction) *contradiction = true;
        return std::nullopt;
    }
    return std::nullopt;
}

double guess_rate(int k, double epsilon, int D) {
    if (k < 2) throw std::invalid_argument("k must be >= 2");
    if (epsilon < 0.0) throw std::invalid_argument("epsilon must be >= 0");
    if (epsilon >= 1.0) return 0.0;  // everything revealed, nothing guessed
    double g1 = (1.0 - epsilon) - (1.0 - std::pow(epsilon, k)) / k;
    double g = g1;
    if (D >= 2 && k >= 3) {
        double profile = 1.0 - rk_integral(k) - eps_k(k, epsilon) + delta_bound_value(k, D);
        g = std::min(g1, std::max(0.0, profile));
    }
    return std::max(0.0, g);
}

long auto_iterations(int n, int k, double epsilon, int D, double delta) {
    if (delta <= 0.0 || delta >= 1.0) throw std::invalid_argument("delta out of (0,1)");
    double g = guess_rate(k, epsilon, D);
    double t = std::ceil(std::log(1.0 / delta) * std::pow(2.0, g * n));
    if (t > 4e18) throw std::invalid_argument("auto iteration count overflows");
    return std::max<long>(1, static_cast<long>(t));
}

namespace {

struct IterationOutcome {
    bool completed = false;
    bool sat = false;
    int forced = 0;
    int guessed = 0;
    std::vector<bool> assignment;
};

IterationOutcome run_iteration(const CnfFormula& phi, const PartialAssignment& base,
                               const std::vector<int>& free_vars, int D,
                               std::uint64_t seed, long iter) {
    IterationOutcome out;
    PartialAssignment sigma = base;
    ClauseCounts counts;
    counts.init(phi, sigma);
    std::mt19937_64 rng = make_rng(seed, kIterTag, static_cast<std::uint64_t>(iter));
    std::vector<int> perm = free_vars;
    for (size_t i = perm.size(); i > 1; --i) {
        size_t j = rng() % i;
        std::swap(perm[i - 1], perm[j]);
    }
    for (int v : perm) {
        std::optional<bool> forced = counts.unit_forced(phi, v);
        if (!forced && D >= 2) {
            bool contra = false;
            forced = d_implies(phi, sigma, v, D, &contra);
            if (contra) return out;
        }
        bool b;
        if (forced) {
            b = *forced;
            ++out.forced;
        } else {
            b = (rng() & 1) != 0;
            ++out.guessed;
        }
        sigma.set(v, b);
        if (!counts.assign(phi, v, b)) return out;
    }
    out.completed = true;
    std::vector<bool> x(static_cast<size_t>(phi.num_vars()), false);
    for (int v = 1; v <= phi.num_vars(); ++v) x[static_cast<size_t>(v) - 1] = sigma.value(v);
    if (count_satisfied(phi, x) == phi.num_clauses()) {
        out.sat = true;
        out.assignment = std::move(x);
    }
    return out;
}

}  // namespace

SolveResult ppsz_with_advice(const CnfFormula& phi, const SubsetAdvice& advice,
                             const SolverConfig& cfg) {
    if (cfg.implication_D < 1) throw std::invalid_argument("D must be >= 1");
    SolveResult res;
    PartialAssignment base(phi.num_vars());
    for (const auto& [v, b] : advice.revealed) {
        if (v >= 1 && v <= phi.num_vars()) base.set(v, b);
    }
    // advice consistency: the advice alone must not falsify any clause
    ReductionOutcome red = reduce(phi, base);
    int advice_count = 0;
    for (int v = 1; v <= phi.num_vars(); ++v) {
        if (base.is_set(v)) ++advice_count;
    }
    res.stats.advice_assigned = advice_count;
    if (red.status == ReductionStatus::Falsified) {
        res.status = SolverStatus::AdviceContradiction;
        return res;
    }
    if (red.status == ReductionStatus::Satisfied && advice_count == phi.num_vars()) {
        std::vector<bool> x(static_cast<size_t>(phi.num_vars()), false);
        for (int v = 1; v <= phi.num_vars(); ++v) x[static_cast<size_t>(v) - 1] = base.value(v);
        res.status = SolverStatus::Sat;
        res.assignment = x;
        return res;
    }

    std::vector<int> free_vars;
    for (int v = 1; v <= phi.num_vars(); ++v) {
        if (!base.is_set(v)) free_vars.push_back(v);
    }

    int k = std::max(2, phi.max_width());
    long T = cfg.iterations_T > 0
                 ? cfg.iterations_T
                 : auto_iterations(static_cast<int>(free_vars.size()) + advice_count, k,
                                   advice.epsilon, cfg.implication_D,
                                   cfg.failure_prob_delta);

    if (cfg.record_iterations) {
        res.stats.forced_per_iter.reserve(static_cast<size_t>(std::min<long>(T, 1 << 20)));
        res.stats.guessed_per_iter.reserve(static_cast<size_t>(std::min<long>(T, 1 << 20)));
    }

    int workers = cfg.num_workers > 0 ? cfg.num_workers : resolve_workers();
    const long chunk = std::max<long>(64, std::min<long>(4096, T / std::max(1, workers)));
    long success_iter = -1;
    std::vector<IterationOutcome> buf;
    for (long start = 0; start < T && success_iter < 0; start += chunk) {
        long end = std::min(T, start + chunk);
        buf.assign(static_cast<size_t>(end - start), {});
        parallel_for(0L, end - start, workers, [&](long off) {
            buf[static_cast<size_t>(off)] = run_iteration(
                phi, base, free_vars, cfg.implication_D, cfg.seed, start + off);
        });
        for (long off = 0; off < end - start; ++off) {
            const IterationOutcome& o = buf[static_cast<size_t>(off)];
            ++res.stats.iterations_used;
            if (o.completed) {
                ++res.stats.completed_iterations;
                res.stats.sum_forced += o.forced;
                res.stats.sum_guessed += o.guessed;
            }
            if (cfg.record_iterations) {
                res.stats.forced_per_iter.push_back(o.forced);
                res.stats.guessed_per_iter.push_back(o.guessed);
                res.stats.completed_per_iter.push_back(o.completed ? 1 : 0);
            }
            if (o.sat) {
                success_iter = start + off;
                res.status = SolverStatus::Sat;
                res.assignment = o.assignment;
                break;
            }
        }
    }
    if (success_iter < 0) res.status = SolverStatus::UnsatPresumed;
    return res;
}

WalkCounts planted_walk(const CnfFormula& phi, const std::vector<bool>& planted,
                        const SubsetAdvice& advice, int D, std::uint64_t perm_seed) {
    WalkCounts out;
    PartialAssignment sigma(phi.num_vars());
    for (const auto& [v, b] : advice.revealed) {
        if (v >= 1 && v <= phi.num_vars()) {
            sigma.set(v, b);
            ++out.advice_assigned;
        }
    }
    ClauseCounts counts;
    counts.init(phi, sigma);
    // shuffle all n variables, then skip the advice-set ones: walks sharing a
    // perm_seed stay aligned across nested advice sets (a larger set only
    // removes variables from the order, it never reorders the rest)
    std::vector<int> perm(static_cast<size_t>(phi.num_vars()));
    for (int v = 1; v <= phi.num_vars(); ++v) perm[static_cast<size_t>(v) - 1] = v;
    std::mt19937_64 rng = make_rng(perm_seed, kPermTag, 0);
    for (size_t i = perm.size(); i > 1; --i) {
        size_t j = rng() % i;
        std::swap(perm[i - 1], perm[j]);
    }
    for (int v : perm) {
        if (sigma.is_set(v)) continue;
        std::optional<bool> forced = counts.unit_forced(phi, v);
        if (!forced && D >= 2) {
            bool contra = false;
            forced = d_implies(phi, sigma, v, D, &contra);
            if (contra) throw std::logic_error("planted walk hit a contradiction");
        }
        if (forced) {
            if (*forced != planted[static_cast<size_t>(v) - 1]) {
                throw std::logic_error("planted walk forced off the planted assignment");
            }
            ++out.forced;
        } else {
            ++out.guessed;
        }
        bool b = planted[static_cast<size_t>(v) - 1];
        sigma.set(v, b);
        if (!counts.assign(phi, v, b)) {
            throw std::logic_error("planted assignment does not satisfy the formula");
        }
    }
    return out;
}

}  // namespace advsat
