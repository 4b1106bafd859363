#include "advsat/maxsat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "advsat/parallel.hpp"
#include "advsat/rng.hpp"

namespace advsat {

namespace {
constexpr std::uint64_t kRandomBaselineTag = 0x52414e44ULL;
}

ApproxResult baseline_random(const CnfFormula& phi, std::uint64_t seed) {
    ApproxResult res;
    res.baseline_name = "random";
    std::mt19937_64 rng = make_rng(seed, kRandomBaselineTag, 0);
    res.assignment.resize(static_cast<size_t>(phi.num_vars()));
    for (int v = 0; v < phi.num_vars(); ++v) {
        res.assignment[static_cast<size_t>(v)] = (rng() & 1) != 0;
    }
    res.satisfied = count_satisfied(phi, res.assignment);
    return res;
}

ApproxResult baseline_condexp(const CnfFormula& phi) {
    ApproxResult res;
    res.baseline_name = "condexp";
    int n = phi.num_vars();
    int m = phi.num_clauses();
    std::vector<int> n_unset(static_cast<size_t>(m), 0);
    std::vector<char> satisfied(static_cast<size_t>(m), 0);
    for (int ci = 0; ci < m; ++ci) {
        n_unset[static_cast<size_t>(ci)] = static_cast<int>(phi.clause(ci).size());
    }
    res.assignment.assign(static_cast<size_t>(n), false);
    // For each variable pick the value maximizing the expected satisfied count
    // under uniform completion; only clauses containing the variable move.
    for (int v = 1; v <= n; ++v) {
        double delta_true = 0.0, delta_false = 0.0;
        for (int ci : phi.occurrences(v)) {
            size_t c = static_cast<size_t>(ci);
            if (satisfied[c]) continue;
            bool pos = false;
            for (Lit l : phi.clause(ci)) {
                if (lit_var(l) == v) {
                    pos = lit_positive(l);
                    break;
                }
            }
            double before = 1.0 - std::ldexp(1.0, -n_unset[c]);
            // satisfying literal: clause certain; falsified literal: one fewer coin
            double after_match = 1.0;
            double after_miss = 1.0 - std::ldexp(1.0, -(n_unset[c] - 1));
            if (pos) {
                delta_true += after_match - before;
                delta_false += after_miss - before;
            } else {
                delta_true += after_miss - before;
                delta_false += after_match - before;
            }
        }
        bool choice = delta_true > delta_false;  // tie breaks to false
        res.assignment[static_cast<size_t>(v) - 1] = choice;
        for (int ci : phi.occurrences(v)) {
            size_t c = static_cast<size_t>(ci);
            if (satisfied[c]) continue;
            bool pos = false;
            for (Lit l : phi.clause(ci)) {
                if (lit_var(l) == v) {
                    pos = lit_positive(l);
                    break;
                }
            }
            if (pos == choice) {
                satisfied[c] = 1;
            } else {
                --n_unset[c];
            }
        }
    }
    res.satisfied = count_satisfied(phi, res.assignment);
    return res;
}

ApproxResult baseline_follow_label(const CnfFormula& phi, const LabelAdvice& advice) {
    if (static_cast<int>(advice.labels.size()) != phi.num_vars()) {
        throw std::invalid_argument("label advice length mismatch");
    }
    ApproxResult res;
    res.baseline_name = "follow-label";
    res.assignment = advice.labels;
    res.satisfied = count_satisfied(phi, res.assignment);
    return res;
}

ApproxResult advice_pipeline(const CnfFormula& phi, const SubsetAdvice& advice,
                             const std::function<ApproxResult(const CnfFormula&)>& baseline) {
    PartialAssignment sigma(phi.num_vars());
    for (const auto& [v, b] : advice.revealed) {
        if (v >= 1 && v <= phi.num_vars()) sigma.set(v, b);
    }
    ReductionOutcome red = reduce(phi, sigma);
    ApproxResult res;
    if (red.reduced.num_clauses() == 0) {
        res.baseline_name = "advice-only";
        res.assignment.assign(static_cast<size_t>(phi.num_vars()), false);
    } else {
        res = baseline(red.reduced);
    }
    for (const auto& [v, b] : advice.revealed) {
        if (v >= 1 && v <= phi.num_vars()) res.assignment[static_cast<size_t>(v) - 1] = b;
    }
    res.satisfied = count_satisfied(phi, res.assignment);
    return res;
}

namespace {

struct ScanBest {
    int count = -1;
    std::uint32_t gray = 0;  // bit j = value of variable j+1

    void offer(int c, std::uint32_t g) {
        if (c > count) {
            count = c;
            gray = g;
            return;
        }
        if (c == count) {
            // lexicographically smallest assignment: variable 1 is bit 0, and
            // false < true, so compare bit-reversed... bit j = var j+1; lex
            // order on (x1, x2, ...) equals numeric order of the bit string
            // read with x1 most significant. Compare via reversed bits.
            std::uint32_t a = gray, b = g;
            for (int j = 0; j < 32; ++j) {
                std::uint32_t ba = (a >> j) & 1u, bb = (b >> j) & 1u;
                if (ba != bb) {
                    if (bb < ba) {
                        count = c;
                        gray = g;
                    }
                    return;
                }
            }
        }
    }
};

std::vector<bool> unpack(std::uint32_t bits, int n) {
    std::vector<bool> x(static_cast<size_t>(n), false);
    for (int j = 0; j < n; ++j) x[static_cast<size_t>(j)] = (bits >> j) & 1u;
    return x;
}

int scan_chunk(const CnfFormula& phi, std::uint64_t begin, std::uint64_t end, ScanBest& best) {
    int n = phi.num_vars();
    int m = phi.num_clauses();
    std::uint32_t g = static_cast<std::uint32_t>(begin ^ (begin >> 1));
    std::vector<bool> x = unpack(g, n);
    std::vector<int> n_true(static_cast<size_t>(m), 0);
    int sat = 0;
    for (int ci = 0; ci < m; ++ci) {
        for (Lit l : phi.clause(ci)) {
            if (x[static_cast<size_t>(lit_var(l)) - 1] == lit_positive(l)) {
                ++n_true[static_cast<size_t>(ci)];
            }
        }
        if (n_true[static_cast<size_t>(ci)] > 0) ++sat;
    }
    best.offer(sat, g);
    for (std::uint64_t i = begin; i + 1 < end; ++i) {
        int bit = __builtin_ctzll(i + 1);  // gray(i) ^ gray(i+1) = 1 << bit
        int v = bit + 1;
        bool nb = !x[static_cast<size_t>(bit)];
        x[static_cast<size_t>(bit)] = nb;
        g ^= (1u << bit);
        for (int ci : phi.occurrences(v)) {
            size_t c = static_cast<size_t>(ci);
            bool pos = false;
            for (Lit l : phi.clause(ci)) {
                if (lit_var(l) == v) {
                    pos = lit_positive(l);
                    break;
                }
            }
            if (pos == nb) {
                if (n_true[c]++ == 0) ++sat;
            } else {
                if (--n_true[c] == 0) --sat;
            }
        }
        best.offer(sat, g);
    }
    return best.count;
}

}  // namespace

std::pair<int, std::vector<bool>> brute_force_maxsat(const CnfFormula& phi) {
    int n = phi.num_vars();
    if (n > 26) throw std::invalid_argument("brute_force_maxsat: n > 26");
    if (n == 0) return {phi.num_clauses() == 0 ? 0 : 0, {}};
    std::uint64_t total = 1ull << n;
    int workers = resolve_workers();
    long chunks = std::min<std::uint64_t>(static_cast<std::uint64_t>(std::max(1, workers)) * 8,
                                          total);
    std::uint64_t per = (total + static_cast<std::uint64_t>(chunks) - 1) /
                        static_cast<std::uint64_t>(chunks);
    std::vector<ScanBest> bests(static_cast<size_t>(chunks));
    parallel_for(0L, chunks, workers, [&](long c) {
        std::uint64_t b = static_cast<std::uint64_t>(c) * per;
        std::uint64_t e = std::min(total, b + per);
        if (b < e) scan_chunk(phi, b, e, bests[static_cast<size_t>(c)]);
    });
    ScanBest best;
    for (const ScanBest& sb : bests) {
        if (sb.count >= 0) best.offer(sb.count, sb.gray);
    }
    return {best.count, unpack(best.gray, n)};
}

std::pair<int, std::vector<bool>> brute_force_maxsat_reference(const CnfFormula& phi) {
    int n = phi.num_vars();
    if (n > 20) throw std::invalid_argument("brute_force_maxsat_reference: n > 20");
    int best = -1;
    std::vector<bool> best_x;
    for (std::uint64_t bits = 0; bits < (1ull << n); ++bits) {
        // iterate in lexicographic order of (x1..xn) so the first maximum found
        // is the lexicographically smallest
        std::vector<bool> x(static_cast<size_t>(n), false);
        for (int j = 0; j < n; ++j) {
            x[static_cast<size_t>(j)] = (bits >> (n - 1 - j)) & 1u;
        }
        int c = count_satisfied(phi, x);
        if (c > best) {
            best = c;
            best_x = x;
        }
    }
    return {best, best_x};
}

}  // namespace advsat
