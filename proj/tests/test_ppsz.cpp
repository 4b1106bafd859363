#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "advsat/advice.hpp"
#include "advsat/dpll.hpp"
#include "advsat/gen.hpp"
#include "advsat/ppsz.hpp"
#include "advsat/theory.hpp"
#include "helpers.hpp"

using namespace advsat;
using advsat_tests::bits;
using advsat_tests::mk;

namespace {

SubsetAdvice manual_advice(std::vector<std::pair<int, bool>> revealed, double eps = 0.0) {
    SubsetAdvice a;
    a.epsilon = eps;
    a.revealed = std::move(revealed);
    return a;
}

CnfFormula random_3cnf(int n, int m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Clause> cls;
    for (int c = 0; c < m; ++c) {
        std::vector<int> vars;
        while (static_cast<int>(vars.size()) < 3) {
            int v = static_cast<int>(rng() % static_cast<std::uint64_t>(n)) + 1;
            bool dup = false;
            for (int u : vars) dup = dup || u == v;
            if (!dup) vars.push_back(v);
        }
        Clause cl;
        for (int v : vars) cl.push_back((rng() & 1) ? v : -v);
        cls.push_back(cl);
    }
    return CnfFormula(n, cls);
}

// every assignment consistent with sigma, as full vectors
std::vector<std::vector<bool>> completions(const CnfFormula& phi, const PartialAssignment& sigma) {
    int n = phi.num_vars();
    std::vector<int> free_vars;
    for (int v = 1; v <= n; ++v) {
        if (!sigma.is_set(v)) free_vars.push_back(v);
    }
    std::vector<std::vector<bool>> out;
    for (std::uint64_t mask = 0; mask < (1ULL << free_vars.size()); ++mask) {
        std::vector<bool> x(static_cast<size_t>(n), false);
        for (int v = 1; v <= n; ++v) {
            if (sigma.is_set(v)) x[static_cast<size_t>(v) - 1] = sigma.value(v);
        }
        for (size_t i = 0; i < free_vars.size(); ++i) {
            x[static_cast<size_t>(free_vars[i]) - 1] = (mask >> i) & 1ULL;
        }
        out.push_back(std::move(x));
    }
    return out;
}

bool satisfies(const CnfFormula& phi, const std::vector<bool>& x) {
    return count_satisfied(phi, x) == phi.num_clauses();
}

}  // namespace

TEST_CASE("d_implies unit clause forcing") {
    CnfFormula phi = mk(3, {{3}});
    PartialAssignment sigma(3);
    CHECK(d_implies(phi, sigma, 3, 1) == std::optional<bool>(true));

    CnfFormula neg = mk(2, {{-2}});
    PartialAssignment sigma2(2);
    CHECK(d_implies(neg, sigma2, 2, 1) == std::optional<bool>(false));
}

TEST_CASE("d_implies pair of clauses forces at D=2 but not D=1") {
    CnfFormula phi = mk(2, {{1, 2}, {1, -2}});
    PartialAssignment sigma(2);
    CHECK(d_implies(phi, sigma, 1, 1) == std::nullopt);
    CHECK(d_implies(phi, sigma, 1, 2) == std::optional<bool>(true));
    CHECK(d_implies(phi, sigma, 1, 3) == std::optional<bool>(true));
}

TEST_CASE("d_implies single wide clause never forces") {
    CnfFormula phi = mk(2, {{1, 2}});
    PartialAssignment sigma(2);
    CHECK(d_implies(phi, sigma, 1, 1) == std::nullopt);
    CHECK(d_implies(phi, sigma, 2, 1) == std::nullopt);
}

TEST_CASE("d_implies respects the partial assignment") {
    CnfFormula phi = mk(3, {{1, 2, 3}});
    PartialAssignment sigma(3);
    sigma.set(2, false);
    sigma.set(3, false);
    CHECK(d_implies(phi, sigma, 1, 1) == std::optional<bool>(true));

    // clause already satisfied: nothing to force
    PartialAssignment sat_sigma(3);
    sat_sigma.set(2, true);
    CHECK(d_implies(phi, sat_sigma, 1, 3) == std::nullopt);
}

TEST_CASE("d_implies argument validation") {
    CnfFormula phi = mk(2, {{1, 2}});
    PartialAssignment sigma(2);
    CHECK_THROWS_AS((void)d_implies(phi, sigma, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)d_implies(phi, sigma, 1, 4), std::invalid_argument);
    sigma.set(1, true);
    CHECK_THROWS_AS((void)d_implies(phi, sigma, 1, 1), std::invalid_argument);
}

TEST_CASE("d_implies signals a dead branch") {
    CnfFormula phi = mk(2, {{1}, {2}});
    PartialAssignment sigma(2);
    sigma.set(1, false);
    bool contra = false;
    CHECK(d_implies(phi, sigma, 2, 1, &contra) == std::nullopt);
    CHECK(contra);
    // null contradiction pointer is allowed
    CHECK(d_implies(phi, sigma, 2, 2) == std::nullopt);
}

TEST_CASE("d_implies is sound against exhaustive enumeration") {
    std::mt19937_64 rng(914);
    for (int rep = 0; rep < 120; ++rep) {
        int n = 4 + static_cast<int>(rng() % 4);
        int m = 3 + static_cast<int>(rng() % 12);
        CnfFormula phi = random_3cnf(std::max(n, 3), m, rng());
        n = phi.num_vars();
        PartialAssignment sigma(n);
        for (int v = 1; v <= n; ++v) {
            if (rng() % 3 == 0) sigma.set(v, (rng() & 1) != 0);
        }
        std::vector<std::vector<bool>> exts = completions(phi, sigma);
        std::vector<char> is_model(exts.size(), 0);
        bool live = false;
        for (size_t i = 0; i < exts.size(); ++i) {
            is_model[i] = satisfies(phi, exts[i]) ? 1 : 0;
            live = live || is_model[i];
        }
        for (int v = 1; v <= n; ++v) {
            if (sigma.is_set(v)) continue;
            std::optional<bool> prev;
            for (int D = 1; D <= 3; ++D) {
                bool contra = false;
                std::optional<bool> f = d_implies(phi, sigma, v, D, &contra);
                if (contra) {
                    // some subset is already unsatisfiable, so the branch is dead
                    CHECK(!live);
                    continue;
                }
                if (f) {
                    // forced values hold in every satisfying completion
                    for (size_t i = 0; i < exts.size(); ++i) {
                        if (is_model[i]) CHECK(exts[i][static_cast<size_t>(v) - 1] == *f);
                    }
                }
                // on live branches a forced variable stays forced as D grows
                if (prev && live) {
                    REQUIRE(f.has_value());
                    CHECK(*f == *prev);
                }
                if (f) prev = f;
            }
        }
    }
}

TEST_CASE("full advice on a forced chain returns the model without iterating") {
    CnfFormula phi = mk(2, {{1}, {-1, 2}});
    std::vector<bool> truth = bits(2, 0b11);
    SubsetAdvice advice = gen_subset_advice(truth, 1.0, 5);
    REQUIRE(advice.revealed.size() == 2);
    SolverConfig cfg;
    cfg.iterations_T = 10;
    SolveResult res = ppsz_with_advice(phi, advice, cfg);
    REQUIRE(res.status == SolverStatus::Sat);
    CHECK(*res.assignment == truth);
    CHECK(res.stats.advice_assigned == 2);
    CHECK(res.stats.iterations_used == 0);
}

TEST_CASE("one revealed variable leaves a unit chain that is forced, not guessed") {
    CnfFormula phi = mk(2, {{1}, {-1, 2}});
    SubsetAdvice advice = manual_advice({{1, true}});
    SolverConfig cfg;
    cfg.iterations_T = 4;
    cfg.record_iterations = true;
    SolveResult res = ppsz_with_advice(phi, advice, cfg);
    REQUIRE(res.status == SolverStatus::Sat);
    CHECK(*res.assignment == bits(2, 0b11));
    CHECK(res.stats.iterations_used == 1);
    CHECK(res.stats.sum_forced == 1);
    CHECK(res.stats.sum_guessed == 0);
}

TEST_CASE("advice falsifying a clause reports a contradiction, not unsat") {
    CnfFormula phi = mk(2, {{1}, {1, 2}});
    SolverConfig cfg;
    cfg.iterations_T = 8;
    SolveResult res = ppsz_with_advice(phi, manual_advice({{1, false}}), cfg);
    CHECK(res.status == SolverStatus::AdviceContradiction);
    CHECK(!res.assignment.has_value());
    CHECK(res.stats.iterations_used == 0);

    // consistent advice on the same formula succeeds
    SolveResult ok = ppsz_with_advice(phi, manual_advice({{1, true}}), cfg);
    CHECK(ok.status == SolverStatus::Sat);
}

TEST_CASE("unsatisfiable input ends as unsat-presumed") {
    CnfFormula phi = mk(1, {{1}, {-1}});
    SolverConfig cfg;
    cfg.iterations_T = 64;
    SolveResult res = ppsz_with_advice(phi, manual_advice({}), cfg);
    CHECK(res.status == SolverStatus::UnsatPresumed);
    CHECK(res.stats.iterations_used == 64);
    CHECK(res.stats.completed_iterations == 0);
}

TEST_CASE("sat verdicts are always verified models") {
    std::mt19937_64 rng(2718);
    int sat_seen = 0;
    for (int rep = 0; rep < 40; ++rep) {
        CnfFormula phi = random_3cnf(10, 38 + static_cast<int>(rng() % 15), rng());
        SolverConfig cfg;
        cfg.iterations_T = 3000;
        cfg.implication_D = 2;
        cfg.seed = rng();
        SolveResult res = ppsz_with_advice(phi, manual_advice({}), cfg);
        bool actually_sat = brute_force_sat(phi).has_value();
        if (res.status == SolverStatus::Sat) {
            ++sat_seen;
            REQUIRE(res.assignment.has_value());
            CHECK(satisfies(phi, *res.assignment));
            CHECK(actually_sat);
        } else {
            CHECK(res.status == SolverStatus::UnsatPresumed);
        }
    }
    CHECK(sat_seen > 0);
}

TEST_CASE("planted instances are found with and without advice") {
    for (std::uint64_t seed : {11ULL, 12ULL, 13ULL}) {
        PlantedInstance inst = gen_planted(Construction::PlantedUniqueAttempt, 12, 66, 3, seed);
        REQUIRE(inst.planted.has_value());
        for (double eps : {0.0, 0.5}) {
            SubsetAdvice advice = gen_subset_advice(*inst.planted, eps, seed + 100);
            SolverConfig cfg;
            cfg.implication_D = 2;
            cfg.iterations_T = 20000;
            cfg.seed = 7 * seed + 1;
            SolveResult res = ppsz_with_advice(inst.formula, advice, cfg);
            REQUIRE(res.status == SolverStatus::Sat);
            CHECK(satisfies(inst.formula, *res.assignment));
            // revealed variables are pinned in the output
            for (const auto& [v, b] : advice.revealed) {
                CHECK((*res.assignment)[static_cast<size_t>(v) - 1] == b);
            }
        }
    }
}

TEST_CASE("completed iterations split every free variable into forced or guessed") {
    PlantedInstance inst = gen_planted(Construction::PlantedUniqueAttempt, 10, 55, 3, 21);
    SubsetAdvice advice = gen_subset_advice(*inst.planted, 0.4, 9);
    SolverConfig cfg;
    cfg.iterations_T = 300;
    cfg.record_iterations = true;
    cfg.implication_D = 2;
    SolveResult res = ppsz_with_advice(inst.formula, advice, cfg);
    int free_n = inst.n - res.stats.advice_assigned;
    CHECK(res.stats.advice_assigned == static_cast<int>(advice.revealed.size()));
    REQUIRE(res.stats.forced_per_iter.size() == static_cast<size_t>(res.stats.iterations_used));
    REQUIRE(res.stats.completed_per_iter.size() == static_cast<size_t>(res.stats.iterations_used));
    long completed = 0;
    long long forced_sum = 0, guessed_sum = 0;
    for (size_t i = 0; i < res.stats.forced_per_iter.size(); ++i) {
        if (!res.stats.completed_per_iter[i]) continue;
        ++completed;
        forced_sum += res.stats.forced_per_iter[i];
        guessed_sum += res.stats.guessed_per_iter[i];
        CHECK(res.stats.forced_per_iter[i] + res.stats.guessed_per_iter[i] == free_n);
    }
    CHECK(completed == res.stats.completed_iterations);
    CHECK(forced_sum == res.stats.sum_forced);
    CHECK(guessed_sum == res.stats.sum_guessed);
}

TEST_CASE("results do not depend on the worker count") {
    PlantedInstance inst = gen_planted(Construction::PlantedUniqueAttempt, 14, 77, 3, 33);
    SubsetAdvice advice = gen_subset_advice(*inst.planted, 0.25, 4);
    for (int D : {1, 2}) {
        SolveResult base;
        for (int workers : {1, 2, 4}) {
            SolverConfig cfg;
            cfg.implication_D = D;
            cfg.iterations_T = 5000;
            cfg.seed = 19;
            cfg.num_workers = workers;
            SolveResult res = ppsz_with_advice(inst.formula, advice, cfg);
            if (workers == 1) {
                base = res;
                continue;
            }
            CHECK(res.status == base.status);
            CHECK(res.assignment == base.assignment);
            CHECK(res.stats.iterations_used == base.stats.iterations_used);
            CHECK(res.stats.completed_iterations == base.stats.completed_iterations);
            CHECK(res.stats.sum_forced == base.stats.sum_forced);
            CHECK(res.stats.sum_guessed == base.stats.sum_guessed);
        }
    }
}

TEST_CASE("guess_rate matches its closed forms") {
    CHECK(guess_rate(3, 0.0, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(guess_rate(5, 0.0, 1) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(guess_rate(3, 0.25, 1) == doctest::Approx(0.421875).epsilon(1e-12));
    CHECK(guess_rate(3, 1.0, 1) == 0.0);
    CHECK(guess_rate(3, 1.0, 3) == 0.0);
    CHECK(guess_rate(2, 0.0, 2) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS((void)guess_rate(1, 0.0, 1), std::invalid_argument);

    for (int k : {3, 4, 5}) {
        double prev = 2.0;
        for (double eps = 0.0; eps <= 1.001; eps += 0.05) {
            double g1 = guess_rate(k, eps, 1);
            CHECK(g1 <= prev + 1e-12);  // non-increasing in the advice rate
            CHECK(g1 >= 0.0);
            prev = g1;
            for (int D : {2, 3}) {
                double gd = guess_rate(k, eps, D);
                CHECK(gd >= 0.0);
                CHECK(gd <= g1 + 1e-12);  // more implication never predicts more guessing
            }
        }
    }
}

TEST_CASE("auto_iterations follows the budget formula and guards its range") {
    long t = auto_iterations(12, 3, 0.0, 1, 0.5);
    CHECK(t == static_cast<long>(std::ceil(std::log(2.0) * std::pow(2.0, 8.0))));
    CHECK(auto_iterations(0, 3, 0.0, 1, 0.9) == 1);
    // more revealed variables shrink the budget
    CHECK(auto_iterations(20, 3, 0.5, 1, 0.01) < auto_iterations(20, 3, 0.0, 1, 0.01));
    CHECK_THROWS_AS((void)auto_iterations(10, 3, 0.0, 1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)auto_iterations(10, 3, 0.0, 1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)auto_iterations(200, 3, 0.0, 1, 1e-9), std::invalid_argument);
}

TEST_CASE("planted walk splits all variables across advice, forced, guessed") {
    PlantedInstance inst = gen_planted(Construction::PlantedUniqueAttempt, 12, 66, 3, 44);
    for (double eps : {0.0, 0.3, 0.8}) {
        SubsetAdvice advice = gen_subset_advice(*inst.planted, eps, 17);
        for (int D : {1, 2}) {
            WalkCounts w = planted_walk(inst.formula, *inst.planted, advice, D, 501);
            CHECK(w.advice_assigned == static_cast<int>(advice.revealed.size()));
            CHECK(w.forced + w.guessed + w.advice_assigned == inst.n);
        }
    }
}

TEST_CASE("planted walk guessing is pointwise monotone in advice and in D") {
    PlantedInstance inst = gen_planted(Construction::PlantedUniqueAttempt, 16, 85, 3, 55);
    std::vector<double> epsilons = {0.0, 0.25, 0.5, 0.75};
    for (std::uint64_t trial = 0; trial < 60; ++trial) {
        std::uint64_t advice_seed = 900 + trial;
        std::uint64_t perm_seed = 7000 + trial;
        for (int D : {1, 2}) {
            int prev_guessed = inst.n + 1;
            for (double eps : epsilons) {
                SubsetAdvice advice = gen_subset_advice(*inst.planted, eps, advice_seed);
                WalkCounts w = planted_walk(inst.formula, *inst.planted, advice, D, perm_seed);
                CHECK(w.guessed <= prev_guessed);
                prev_guessed = w.guessed;
            }
        }
        // same advice and order, deeper implication: forced set can only grow
        SubsetAdvice advice = gen_subset_advice(*inst.planted, 0.25, advice_seed);
        WalkCounts w1 = planted_walk(inst.formula, *inst.planted, advice, 1, perm_seed);
        WalkCounts w2 = planted_walk(inst.formula, *inst.planted, advice, 2, perm_seed);
        CHECK(w2.guessed <= w1.guessed);
    }
}

TEST_CASE("planted walk rejects a non-model plant") {
    CnfFormula phi = mk(2, {{1, 2}});
    std::vector<bool> bad = bits(2, 0b00);
    CHECK_THROWS_AS((void)planted_walk(phi, bad, manual_advice({}), 1, 3), std::logic_error);
}
