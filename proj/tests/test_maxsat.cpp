#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "advsat/advice.hpp"
#include "advsat/gen.hpp"
#include "advsat/maxsat.hpp"
#include "helpers.hpp"

using namespace advsat;
using advsat_tests::bits;
using advsat_tests::mk;

namespace {

CnfFormula random_cnf(int n, int m, int w, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Clause> cls;
    for (int c = 0; c < m; ++c) {
        std::vector<int> vars;
        while (static_cast<int>(vars.size()) < w) {
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

CnfFormula random_mixed(int n, int m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Clause> cls;
    for (int c = 0; c < m; ++c) {
        int w = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::min(n, 4)));
        std::vector<int> vars;
        while (static_cast<int>(vars.size()) < w) {
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

double expectation_floor(const CnfFormula& phi) {
    double s = 0.0;
    for (int ci = 0; ci < phi.num_clauses(); ++ci) {
        s += 1.0 - std::ldexp(1.0, -static_cast<int>(phi.clause(ci).size()));
    }
    return s;
}

// independent exact scan in lexicographic order of (x1..xn)
std::pair<int, std::vector<bool>> oracle_maxsat(const CnfFormula& phi) {
    int n = phi.num_vars();
    int best = -1;
    std::vector<bool> best_x;
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        std::vector<bool> x(static_cast<size_t>(n), false);
        for (int j = 0; j < n; ++j) x[static_cast<size_t>(j)] = (mask >> (n - 1 - j)) & 1ull;
        int c = count_satisfied(phi, x);
        if (c > best) {
            best = c;
            best_x = x;
        }
    }
    return {best, best_x};
}

}  // namespace

TEST_CASE("random baseline hits the per-width expectation") {
    const int trials = 10000;

    CnfFormula two = random_cnf(10, 40, 2, 71);
    double sum2 = 0.0;
    for (int s = 1; s <= trials; ++s) sum2 += baseline_random(two, static_cast<std::uint64_t>(s)).satisfied;
    CHECK(std::abs(sum2 / trials - 0.75 * 40) < 0.2);

    CnfFormula three = random_cnf(12, 60, 3, 72);
    double sum3 = 0.0;
    for (int s = 1; s <= trials; ++s) sum3 += baseline_random(three, static_cast<std::uint64_t>(s)).satisfied;
    CHECK(std::abs(sum3 / trials - 0.875 * 60) < 0.3);

    CnfFormula unit = mk(1, {{1}});
    double sum1 = 0.0;
    for (int s = 1; s <= trials; ++s) sum1 += baseline_random(unit, static_cast<std::uint64_t>(s)).satisfied;
    CHECK(std::abs(sum1 / trials - 0.5) < 0.02);
}

TEST_CASE("random baseline is deterministic per seed and reports consistently") {
    CnfFormula phi = random_mixed(9, 30, 5);
    ApproxResult a = baseline_random(phi, 42);
    ApproxResult b = baseline_random(phi, 42);
    CHECK(a.assignment == b.assignment);
    CHECK(a.satisfied == b.satisfied);
    CHECK(a.baseline_name == "random");
    CHECK(a.satisfied == count_satisfied(phi, a.assignment));
    CHECK(baseline_random(phi, 43).assignment != a.assignment);
}

TEST_CASE("conditional expectations baseline clears the expectation floor") {
    CnfFormula contra = mk(1, {{1}, {-1}});
    ApproxResult r = baseline_condexp(contra);
    CHECK(r.satisfied == 1);
    CHECK(r.baseline_name == "condexp");

    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        CnfFormula phi = random_mixed(12, 45, seed);
        ApproxResult res = baseline_condexp(phi);
        CHECK(res.satisfied == count_satisfied(phi, res.assignment));
        CHECK(res.satisfied + 1e-9 >= expectation_floor(phi));
        ApproxResult again = baseline_condexp(phi);
        CHECK(res.assignment == again.assignment);
    }
}

TEST_CASE("follow-label baseline copies the labels verbatim") {
    PlantedInstance inst = gen_planted(Construction::PlantedOneTrueLiteral, 10, 40, 3, 7);
    LabelAdvice advice = gen_label_advice(*inst.planted, 0.6, 3);
    ApproxResult res = baseline_follow_label(inst.formula, advice);
    CHECK(res.assignment == advice.labels);
    CHECK(res.satisfied == count_satisfied(inst.formula, advice.labels));
    CHECK(res.baseline_name == "follow-label");

    LabelAdvice perfect = gen_label_advice(*inst.planted, 1.0, 3);
    CHECK(baseline_follow_label(inst.formula, perfect).satisfied == inst.m);

    LabelAdvice wrong;
    wrong.labels = std::vector<bool>(5, false);
    CHECK_THROWS_AS((void)baseline_follow_label(inst.formula, wrong), std::invalid_argument);
}

TEST_CASE("advice pipeline endpoints: full advice solves, no advice is the baseline") {
    PlantedInstance inst = gen_planted(Construction::PlantedOneTrueLiteral, 14, 70, 3, 11);
    auto condexp = [](const CnfFormula& f) { return baseline_condexp(f); };

    SubsetAdvice full = gen_subset_advice(*inst.planted, 1.0, 2);
    ApproxResult all = advice_pipeline(inst.formula, full, condexp);
    CHECK(all.satisfied == inst.m);
    CHECK(all.assignment == *inst.planted);
    CHECK(all.baseline_name == "advice-only");

    SubsetAdvice none;
    none.epsilon = 0.0;
    ApproxResult piped = advice_pipeline(inst.formula, none, condexp);
    ApproxResult plain = baseline_condexp(inst.formula);
    CHECK(piped.assignment == plain.assignment);
    CHECK(piped.satisfied == plain.satisfied);
    CHECK(piped.baseline_name == "condexp");
}

TEST_CASE("advice pipeline pins revealed variables and keeps the reduced floor") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        PlantedInstance inst = gen_planted(Construction::PlantedOneTrueLiteral, 12, 60, 3, seed);
        SubsetAdvice advice = gen_subset_advice(*inst.planted, 0.5, seed + 50);
        ApproxResult res = advice_pipeline(inst.formula, advice,
                                           [](const CnfFormula& f) { return baseline_condexp(f); });
        for (const auto& [v, b] : advice.revealed) {
            CHECK(res.assignment[static_cast<size_t>(v) - 1] == b);
        }
        CHECK(res.satisfied == count_satisfied(inst.formula, res.assignment));

        // clauses settled by the advice plus the floor on what remains
        PartialAssignment sigma(inst.formula.num_vars());
        for (const auto& [v, b] : advice.revealed) sigma.set(v, b);
        ReductionOutcome red = reduce(inst.formula, sigma);
        CHECK(res.satisfied + 1e-9 >= red.removed_satisfied + expectation_floor(red.reduced));
    }
}

TEST_CASE("advice pipeline works with the random baseline too") {
    PlantedInstance inst = gen_planted(Construction::PlantedOneTrueLiteral, 12, 55, 3, 31);
    SubsetAdvice advice = gen_subset_advice(*inst.planted, 0.4, 8);
    ApproxResult res = advice_pipeline(inst.formula, advice, [](const CnfFormula& f) {
        return baseline_random(f, 99);
    });
    for (const auto& [v, b] : advice.revealed) {
        CHECK(res.assignment[static_cast<size_t>(v) - 1] == b);
    }
    CHECK(res.satisfied == count_satisfied(inst.formula, res.assignment));
    CHECK(res.baseline_name == "random");
}

TEST_CASE("exact optimum scan on small handmade instances") {
    auto [c1, x1] = brute_force_maxsat(mk(1, {{1}, {-1}}));
    CHECK(c1 == 1);
    CHECK(x1 == bits(1, 0b0));  // tie broken to the lex-smallest assignment

    auto [c2, x2] = brute_force_maxsat(mk(2, {{1, 2}, {-1, 2}, {1, -2}}));
    CHECK(c2 == 3);
    CHECK(x2 == bits(2, 0b11));

    auto [c3, x3] = brute_force_maxsat(mk(2, {{1, 2}}));
    CHECK(c3 == 1);
    CHECK(x3 == bits(2, 0b10));  // (x1,x2) = (0,1) precedes (1,0) and (1,1)
}

TEST_CASE("exact optimum scan agrees with an independent enumeration") {
    std::mt19937_64 rng(515);
    for (int rep = 0; rep < 60; ++rep) {
        int n = 2 + static_cast<int>(rng() % 11);
        int m = 1 + static_cast<int>(rng() % 40);
        CnfFormula phi = random_mixed(n, m, rng());
        auto expect = oracle_maxsat(phi);
        auto fast = brute_force_maxsat(phi);
        auto ref = brute_force_maxsat_reference(phi);
        CHECK(fast.first == expect.first);
        CHECK(fast.second == expect.second);
        CHECK(ref.first == expect.first);
        CHECK(ref.second == expect.second);
    }
}

TEST_CASE("exact optimum scan finds planted instances optimal") {
    PlantedInstance inst = gen_planted(Construction::PlantedOneTrueLiteral, 12, 50, 3, 3);
    CHECK(brute_force_maxsat(inst.formula).first == inst.m);
}

TEST_CASE("exact optimum scans guard their size limits") {
    CHECK_THROWS_AS((void)brute_force_maxsat(CnfFormula(27, {{1}})), std::invalid_argument);
    CHECK_THROWS_AS((void)brute_force_maxsat_reference(CnfFormula(21, {{1}})),
                    std::invalid_argument);
    CHECK(brute_force_maxsat(CnfFormula(26, {{1}})).first == 1);
}
