#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "advsat/dpll.hpp"
#include "helpers.hpp"

using namespace advsat;
using advsat_tests::bits;
using advsat_tests::mk;

namespace {

// lexicographic enumeration with x1 as the most significant position
std::optional<std::vector<bool>> lex_scan(const CnfFormula& phi) {
    int n = phi.num_vars();
    for (unsigned long long v = 0; v < (1ULL << n); ++v) {
        std::vector<bool> x(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] = (v >> (n - 1 - i)) & 1ULL;
        if (count_satisfied(phi, x) == phi.num_clauses()) return x;
    }
    return std::nullopt;
}

long exhaustive_count(const CnfFormula& phi) {
    int n = phi.num_vars();
    long c = 0;
    for (unsigned long long v = 0; v < (1ULL << n); ++v) {
        if (count_satisfied(phi, bits(n, v)) == phi.num_clauses()) ++c;
    }
    return c;
}

CnfFormula random_planted(int n, int m, int k, std::uint64_t seed,
                          std::vector<bool>* plant_out) {
    std::mt19937_64 rng(seed);
    std::vector<bool> plant(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) plant[static_cast<size_t>(i)] = (rng() & 1) != 0;
    std::vector<Clause> cls;
    while (static_cast<int>(cls.size()) < m) {
        Clause c;
        while (static_cast<int>(c.size()) < k) {
            int v = static_cast<int>(rng() % static_cast<std::uint64_t>(n)) + 1;
            bool dup = false;
            for (Lit l : c) dup = dup || lit_var(l) == v;
            if (!dup) c.push_back((rng() & 1) ? v : -v);
        }
        bool sat = false;
        for (Lit l : c) {
            sat = sat || (lit_positive(l) == plant[static_cast<size_t>(lit_var(l)) - 1]);
        }
        if (!sat) continue;  // keep the plant satisfying
        cls.push_back(c);
    }
    if (plant_out) *plant_out = plant;
    return CnfFormula(n, std::move(cls));
}

}  // namespace

TEST_CASE("tiny formulas") {
    CHECK(!brute_force_sat(mk(1, {{1}, {-1}})));
    auto sat = brute_force_sat(mk(2, {{1, 2}}));
    REQUIRE(sat);
    CHECK(*sat == bits(2, 0b10));  // x1=0, x2=1 is the lex-smallest model
}

TEST_CASE("planted instances are found satisfiable") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        std::vector<bool> plant;
        CnfFormula phi = random_planted(15, 60, 3, seed, &plant);
        CHECK(count_satisfied(phi, plant) == phi.num_clauses());
        auto model = brute_force_sat(phi);
        REQUIRE(model);
        CHECK(count_satisfied(phi, *model) == phi.num_clauses());
    }
}

TEST_CASE("verdict and lexicographic tie-break match exhaustive scan") {
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 200; ++rep) {
        int n = 6 + static_cast<int>(rng() % 4);
        int m = 10 + static_cast<int>(rng() % 25);
        std::vector<Clause> cls;
        for (int i = 0; i < m; ++i) {
            Clause c;
            int k = 2 + static_cast<int>(rng() % 2);
            while (static_cast<int>(c.size()) < k) {
                int v = static_cast<int>(rng() % static_cast<std::uint64_t>(n)) + 1;
                bool dup = false;
                for (Lit l : c) dup = dup || lit_var(l) == v;
                if (!dup) c.push_back((rng() & 1) ? v : -v);
            }
            cls.push_back(c);
        }
        CnfFormula phi(n, std::move(cls));
        auto got = brute_force_sat(phi);
        auto want = lex_scan(phi);
        CHECK(got == want);
    }
}

TEST_CASE("solution counting") {
    CHECK(count_solutions(mk(2, {{1, 2}}), 10) == 3);
    CHECK(count_solutions(mk(1, {{1}, {-1}}), 10) == 0);
    CHECK(count_solutions(CnfFormula(3, {}), 100) == 8);
    // early exit at the limit
    CHECK(count_solutions(CnfFormula(10, {}), 5) == 5);

    std::mt19937_64 rng(4);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<bool> plant;
        CnfFormula phi = random_planted(9, 25, 3, 100 + rep, &plant);
        CHECK(count_solutions(phi, 1L << 9) == exhaustive_count(phi));
    }
}

TEST_CASE("size guard") {
    std::vector<Clause> cls{{1}};
    CnfFormula big(31, std::move(cls));
    CHECK_THROWS_AS(brute_force_sat(big), std::invalid_argument);
    CHECK_THROWS_AS(count_solutions(big, 2), std::invalid_argument);
}
