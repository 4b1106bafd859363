#include "advsat/gen.hpp"

#include <algorithm>
#include <stdexcept>

#include "advsat/dpll.hpp"
#include "advsat/rng.hpp"

namespace advsat {

namespace {

constexpr std::uint64_t kGenTag = 0x47454eULL;

std::vector<int> sample_distinct_vars(int n, int k, std::mt19937_64& rng) {
    std::vector<int> vars;
    vars.reserve(static_cast<size_t>(k));
    while (static_cast<int>(vars.size()) < k) {
        int v = static_cast<int>(rng() % static_cast<std::uint64_t>(n)) + 1;
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
    return vars;
}

std::vector<bool> random_assignment(int n, std::mt19937_64& rng) {
    std::vector<bool> x(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] = (rng() & 1) != 0;
    return x;
}

Clause clause_from(const std::vector<int>& vars, const std::vector<char>& agree,
                   const std::vector<bool>& plant) {
    Clause c;
    c.reserve(vars.size());
    for (size_t t = 0; t < vars.size(); ++t) {
        bool truth = plant[static_cast<size_t>(vars[t]) - 1];
        bool lit_true_value = agree[t] != 0 ? truth : !truth;
        c.push_back(lit_true_value ? vars[t] : -vars[t]);
    }
    return c;
}

}  // namespace

Construction construction_from_string(const std::string& s) {
    if (s == "uniform-random-kcnf") return Construction::UniformRandomKcnf;
    if (s == "planted-one-true-literal") return Construction::PlantedOneTrueLiteral;
    if (s == "planted-unique-attempt") return Construction::PlantedUniqueAttempt;
    if (s == "lin2-derived") return Construction::Lin2Derived;
    throw std::invalid_argument("unknown construction: " + s);
}

std::string construction_to_string(Construction c) {
    switch (c) {
        case Construction::UniformRandomKcnf: return "uniform-random-kcnf";
        case Construction::PlantedOneTrueLiteral: return "planted-one-true-literal";
        case Construction::PlantedUniqueAttempt: return "planted-unique-attempt";
        case Construction::Lin2Derived: return "lin2-derived";
    }
    return "?";
}

PlantedInstance gen_planted(Construction c, int n, int m, int k, std::uint64_t seed) {
    if (n < 1 || m < 0) throw std::invalid_argument("bad instance size");
    if (c == Construction::Lin2Derived) {
        if (n < 2) throw std::invalid_argument("parity constraints need n >= 2");
    } else if (k < 1 || k > n) {
        throw std::invalid_argument("need 1 <= k <= n");
    }
    PlantedInstance inst;
    inst.construction = c;
    inst.n = n;
    inst.k = k;
    inst.seed = seed;

    switch (c) {
        case Construction::UniformRandomKcnf: {
            std::mt19937_64 rng = make_rng(seed, kGenTag, 0);
            std::vector<Clause> clauses;
            clauses.reserve(static_cast<size_t>(m));
            for (int i = 0; i < m; ++i) {
                std::vector<int> vars = sample_distinct_vars(n, k, rng);
                Clause cl;
                for (int v : vars) cl.push_back((rng() & 1) ? v : -v);
                clauses.push_back(std::move(cl));
            }
            inst.formula = CnfFormula(n, std::move(clauses), k);
            inst.m = inst.formula.num_clauses();
            return inst;
        }
        case Construction::PlantedOneTrueLiteral: {
            std::mt19937_64 rng = make_rng(seed, kGenTag, 1);
            std::vector<bool> plant = random_assignment(n, rng);
            std::vector<Clause> clauses;
            clauses.reserve(static_cast<size_t>(m));
            for (int i = 0; i < m; ++i) {
                std::vector<int> vars = sample_distinct_vars(n, k, rng);
                std::vector<char> agree(static_cast<size_t>(k), 0);
                agree[rng() % static_cast<std::uint64_t>(k)] = 1;
                clauses.push_back(clause_from(vars, agree, plant));
            }
            inst.formula = CnfFormula(n, std::move(clauses), k);
            inst.planted = plant;
            inst.m = inst.formula.num_clauses();
            return inst;
        }
        case Construction::PlantedUniqueAttempt: {
            const int kAttempts = 400;
            for (int attempt = 0; attempt < kAttempts; ++attempt) {
                std::mt19937_64 rng = make_rng(seed, kGenTag, 2 + static_cast<std::uint64_t>(attempt));
                std::vector<bool> plant = random_assignment(n, rng);
                std::vector<Clause> clauses;
                clauses.reserve(static_cast<size_t>(m));
                for (int i = 0; i < m; ++i) {
                    // uniform among sign patterns with at least one true literal
                    while (true) {
                        std::vector<int> vars = sample_distinct_vars(n, k, rng);
                        std::vector<char> agree(static_cast<size_t>(k), 0);
                        bool any = false;
                        for (int t = 0; t < k; ++t) {
                            agree[static_cast<size_t>(t)] = (rng() & 1) != 0;
                            any = any || agree[static_cast<size_t>(t)];
                        }
                        if (!any) continue;
                        clauses.push_back(clause_from(vars, agree, plant));
                        break;
                    }
                }
                inst.formula = CnfFormula(n, std::move(clauses), k);
                inst.planted = plant;
                inst.m = inst.formula.num_clauses();
                if (n <= 30) {
                    if (count_solutions(inst.formula, 2) == 1) {
                        inst.unique_verified = true;
                        return inst;
                    }
                    continue;  // redraw
                }
                return inst;  // too large to verify; accept as-is
            }
            return inst;  // last attempt, unique_verified stays false
        }
        case Construction::Lin2Derived: {
            std::mt19937_64 rng = make_rng(seed, kGenTag, 3);
            std::vector<bool> plant = random_assignment(n, rng);
            Lin2Instance lin;
            lin.n = n;
            lin.constraints.reserve(static_cast<size_t>(m));
            for (int i = 0; i < m; ++i) {
                std::vector<int> vars = sample_distinct_vars(n, 2, rng);
                int zi = plant[static_cast<size_t>(vars[0]) - 1] ? 1 : -1;
                int zj = plant[static_cast<size_t>(vars[1]) - 1] ? 1 : -1;
                lin.constraints.push_back({vars[0], vars[1], zi * zj});
            }
            inst.formula = lin2_to_sat2(lin);
            inst.planted = plant;
            inst.lin = std::move(lin);
            inst.k = 2;
            inst.m = inst.formula.num_clauses();
            return inst;
        }
    }
    throw std::logic_error("unreachable");
}

Lin2Instance gen_lin2_uniform(int n, int m, std::uint64_t seed) {
    if (n < 2 || m < 0) throw std::invalid_argument("bad instance size");
    std::mt19937_64 rng = make_rng(seed, kGenTag, 4);
    Lin2Instance lin;
    lin.n = n;
    lin.constraints.reserve(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        std::vector<int> vars = sample_distinct_vars(n, 2, rng);
        lin.constraints.push_back({vars[0], vars[1], (rng() & 1) ? 1 : -1});
    }
    return lin;
}

}  // namespace advsat
