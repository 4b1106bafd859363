#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "advsat/cnf.hpp"
#include "advsat/label_qp.hpp"

namespace advsat {

enum class Construction {
    UniformRandomKcnf,
    PlantedOneTrueLiteral,
    PlantedUniqueAttempt,
    Lin2Derived,
};

Construction construction_from_string(const std::string& s);
std::string construction_to_string(Construction c);

struct PlantedInstance {
    CnfFormula formula;
    std::optional<std::vector<bool>> planted;  // absent for uniform random
    Construction construction = Construction::UniformRandomKcnf;
    int n = 0, m = 0, k = 0;
    std::uint64_t seed = 0;
    // PlantedUniqueAttempt: set when the solution-count oracle confirmed a
    // unique model (checked for n <= 30; larger instances are left unverified)
    bool unique_verified = false;
    std::optional<Lin2Instance> lin;  // Lin2Derived keeps the source instance
};

// uniform-random-kcnf: k distinct variables per clause, uniform signs.
// planted-one-true-literal: exactly one literal true under the plant.
// planted-unique-attempt: uniform satisfiable clauses around a plant,
//   redrawn (up to 400 attempts) until the model is unique; gives up with
//   unique_verified=false if the budget runs out or n > 30.
// lin2-derived: random parity instance made fully satisfiable around a plant,
//   reduced to width-2 CNF (m constraints become 2m clauses).
PlantedInstance gen_planted(Construction c, int n, int m, int k, std::uint64_t seed);

// parity instance with uniform rhs (not necessarily satisfiable)
Lin2Instance gen_lin2_uniform(int n, int m, std::uint64_t seed);

}  // namespace advsat
