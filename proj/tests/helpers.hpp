#pragma once

#include <initializer_list>
#include <optional>
#include <vector>

#include "advsat/cnf.hpp"

namespace advsat_tests {

inline advsat::CnfFormula mk(int n, std::initializer_list<advsat::Clause> cls,
                             std::optional<int> k = std::nullopt) {
    return advsat::CnfFormula(n, std::vector<advsat::Clause>(cls), k);
}

// assignment from the low bits of mask, variable 1 = bit 0
inline std::vector<bool> bits(int n, unsigned long long mask) {
    std::vector<bool> x(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] = (mask >> i) & 1ULL;
    return x;
}

}  // namespace advsat_tests
