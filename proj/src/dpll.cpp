#include "advsat/dpll.hpp"

#include <stdexcept>

namespace advsat {

namespace {

struct DpllState {
    const CnfFormula* phi;
    PartialAssignment sigma;
    std::vector<int> trail;

    bool assign(int v, bool b) {
        sigma.set(v, b);
        trail.push_back(v);
        return true;
    }

    void backtrack(size_t mark) {
        while (trail.size() > mark) {
            sigma.unset(trail.back());
            trail.pop_back();
        }
    }

    // returns false on conflict; otherwise propagates all unit clauses
    bool propagate() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const Clause& c : phi->clauses()) {
                int unset_count = 0;
                Lit last_unset = 0;
                bool satisfied = false;
                for (Lit l : c) {
                    std::optional<bool> v = sigma.lit_value(l);
                    if (!v) {
                        ++unset_count;
                        last_unset = l;
                    } else if (*v) {
                        satisfied = true;
                        break;
                    }
                }
                if (satisfied) continue;
                if (unset_count == 0) return false;
                if (unset_count == 1) {
                    assign(lit_var(last_unset), lit_positive(last_unset));
                    changed = true;
                }
            }
        }
        return true;
    }

    int pick_branch_var() const {
        for (int v = 1; v <= phi->num_vars(); ++v) {
            if (!sigma.is_set(v)) return v;
        }
        return 0;
    }

    bool all_satisfied() const {
        for (const Clause& c : phi->clauses()) {
            bool sat = false;
            for (Lit l : c) {
                std::optional<bool> v = sigma.lit_value(l);
                if (v && *v) {
                    sat = true;
                    break;
                }
            }
            if (!sat) return false;
        }
        return true;
    }

    bool solve() {
        if (!propagate()) return false;
        int v = pick_branch_var();
        if (v == 0) return all_satisfied();
        for (bool b : {false, true}) {
            size_t mark = trail.size();
            assign(v, b);
            if (solve()) return true;
            backtrack(mark);
        }
        return false;
    }

    void count(long limit, long& found) {
        if (found >= limit) return;
        if (!propagate()) return;
        int v = pick_branch_var();
        if (v == 0) {
            if (all_satisfied()) ++found;
            return;
        }
        for (bool b : {false, true}) {
            size_t mark = trail.size();
            assign(v, b);
            count(limit, found);
            backtrack(mark);
            if (found >= limit) return;
        }
    }
};

}  // namespace

std::optional<std::vector<bool>> brute_force_sat(const CnfFormula& phi) {
    if (phi.num_vars() > 30) throw std::invalid_argument("brute_force_sat: n > 30");
    DpllState st{&phi, PartialAssignment(phi.num_vars()), {}};
    if (!st.solve()) return std::nullopt;
    std::vector<bool> x(static_cast<size_t>(phi.num_vars()), false);
    for (int v = 1; v <= phi.num_vars(); ++v) {
        // variables never touched by propagation or branching stay false,
        // which is the lexicographically smallest completion
        x[static_cast<size_t>(v) - 1] = st.sigma.is_set(v) && st.sigma.value(v);
    }
    return x;
}

long count_solutions(const CnfFormula& phi, long limit) {
    if (phi.num_vars() > 30) throw std::invalid_argument("count_solutions: n > 30");
    DpllState st{&phi, PartialAssignment(phi.num_vars()), {}};
    long found = 0;
    st.count(limit, found);
    return found;
}

}  // namespace advsat
