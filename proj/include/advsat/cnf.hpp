#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace advsat {

// A literal is a signed DIMACS-style integer: +v for x_v, -v for !x_v, v >= 1.
using Lit = int;

inline int lit_var(Lit l) { return l < 0 ? -l : l; }
inline bool lit_positive(Lit l) { return l > 0; }

using Clause = std::vector<Lit>;

// Immutable after construction. Clauses are kept in input order; duplicate
// clauses encode multiplicity. Tautologies and empty clauses are rejected.
class CnfFormula {
public:
    CnfFormula() = default;
    // Validates invariants; throws std::invalid_argument on violation.
    CnfFormula(int num_vars, std::vector<Clause> clauses,
               std::optional<int> k_bound = std::nullopt);

    int num_vars() const { return n_; }
    int num_clauses() const { return static_cast<int>(clauses_.size()); }
    const std::vector<Clause>& clauses() const { return clauses_; }
    const Clause& clause(int idx) const { return clauses_[static_cast<size_t>(idx)]; }
    std::optional<int> k_bound() const { return k_bound_; }
    // max clause width actually present (0 if no clauses)
    int max_width() const { return max_width_; }

    // clause indices containing variable v (either polarity), v in 1..n
    const std::vector<int>& occurrences(int v) const {
        return occ_[static_cast<size_t>(v)];
    }

    bool operator==(const CnfFormula& o) const {
        return n_ == o.n_ && clauses_ == o.clauses_;
    }

private:
    int n_ = 0;
    std::vector<Clause> clauses_;
    std::optional<int> k_bound_;
    int max_width_ = 0;
    std::vector<std::vector<int>> occ_;  // occ_[v] = clause indices touching v
};

enum class TriState : std::uint8_t { Unset, False, True };

// Tri-state assignment over variables 1..n.
class PartialAssignment {
public:
    PartialAssignment() = default;
    explicit PartialAssignment(int num_vars)
        : vals_(static_cast<size_t>(num_vars) + 1, TriState::Unset) {}

    int num_vars() const { return static_cast<int>(vals_.size()) - 1; }
    bool is_set(int v) const { return vals_[static_cast<size_t>(v)] != TriState::Unset; }
    bool value(int v) const { return vals_[static_cast<size_t>(v)] == TriState::True; }
    void set(int v, bool b) { vals_[static_cast<size_t>(v)] = b ? TriState::True : TriState::False; }
    void unset(int v) { vals_[static_cast<size_t>(v)] = TriState::Unset; }

    // literal truth value under this assignment, if its variable is set
    std::optional<bool> lit_value(Lit l) const {
        TriState t = vals_[static_cast<size_t>(lit_var(l))];
        if (t == TriState::Unset) return std::nullopt;
        return (t == TriState::True) == lit_positive(l);
    }

private:
    std::vector<TriState> vals_;
};

enum class ReductionStatus { Open, Satisfied, Falsified };

struct ReductionOutcome {
    CnfFormula reduced;
    ReductionStatus status = ReductionStatus::Open;
    // clauses dropped because sigma satisfied them; for any completion of
    // sigma, count on the original = count on reduced + this
    int removed_satisfied = 0;
};

// DIMACS CNF parsing. Duplicate literals within a clause are deduplicated;
// a header/actual clause-count mismatch is a warning (appended to *warnings
// if given), not an error. Throws std::runtime_error on malformed input,
// out-of-range literals, or tautological clauses (reported with their
// 1-based clause number).
CnfFormula parse_dimacs(std::istream& in, std::vector<std::string>* warnings = nullptr);
CnfFormula parse_dimacs(const std::string& text, std::vector<std::string>* warnings = nullptr);
CnfFormula parse_dimacs_file(const std::string& path, std::vector<std::string>* warnings = nullptr);

std::string serialize_dimacs(const CnfFormula& phi);
void write_dimacs_file(const CnfFormula& phi, const std::string& path);

// Removes clauses satisfied by sigma and deletes literals falsified by sigma.
// status = Falsified iff some clause became empty, Satisfied iff all clauses
// were removed. The reduced formula keeps the original variable numbering.
ReductionOutcome reduce(const CnfFormula& phi, const PartialAssignment& sigma);

// Number of clauses (with multiplicity) satisfied by a complete assignment.
// x[i] is the value of variable i+1. Throws if x.size() != n.
int count_satisfied(const CnfFormula& phi, const std::vector<bool>& x);

// Assignment files: one line of n space-separated 0/1 values.
std::vector<bool> parse_assignment(const std::string& text, int expect_n = -1);
std::vector<bool> read_assignment_file(const std::string& path, int expect_n = -1);
std::string serialize_assignment(const std::vector<bool>& x);
void write_assignment_file(const std::vector<bool>& x, const std::string& path);

}  // namespace advsat
