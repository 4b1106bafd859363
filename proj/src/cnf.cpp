#include "advsat/cnf.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace advsat {

CnfFormula::CnfFormula(int num_vars, std::vector<Clause> clauses,
                       std::optional<int> k_bound)
    : n_(num_vars), clauses_(std::move(clauses)), k_bound_(k_bound) {
    if (n_ < 0) throw std::invalid_argument("negative variable count");
    occ_.assign(static_cast<size_t>(n_) + 1, {});
    for (size_t ci = 0; ci < clauses_.size(); ++ci) {
        Clause& c = clauses_[ci];
        if (c.empty()) {
            throw std::invalid_argument("empty clause " + std::to_string(ci + 1));
        }
        std::sort(c.begin(), c.end(), [](Lit a, Lit b) {
            return lit_var(a) != lit_var(b) ? lit_var(a) < lit_var(b) : a > b;
        });
        c.erase(std::unique(c.begin(), c.end()), c.end());
        for (size_t i = 0; i + 1 < c.size(); ++i) {
            if (lit_var(c[i]) == lit_var(c[i + 1])) {
                throw std::invalid_argument("tautological clause " + std::to_string(ci + 1));
            }
        }
        for (Lit l : c) {
            int v = lit_var(l);
            if (v < 1 || v > n_) {
                throw std::invalid_argument("literal out of range in clause " +
                                            std::to_string(ci + 1));
            }
        }
        if (k_bound_ && static_cast<int>(c.size()) > *k_bound_) {
            throw std::invalid_argument("clause " + std::to_string(ci + 1) +
                                        " exceeds width bound");
        }
        max_width_ = std::max(max_width_, static_cast<int>(c.size()));
        for (Lit l : c) occ_[static_cast<size_t>(lit_var(l))].push_back(static_cast<int>(ci));
    }
}

CnfFormula parse_dimacs(std::istream& in, std::vector<std::string>* warnings) {
    int n = -1;
    long declared_m = -1;
    std::vector<Clause> clauses;
    Clause cur;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == 'c' || line[0] == '%') continue;
        if (line[0] == 'p') {
            std::istringstream hs(line);
            std::string p, fmt;
            hs >> p >> fmt >> n >> declared_m;
            if (hs.fail() || fmt != "cnf" || n < 0 || declared_m < 0) {
                throw std::runtime_error("malformed DIMACS header: " + line);
            }
            header_seen = true;
            continue;
        }
        if (!header_seen) {
            throw std::runtime_error("clause data before DIMACS header");
        }
        std::istringstream ls(line);
        long lit;
        while (ls >> lit) {
            if (lit == 0) {
                clauses.push_back(cur);
                cur.clear();
            } else {
                if (lit < -n || lit > n || lit == 0) {
                    throw std::runtime_error("literal out of range in clause " +
                                             std::to_string(clauses.size() + 1));
                }
                cur.push_back(static_cast<Lit>(lit));
            }
        }
        if (!ls.eof()) {
            throw std::runtime_error("malformed clause data: " + line);
        }
    }
    if (!header_seen) throw std::runtime_error("missing DIMACS header");
    if (!cur.empty()) {
        // final clause without terminating 0; accept it
        clauses.push_back(cur);
    }
    if (declared_m != static_cast<long>(clauses.size()) && warnings) {
        warnings->push_back("header declares " + std::to_string(declared_m) +
                            " clauses, found " + std::to_string(clauses.size()));
    }
    try {
        return CnfFormula(n, std::move(clauses));
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(e.what());
    }
}

CnfFormula parse_dimacs(const std::string& text, std::vector<std::string>* warnings) {
    std::istringstream in(text);
    return parse_dimacs(in, warnings);
}

CnfFormula parse_dimacs_file(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_dimacs(in, warnings);
}

std::string serialize_dimacs(const CnfFormula& phi) {
    std::ostringstream out;
    out << "p cnf " << phi.num_vars() << " " << phi.num_clauses() << "\n";
    for (const Clause& c : phi.clauses()) {
        for (Lit l : c) out << l << " ";
        out << "0\n";
    }
    return out.str();
}

void write_dimacs_file(const CnfFormula& phi, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << serialize_dimacs(phi);
}

ReductionOutcome reduce(const CnfFormula& phi, const PartialAssignment& sigma) {
    std::vector<Clause> kept;
    bool falsified = false;
    int removed_satisfied = 0;
    for (const Clause& c : phi.clauses()) {
        Clause rc;
        bool satisfied = false;
        for (Lit l : c) {
            std::optional<bool> v = sigma.lit_value(l);
            if (!v) {
                rc.push_back(l);
            } else if (*v) {
                satisfied = true;
                break;
            }
        }
        if (satisfied) {
            ++removed_satisfied;
            continue;
        }
        if (rc.empty()) falsified = true;
        kept.push_back(std::move(rc));
    }
    ReductionOutcome out;
    out.removed_satisfied = removed_satisfied;
    if (falsified) {
        out.status = ReductionStatus::Falsified;
        // keep non-empty clauses only in the carried formula; the status already
        // records the contradiction and CnfFormula forbids empty clauses
        std::vector<Clause> nonempty;
        for (Clause& c : kept)
            if (!c.empty()) nonempty.push_back(std::move(c));
        out.reduced = CnfFormula(phi.num_vars(), std::move(nonempty));
    } else if (kept.empty()) {
        out.status = ReductionStatus::Satisfied;
        out.reduced = CnfFormula(phi.num_vars(), {});
    } else {
        out.status = ReductionStatus::Open;
        out.reduced = CnfFormula(phi.num_vars(), std::move(kept));
    }
    return out;
}

int count_satisfied(const CnfFormula& phi, const std::vector<bool>& x) {
    if (static_cast<int>(x.size()) != phi.num_vars()) {
        throw std::invalid_argument("assignment size mismatch");
    }
    int cnt = 0;
    for (const Clause& c : phi.clauses()) {
        for (Lit l : c) {
            if (x[static_cast<size_t>(lit_var(l)) - 1] == lit_positive(l)) {
                ++cnt;
                break;
            }
        }
    }
    return cnt;
}

std::vector<bool> parse_assignment(const std::string& text, int expect_n) {
    std::istringstream in(text);
    std::vector<bool> x;
    int b;
    while (in >> b) {
        if (b != 0 && b != 1) throw std::runtime_error("assignment values must be 0/1");
        x.push_back(b == 1);
    }
    if (expect_n >= 0 && static_cast<int>(x.size()) != expect_n) {
        throw std::runtime_error("assignment has " + std::to_string(x.size()) +
                                 " values, expected " + std::to_string(expect_n));
    }
    return x;
}

std::vector<bool> read_assignment_file(const std::string& path, int expect_n) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_assignment(ss.str(), expect_n);
}

std::string serialize_assignment(const std::vector<bool>& x) {
    std::ostringstream out;
    for (size_t i = 0; i < x.size(); ++i) {
        if (i) out << " ";
        out << (x[i] ? 1 : 0);
    }
    out << "\n";
    return out.str();
}

void write_assignment_file(const std::vector<bool>& x, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << serialize_assignment(x);
}

}  // namespace advsat
