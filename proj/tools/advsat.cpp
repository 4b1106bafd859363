#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "advsat/advice.hpp"
#include "advsat/cnf.hpp"
#include "advsat/dpll.hpp"
#include "advsat/experiment.hpp"
#include "advsat/gen.hpp"
#include "advsat/label_qp.hpp"
#include "advsat/maxsat.hpp"
#include "advsat/ppsz.hpp"
#include "advsat/theory.hpp"

using nlohmann::json;
using namespace advsat;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

CnfFormula load_cnf(const std::string& path) {
    std::vector<std::string> warnings;
    CnfFormula phi = parse_dimacs_file(path, &warnings);
    for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
    return phi;
}

struct GenOpts {
    std::string construction = "uniform-random-kcnf";
    int n = 0, m = 0, k = 3;
    std::uint64_t seed = 1;
    std::string out = "-";
    std::string plant_out, advice_out, lin_out;
    std::string advice_model = "subset";
    double eps = 0.5;
    std::uint64_t advice_seed = 1;
};

int run_gen(const GenOpts& o) {
    PlantedInstance inst =
        gen_planted(construction_from_string(o.construction), o.n, o.m, o.k, o.seed);
    write_text(o.out, serialize_dimacs(inst.formula));
    if (!o.plant_out.empty()) {
        if (!inst.planted) throw std::runtime_error("construction has no planted assignment");
        write_assignment_file(*inst.planted, o.plant_out);
    }
    if (!o.advice_out.empty()) {
        if (!inst.planted) throw std::runtime_error("advice needs a planted assignment");
        if (o.advice_model == "subset") {
            write_advice_file(gen_subset_advice(*inst.planted, o.eps, o.advice_seed),
                              o.advice_out);
        } else if (o.advice_model == "label") {
            write_advice_file(gen_label_advice(*inst.planted, o.eps, o.advice_seed),
                              o.advice_out);
        } else {
            throw std::runtime_error("advice model must be subset or label");
        }
    }
    if (!o.lin_out.empty()) {
        if (!inst.lin) throw std::runtime_error("--lin-out needs construction lin2-derived");
        write_text(o.lin_out, serialize_lin2(*inst.lin));
    }
    json info;
    info["construction"] = construction_to_string(inst.construction);
    info["n"] = inst.n;
    info["m"] = inst.m;
    info["k"] = inst.k;
    info["seed"] = inst.seed;
    info["unique_verified"] = inst.unique_verified;
    std::cerr << info.dump() << "\n";
    return 0;
}

struct DecideOpts {
    std::string cnf, advice, model_out;
    int D = 1;
    long T = 0;
    double delta = 0.01;
    std::uint64_t seed = 1;
    int workers = 0;
    bool print_json = false;
};

int run_decide(const DecideOpts& o) {
    CnfFormula phi = load_cnf(o.cnf);
    SubsetAdvice adv;
    if (!o.advice.empty()) {
        ParsedAdvice pa = read_advice_file(o.advice);
        if (pa.model != AdviceModel::Subset) {
            throw std::runtime_error("decide takes subset advice");
        }
        adv = pa.subset;
    }
    SolverConfig cfg;
    cfg.implication_D = o.D;
    cfg.iterations_T = o.T;
    cfg.failure_prob_delta = o.delta;
    cfg.seed = o.seed;
    cfg.num_workers = o.workers;
    SolveResult res = ppsz_with_advice(phi, adv, cfg);

    const char* verdict = res.status == SolverStatus::Sat ? "sat"
                          : res.status == SolverStatus::UnsatPresumed ? "unsat-presumed"
                                                                      : "advice-contradiction";
    if (o.print_json) {
        json j;
        j["status"] = verdict;
        j["iterations_used"] = res.stats.iterations_used;
        j["completed_iterations"] = res.stats.completed_iterations;
        j["advice_assigned"] = res.stats.advice_assigned;
        j["sum_forced"] = res.stats.sum_forced;
        j["sum_guessed"] = res.stats.sum_guessed;
        if (res.assignment) j["assignment"] = serialize_assignment(*res.assignment);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << verdict << "\n";
        if (res.assignment) std::cout << serialize_assignment(*res.assignment);
    }
    if (!o.model_out.empty() && res.assignment) {
        write_assignment_file(*res.assignment, o.model_out);
    }
    switch (res.status) {
        case SolverStatus::Sat: return 10;
        case SolverStatus::UnsatPresumed: return 20;
        case SolverStatus::AdviceContradiction: return 30;
    }
    return 1;
}

struct MaxsatOpts {
    std::string cnf, advice, assign_out;
    std::string baseline = "condexp";
    std::uint64_t seed = 1;
    int trials = 1;
    bool oracle = false;
};

int run_maxsat(const MaxsatOpts& o) {
    CnfFormula phi = load_cnf(o.cnf);
    std::optional<ParsedAdvice> pa;
    if (!o.advice.empty()) pa = read_advice_file(o.advice);
    if (o.trials < 1) throw std::runtime_error("--trials must be >= 1");

    auto one_trial = [&](std::uint64_t seed) {
        if (o.baseline == "follow-label") {
            if (!pa || pa->model != AdviceModel::Label) {
                throw std::runtime_error("follow-label needs label advice");
            }
            return baseline_follow_label(phi, pa->label);
        }
        std::function<ApproxResult(const CnfFormula&)> base;
        if (o.baseline == "condexp") {
            base = [](const CnfFormula& f) { return baseline_condexp(f); };
        } else if (o.baseline == "random") {
            base = [seed](const CnfFormula& f) { return baseline_random(f, seed); };
        } else {
            throw std::runtime_error("baseline must be condexp, random, or follow-label");
        }
        if (pa) {
            if (pa->model != AdviceModel::Subset) {
                throw std::runtime_error("the pipeline takes subset advice");
            }
            return advice_pipeline(phi, pa->subset, base);
        }
        return base(phi);
    };

    ApproxResult best;
    long sum = 0;
    int lo = 0, hi = 0;
    for (int t = 0; t < o.trials; ++t) {
        ApproxResult res = one_trial(o.seed + static_cast<std::uint64_t>(t));
        sum += res.satisfied;
        if (t == 0 || res.satisfied < lo) lo = res.satisfied;
        if (t == 0 || res.satisfied > hi) hi = res.satisfied;
        if (t == 0 || res.satisfied > best.satisfied) best = std::move(res);
    }

    json j;
    j["baseline"] = best.baseline_name;
    j["satisfied"] = best.satisfied;
    j["m"] = phi.num_clauses();
    j["assignment"] = serialize_assignment(best.assignment);
    if (o.trials > 1) {
        j["trials"] = o.trials;
        j["mean_satisfied"] = static_cast<double>(sum) / o.trials;
        j["min_satisfied"] = lo;
        j["max_satisfied"] = hi;
    }
    if (o.oracle) {
        int opt = brute_force_maxsat(phi).first;
        j["opt"] = opt;
        j["ratio"] = opt > 0 ? static_cast<double>(best.satisfied) / opt : 1.0;
    }
    std::cout << j.dump(2) << "\n";
    if (!o.assign_out.empty()) write_assignment_file(best.assignment, o.assign_out);
    return 0;
}

struct Max2SatOpts {
    std::string cnf, advice, plant, assign_out;
    double gap_tol = 1e-6;
    long max_iterations = 100000;
    bool audit = false;
};

int run_max2sat_label(const Max2SatOpts& o) {
    CnfFormula phi = load_cnf(o.cnf);
    ParsedAdvice pa = read_advice_file(o.advice);
    if (pa.model != AdviceModel::Label) {
        throw std::runtime_error("max2sat-label takes label advice");
    }
    std::optional<std::vector<bool>> plant;
    if (!o.plant.empty()) plant = read_assignment_file(o.plant, phi.num_vars());
    LabelQpResult res = max2sat_with_label_advice(phi, pa.label, o.gap_tol,
                                                  o.max_iterations,
                                                  plant ? &*plant : nullptr);
    json j;
    j["satisfied"] = res.approx.satisfied;
    j["m"] = phi.num_clauses();
    j["n"] = phi.num_vars();
    j["assignment"] = serialize_assignment(res.approx.assignment);
    if (o.audit) {
        json a;
        a["f_rounded"] = res.audit.f_rounded;
        a["f_relaxed"] = res.audit.f_relaxed;
        a["F_relaxed"] = res.audit.F_relaxed;
        if (res.audit.F_star) a["F_star"] = *res.audit.F_star;
        a["certified_gap"] = res.audit.certified_gap;
        a["converged"] = res.audit.converged;
        j["audit"] = a;
    }
    std::cout << j.dump(2) << "\n";
    if (!o.assign_out.empty()) write_assignment_file(res.approx.assignment, o.assign_out);
    return 0;
}

struct Lin2SatOpts {
    std::string lin, out = "-", assign, lin_out;
    int gen_n = 0, gen_m = 0;
    std::uint64_t seed = 1;
};

int run_lin2sat(const Lin2SatOpts& o) {
    Lin2Instance lin;
    if (o.gen_n > 0) {
        lin = gen_lin2_uniform(o.gen_n, o.gen_m, o.seed);
        if (!o.lin_out.empty()) write_text(o.lin_out, serialize_lin2(lin));
    } else if (!o.lin.empty()) {
        lin = parse_lin2(slurp(o.lin));
    } else {
        throw std::runtime_error("need --lin FILE or --gen-n/--gen-m");
    }
    CnfFormula phi = lin2_to_sat2(lin);
    write_text(o.out, serialize_dimacs(phi));
    if (!o.assign.empty()) {
        std::vector<bool> x = read_assignment_file(o.assign, lin.n);
        int lin_sat = count_lin_satisfied(lin, x);
        int sat_sat = count_satisfied(phi, x);
        json j;
        j["lin_satisfied"] = lin_sat;
        j["sat_satisfied"] = sat_sat;
        j["lin_m"] = static_cast<int>(lin.constraints.size());
        j["identity_holds"] = (lin_sat == sat_sat - static_cast<int>(lin.constraints.size()));
        std::cerr << j.dump() << "\n";
    }
    return 0;
}

struct TheoryOpts {
    int k = 3;
    double eps = 0.0;
    int d = 0;
    bool table1 = false;
};

int run_theory(const TheoryOpts& o) {
    if (o.table1) {
        std::cout << theory_table_json() << "\n";
        return 0;
    }
    std::optional<int> d;
    if (o.d > 0) d = o.d;
    std::cout << theory_report_json(base_constants(o.k, o.eps, d)) << "\n";
    return 0;
}

struct ExperimentOpts {
    std::string spec;
    std::string out_dir = ".";
    int workers = 0;
};

int run_experiment_cmd(const ExperimentOpts& o) {
    ExperimentSpec spec = read_experiment_spec(o.spec);
    spec.num_workers = o.workers;
    ExperimentReport rep = run_experiment(spec);
    std::vector<std::string> paths = write_experiment_outputs(spec, rep, o.out_dir);
    json j;
    j["outputs"] = paths;
    j["metric"] = rep.metric;
    j["all_pass"] = rep.all_pass;
    std::cout << j.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"learning-augmented SAT toolkit: advice-accelerated decision solving,"
                 " MAX-SAT pipelines, and the matching theory constants"};
    app.require_subcommand(1);
    int rc = 0;

    GenOpts g;
    CLI::App* gen = app.add_subcommand("gen", "generate instances, plants, and advice");
    gen->add_option("--construction", g.construction,
                    "uniform-random-kcnf | planted-one-true-literal | "
                    "planted-unique-attempt | lin2-derived");
    gen->add_option("-n", g.n, "variables")->required();
    gen->add_option("-m", g.m, "clauses (constraints for lin2-derived)")->required();
    gen->add_option("-k", g.k, "clause width");
    gen->add_option("--seed", g.seed, "instance seed");
    gen->add_option("-o,--out", g.out, "DIMACS output path, - for stdout");
    gen->add_option("--plant-out", g.plant_out, "write the planted assignment");
    gen->add_option("--advice-out", g.advice_out, "write advice generated from the plant");
    gen->add_option("--advice-model", g.advice_model, "subset | label");
    gen->add_option("--eps", g.eps, "advice strength");
    gen->add_option("--advice-seed", g.advice_seed, "advice seed");
    gen->add_option("--lin-out", g.lin_out, "write the source parity instance");
    gen->callback([&] { rc = run_gen(g); });

    DecideOpts d;
    CLI::App* dec = app.add_subcommand("decide", "randomized decision solver with advice");
    dec->add_option("--cnf", d.cnf, "DIMACS input")->required();
    dec->add_option("--advice", d.advice, "subset advice JSON");
    dec->add_option("-D,--D", d.D, "implication strength (1..3)");
    dec->add_option("-T,--T", d.T, "iteration budget, 0 = auto");
    dec->add_option("--delta", d.delta, "target failure probability for auto budget");
    dec->add_option("--seed", d.seed, "solver seed");
    dec->add_option("--workers", d.workers, "worker threads, 0 = env/default");
    dec->add_option("--model-out", d.model_out, "write the model when sat");
    dec->add_flag("--json", d.print_json, "machine-readable result");
    dec->callback([&] { rc = run_decide(d); });

    MaxsatOpts mx;
    CLI::App* ms = app.add_subcommand("maxsat", "advice pipeline and baselines");
    ms->add_option("--cnf", mx.cnf, "DIMACS input")->required();
    ms->add_option("--advice", mx.advice, "advice JSON");
    ms->add_option("--baseline", mx.baseline, "condexp | random | follow-label");
    ms->add_option("--seed", mx.seed, "seed for the random baseline");
    ms->add_option("--trials", mx.trials, "rerun with seed, seed+1, ... and summarize");
    ms->add_flag("--oracle", mx.oracle, "also report the exact optimum (n <= 26)");
    ms->add_option("--assign-out", mx.assign_out, "write the output assignment");
    ms->callback([&] { rc = run_maxsat(mx); });

    Max2SatOpts m2;
    CLI::App* m2s = app.add_subcommand("max2sat-label",
                                       "label-advice convex program for width-2 formulas");
    m2s->add_option("--cnf", m2.cnf, "DIMACS input, width 2")->required();
    m2s->add_option("--advice", m2.advice, "label advice JSON")->required();
    m2s->add_option("--gap", m2.gap_tol, "relative duality gap target");
    m2s->add_option("--max-iterations", m2.max_iterations, "solver pivot cap");
    m2s->add_flag("--audit-chain", m2.audit, "report the rounding/relaxation audit");
    m2s->add_option("--plant", m2.plant, "planted assignment for the audit reference");
    m2s->add_option("--assign-out", m2.assign_out, "write the output assignment");
    m2s->callback([&] { rc = run_max2sat_label(m2); });

    Lin2SatOpts l2;
    CLI::App* l2s = app.add_subcommand("lin2sat", "parity-constraint to width-2 CNF reduction");
    l2s->add_option("--lin", l2.lin, "parity instance file");
    l2s->add_option("-o,--out", l2.out, "DIMACS output path, - for stdout");
    l2s->add_option("--assign", l2.assign, "assignment to score on both sides");
    l2s->add_option("--gen-n", l2.gen_n, "generate: variables");
    l2s->add_option("--gen-m", l2.gen_m, "generate: constraints");
    l2s->add_option("--seed", l2.seed, "generate: seed");
    l2s->add_option("--lin-out", l2.lin_out, "generate: write the parity instance");
    l2s->callback([&] { rc = run_lin2sat(l2); });

    TheoryOpts th;
    CLI::App* t = app.add_subcommand("theory", "solver analysis constants");
    t->add_option("-k,--k", th.k, "clause width");
    t->add_option("--eps", th.eps, "advice strength");
    t->add_option("-d,--d", th.d, "implication strength for the loss bound");
    t->add_flag("--table1", th.table1, "base-constant table for k = 3..6");
    t->callback([&] { rc = run_theory(th); });

    ExperimentOpts ex;
    CLI::App* e = app.add_subcommand("experiment", "run a JSON experiment spec");
    e->add_option("--spec", ex.spec, "experiment spec JSON")->required();
    e->add_option("--out", ex.out_dir, "output directory");
    e->add_option("--workers", ex.workers, "worker threads, 0 = env/default");
    e->callback([&] { rc = run_experiment_cmd(ex); });

    try {
        CLI11_PARSE(app, argc, argv);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return rc;
}
