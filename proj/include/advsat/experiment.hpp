#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace advsat {

// Monte Carlo experiment kinds:
//   guessed-sweep   mean guessed count per permutation round vs epsilon on a
//                   fixed planted instance, paired advice/permutation seeds
//   pipeline-sweep  advice + baseline MAX-SAT ratio vs epsilon on a fixed
//                   planted instance, one advice seed per trial
//   theory-table    base-constant rows per k (no sampling)
//   label-qp-sweep  rounded unsatisfied fraction vs (epsilon, degree) for the
//                   label-advice convex program on planted width-2 instances
enum class ExperimentKind { GuessedSweep, PipelineSweep, TheoryTable, LabelQpSweep };

ExperimentKind experiment_kind_from_string(const std::string& s);
std::string experiment_kind_to_string(ExperimentKind k);

struct ExperimentSpec {
    std::string name = "experiment";
    ExperimentKind kind = ExperimentKind::GuessedSweep;
    std::uint64_t seed = 1;
    int trials = 0;  // 0 = per-kind default
    std::vector<double> epsilons;
    int n = 0, m = 0, k = 0;       // instance shape (0 = per-kind default)
    int implication_D = 1;          // guessed-sweep
    std::string baseline;           // pipeline-sweep: "condexp" | "random"
    std::string construction;       // guessed-sweep instance construction
    std::vector<int> degrees;       // label-qp-sweep: average degrees (m = n*deg/2)
    std::vector<int> table_ks;      // theory-table rows
    int num_workers = 0;            // 0 = environment / OpenMP default
};

// {"name", "kind", "seed", "trials", "epsilons", "params": {...}}; params keys
// n, m, k, D, baseline, construction, degrees, ks. Unknown keys are errors.
ExperimentSpec parse_experiment_spec(const std::string& json_text);
ExperimentSpec read_experiment_spec(const std::string& path);

struct CellSummary {
    std::string cell;  // stable id, e.g. "eps=0.25" or "k=4" or "eps=0.5,deg=160"
    double epsilon = 0.0;
    int trials = 0;
    double mean = 0.0;
    double stddev = 0.0;
    double ci95 = 0.0;                 // 1.96 * stddev / sqrt(trials)
    std::optional<double> theory;      // prediction or bound for the metric
    bool pass = true;
    std::string note;
    std::vector<std::uint64_t> seeds;  // per-trial seeds, enough to rerun the cell
};

struct ExperimentReport {
    std::string metric;  // what CellSummary::mean measures
    std::vector<CellSummary> cells;
    bool all_pass = true;
    // rendered outputs; identical strings for any worker count
    std::string trials_csv;
    std::string aggregate_csv;
    std::string report_json;
};

// Runs every cell (failures are recorded in the cell note and the run
// continues), trials in parallel, aggregation in trial order.
ExperimentReport run_experiment(const ExperimentSpec& spec);

// writes <dir>/<name>_trials.csv, _aggregate.csv, _report.json; returns paths
std::vector<std::string> write_experiment_outputs(const ExperimentSpec& spec,
                                                  const ExperimentReport& report,
                                                  const std::string& dir);

}  // namespace advsat
