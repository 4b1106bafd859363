// Serial vs parallel timing for the two OpenMP kernels plus the experiment
// driver, with a result-equality check so the parallel paths cannot drift.

#include <chrono>
#include <cstdio>
#include <string>

#include "advsat/experiment.hpp"
#include "advsat/gen.hpp"
#include "advsat/maxsat.hpp"
#include "advsat/parallel.hpp"
#include "advsat/ppsz.hpp"

using namespace advsat;

namespace {

double now_ms() {
    using clk = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clk::now().time_since_epoch()).count();
}

template <typename F>
double timed(F&& f) {
    double t0 = now_ms();
    f();
    return now_ms() - t0;
}

int failures = 0;

void report(const char* name, double serial_ms, double parallel_ms, bool same) {
    std::printf("%-28s serial %9.1f ms   parallel %9.1f ms   speedup %5.2fx   results %s\n",
                name, serial_ms, parallel_ms,
                parallel_ms > 0 ? serial_ms / parallel_ms : 0.0, same ? "match" : "DIFFER");
    if (!same) ++failures;
}

}  // namespace

int main() {
    int workers = resolve_workers();
    std::printf("parallel workers: %d\n\n", workers);

    {
        PlantedInstance inst = gen_planted(Construction::UniformRandomKcnf, 40, 250, 3, 7);
        SolverConfig cfg;
        cfg.iterations_T = 4000;
        cfg.seed = 11;
        SolveResult a, b;
        cfg.num_workers = 1;
        double ts = timed([&] { a = ppsz_with_advice(inst.formula, SubsetAdvice{}, cfg); });
        cfg.num_workers = workers;
        double tp = timed([&] { b = ppsz_with_advice(inst.formula, SubsetAdvice{}, cfg); });
        bool same = a.status == b.status && a.stats.sum_forced == b.stats.sum_forced &&
                    a.stats.sum_guessed == b.stats.sum_guessed &&
                    a.stats.iterations_used == b.stats.iterations_used;
        report("ppsz full budget (D=1)", ts, tp, same);
    }

    {
        PlantedInstance inst = gen_planted(Construction::PlantedUniqueAttempt, 24, 130, 3, 5);
        SolverConfig cfg;
        cfg.iterations_T = 50000;
        cfg.seed = 13;
        SolveResult a, b;
        cfg.num_workers = 1;
        double ts = timed([&] { a = ppsz_with_advice(inst.formula, SubsetAdvice{}, cfg); });
        cfg.num_workers = workers;
        double tp = timed([&] { b = ppsz_with_advice(inst.formula, SubsetAdvice{}, cfg); });
        bool same = a.status == b.status && a.assignment == b.assignment &&
                    a.stats.iterations_used == b.stats.iterations_used;
        report("ppsz until first model", ts, tp, same);
    }

    {
        PlantedInstance inst = gen_planted(Construction::UniformRandomKcnf, 20, 90, 3, 3);
        std::pair<int, std::vector<bool>> a, b;
        double ts = timed([&] { a = brute_force_maxsat_reference(inst.formula); });
        double tp = timed([&] { b = brute_force_maxsat(inst.formula); });
        report("maxsat scan n=20", ts, tp, a == b);
    }

    {
        ExperimentSpec spec;
        spec.kind = ExperimentKind::GuessedSweep;
        spec.seed = 3;
        spec.trials = 400;
        spec.n = 16;
        spec.m = 85;
        ExperimentReport a, b;
        spec.num_workers = 1;
        double ts = timed([&] { a = run_experiment(spec); });
        spec.num_workers = workers;
        double tp = timed([&] { b = run_experiment(spec); });
        bool same = a.trials_csv == b.trials_csv && a.aggregate_csv == b.aggregate_csv &&
                    a.report_json == b.report_json;
        report("guessed-sweep experiment", ts, tp, same);
    }

    if (failures > 0) {
        std::printf("\n%d kernel(s) returned different results\n", failures);
        return 1;
    }
    return 0;
}
