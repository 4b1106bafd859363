#pragma once

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace advsat {

// Worker count: ADVSAT_WORKERS if set and positive, else the OpenMP default,
// else 1. All parallel kernels write results into per-index slots so output
// is identical for every worker count.
inline int resolve_workers() {
    if (const char* env = std::getenv("ADVSAT_WORKERS")) {
        int w = std::atoi(env);
        if (w > 0) return w;
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

template <class F>
void parallel_for(long begin, long end, int workers, F&& body) {
#ifdef _OPENMP
    if (workers > 1) {
#pragma omp parallel for num_threads(workers) schedule(dynamic, 1)
        for (long i = begin; i < end; ++i) body(i);
        return;
    }
#endif
    (void)workers;
    for (long i = begin; i < end; ++i) body(i);
}

}  // namespace advsat
