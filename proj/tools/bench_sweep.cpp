// Timing comparison: serial reference sweep vs the OpenMP kernel.
// Both paths draw identical seeded instances, so the outcomes must match.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "decoy/sweep.hpp"

using namespace decoy;

int main(int argc, char** argv) {
    SweepConfig cfg;
    cfg.draws = argc > 1 ? static_cast<unsigned>(std::atoi(argv[1])) : 200;
    cfg.seed = argc > 2 ? static_cast<std::uint64_t>(std::atoll(argv[2])) : 1;

    using clock = std::chrono::steady_clock;

    auto t0 = clock::now();
    SweepOutcome serial = box_sweep_serial(cfg);
    double ts = std::chrono::duration<double>(clock::now() - t0).count();

    t0 = clock::now();
    SweepOutcome parallel = box_sweep_parallel(cfg);
    double tp = std::chrono::duration<double>(clock::now() - t0).count();

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif

    std::printf("draws: %u (seed %llu)\n", cfg.draws,
                static_cast<unsigned long long>(cfg.seed));
    std::printf("serial:   %.3fs  (%u violations)\n", ts, serial.violations);
    std::printf("parallel: %.3fs  (%u violations, %d threads)\n", tp, parallel.violations,
                threads);
    std::printf("speedup:  %.2fx\n", tp > 0 ? ts / tp : 0.0);

    PrecisionScope scope(cfg.prec);
    bool same = serial.draws == parallel.draws && serial.violations == parallel.violations &&
                serial.min_value == parallel.min_value && serial.max_value == parallel.max_value;
    if (!same) {
        std::printf("MISMATCH between serial and parallel outcomes\n");
        return 1;
    }
    std::printf("outcomes identical\n");
    return 0;
}
