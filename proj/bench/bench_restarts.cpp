// Benchmark: OpenMP-parallel restart batches against the serial reference.
// The two paths must select identical winners; the speedup column reports
// whatever the hardware delivers.

#include <chrono>
#include <cstdio>

#include "qpf/experiment.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace qpf;

namespace {

double timed_run(int workers, MultiRestartResult* out) {
    const SpinSystem sys = SpinSystem::make(3);
    const TargetGate target = TargetGate::qft(3);
    RunnerConfig cfg;
    cfg.restarts = 8;
    cfg.max_iters = 400;
    cfg.refine_factor = 0;
    cfg.fixed_N = 100;
    cfg.workers = workers;
    const auto t0 = std::chrono::steady_clock::now();
    *out = multi_restart(sys, target, 2.5, cfg.restarts, cfg, 12345);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
    int hw_threads = 1;
#ifdef _OPENMP
    hw_threads = omp_get_max_threads();
#endif
    std::printf("restart batch: d=3, T=2.5, N=100, 8 restarts x 400 iterations\n");

    MultiRestartResult serial, parallel;
    const double t_serial = timed_run(1, &serial);
    std::printf("serial reference : %7.2f s\n", t_serial);

    const int workers = std::max(2, hw_threads);
    const double t_parallel = timed_run(workers, &parallel);
    std::printf("openmp (%d workers): %7.2f s  speedup %.2fx\n", workers, t_parallel,
                t_serial / t_parallel);

    bool identical = serial.all.size() == parallel.all.size() &&
                     serial.best.record.seed == parallel.best.record.seed &&
                     serial.best.record.final_error == parallel.best.record.final_error;
    for (std::size_t i = 0; identical && i < serial.all.size(); ++i)
        identical = serial.all[i].record.final_error == parallel.all[i].record.final_error;
    std::printf("identical results: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
