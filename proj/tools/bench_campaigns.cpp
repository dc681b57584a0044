// Benchmark comparing the serial reference path against the OpenMP path for
// the data-parallel kernels: inequality sweeps, lemma fuzzing, the
// brute-force plane grid, and optimizer restarts.

#include <chrono>
#include <cstdio>
#include <functional>

#include "cosy/campaign.hpp"
#include "cosy/delta.hpp"
#include "cosy/parallel.hpp"

namespace {

double time_seconds(const std::function<void()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count();
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-28s %10.3fs %10.3fs %8.2fx\n", name, serial, parallel,
                parallel > 0.0 ? serial / parallel : 0.0);
}

}  // namespace

int main() {
    using namespace cosy;

    std::printf("OpenMP: %s, max threads: %d\n", openmp_enabled() ? "on" : "off", max_threads());
    std::printf("%-28s %11s %11s %9s\n", "kernel", "serial", "parallel", "speedup");

    {
        SweepConfig config;
        config.count = 2000;
        config.n = 3;
        config.m = 4;
        config.seed = 2024;
        config.with_delta = true;
        config.delta.restarts = 4;
        config.delta.grid_resolution = 8;
        config.delta.max_iters = 100;
        config.parallel = false;
        const double serial = time_seconds([&] { (void)run_sweep(config); });
        config.parallel = true;
        const double parallel = time_seconds([&] { (void)run_sweep(config); });
        report("sweep (2000 x n+1=4)", serial, parallel);
    }

    {
        LemmaFuzzConfig config;
        config.count = 300000;
        config.seed = 99;
        config.parallel = false;
        const double serial = time_seconds([&] { (void)run_lemma_fuzz(config); });
        config.parallel = true;
        const double parallel = time_seconds([&] { (void)run_lemma_fuzz(config); });
        report("lemma fuzz (3e5)", serial, parallel);
    }

    {
        const SubmanifoldPoint pt = make_random_point(4, 4, 1.5, true, 7u);
        const double serial =
            time_seconds([&] { (void)inf_sectional_bruteforce(pt, 64, false, false); });
        const double parallel =
            time_seconds([&] { (void)inf_sectional_bruteforce(pt, 64, false, true); });
        report("plane grid (n+1=5, res 64)", serial, parallel);
    }

    {
        const SubmanifoldPoint pt = make_random_point(4, 4, -2.0, true, 11u);
        DeltaOptions opts;
        opts.restarts = 256;
        opts.parallel = false;
        const double serial = time_seconds([&] { (void)inf_sectional_optimize(pt, opts); });
        opts.parallel = true;
        const double parallel = time_seconds([&] { (void)inf_sectional_optimize(pt, opts); });
        report("optimizer (256 restarts)", serial, parallel);
    }

    return 0;
}
