// Times the OpenMP kernels against their serial references.

#include "rearrange/bench.hpp"
#include "rearrange/depgraph.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <vector>

using namespace rearrange;

namespace {

template <class F> double best_of(int reps, F &&f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"serial vs parallel kernel timings"};
    int reps = 5;
    std::vector<std::size_t> sizes{100, 200, 400, 800};
    std::size_t trials = 4;
    app.add_option("--reps", reps, "repetitions per measurement (best is reported)");
    app.add_option("--n", sizes, "object counts for the dependency graph kernel");
    app.add_option("--trials", trials, "trials per point for the bench dispatch");
    CLI11_PARSE(app, argc, argv);

    std::printf("threads: %d\n\n", omp_get_max_threads());
    std::printf("%-22s %6s %12s %12s %8s\n", "kernel", "n", "serial_s", "parallel_s", "speedup");
    for (std::size_t n : sizes) {
        const Instance inst = gen_random(n, 0.3, ShapeFamily::Disc, {40, 40}, n);
        std::size_t edges_s = 0, edges_p = 0;
        const double ts = best_of(reps, [&] {
            CheckCounter c;
            edges_s = build_dependency_graph(inst.start, inst.goal, inst, c).edge_count();
        });
        const double tp = best_of(reps, [&] {
            CheckCounter c;
            edges_p = build_dependency_graph_parallel(inst.start, inst.goal, inst, c).edge_count();
        });
        if (edges_s != edges_p) {
            std::fprintf(stderr, "edge count mismatch at n=%zu\n", n);
            return 1;
        }
        std::printf("%-22s %6zu %12.6f %12.6f %8.2f\n", "dependency graph", n, ts, tp, ts / tp);
    }

    BenchSpec spec;
    spec.sizes = {20, 40};
    spec.densities = {0.3, 0.4};
    spec.trials = trials;
    spec.time_limit = 60;
    spec.seed = 1;
    const double ts = best_of(1, [&] { run_bench_serial(spec); });
    const double tp = best_of(1, [&] { run_bench(spec, bench_workers()); });
    std::printf("%-22s %6s %12.6f %12.6f %8.2f\n", "bench dispatch", "20,40", ts, tp, ts / tp);
    return 0;
}
