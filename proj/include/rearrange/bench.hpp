#pragma once
/**
 * @file
 * @brief Benchmark harness: generates instances per data point, solves them
 *        with every configuration and aggregates success rate, time, plan
 *        length and collision checks.
 */

#include "rearrange/model.hpp"
#include "rearrange/planner.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace rearrange {

enum class Family { Random, Lattice, DenseSmall, Files };

Family family_from_string(const std::string &s);
const char *to_string(Family f);

struct BenchSpec {
    Family family = Family::Random;
    ShapeFamily shape = ShapeFamily::Disc;
    std::vector<std::size_t> sizes;
    std::vector<double> densities{0.3};
    std::vector<std::string> configs{"RBM-SP-BST"};
    std::size_t trials = 30;
    double time_limit = 300.0;
    std::uint64_t seed = 0;
    /// Per-solve iteration cap forwarded to SolverConfig (0 = none).
    std::size_t max_iterations = 0;
    Workspace workspace{};
    /// Instance files for Family::Files.
    std::vector<std::filesystem::path> files;

    /// Throws std::invalid_argument on empty axes, zero trials or a non-positive limit.
    void check() const;
};

struct TrialResult {
    std::size_t point = 0; ///< index of the (n, rho, cfg) row
    std::size_t trial = 0;
    std::uint64_t instance_seed = 0;
    std::uint64_t solver_seed = 0;
    bool solved = false;
    std::string error; ///< generation or load failure, empty otherwise
    double time_s = 0.0;
    std::size_t actions = 0;
    std::size_t objects = 0;
    std::uint64_t collision_checks = 0;
};

struct BenchRow {
    std::string family;
    std::size_t n = 0;
    double rho = 0.0;
    std::string cfg;
    double success_rate = 0.0;
    /// Means over solved trials only; NaN when nothing was solved.
    double mean_time_s = 0.0;
    double mean_actions_ratio = 0.0;
    double mean_collision_checks = 0.0;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::vector<TrialResult> trials;
};

/// Seed of the instance solved in `trial` of data point (n, rho index); shared by
/// all configurations so results pair up across solvers.
std::uint64_t instance_seed(const BenchSpec &spec, std::size_t n, std::size_t rho_index, std::size_t trial);

/// Instance used for one trial (generated or loaded).
Instance bench_instance(const BenchSpec &spec, std::size_t n, double rho, std::uint64_t seed, std::size_t trial);

/// Worker count: REARRANGE_WORKERS if set, otherwise the OpenMP default.
int bench_workers();

/// Runs all trials on `workers` threads; results are ordered by (point, trial)
/// regardless of completion order.
BenchReport run_bench(const BenchSpec &spec, int workers);

/// Single-threaded reference runner.
BenchReport run_bench_serial(const BenchSpec &spec);

void write_csv(std::ostream &os, const std::vector<BenchRow> &rows);

/// Everything needed to rerun the benchmark: spec, seeds and per-trial outcomes.
nlohmann::json bench_manifest(const BenchSpec &spec, const BenchReport &report);

} // namespace rearrange
