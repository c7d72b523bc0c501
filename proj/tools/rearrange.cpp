// Command-line front end: instance generation, solving, benchmarking and rendering.

#include "rearrange/bench.hpp"
#include "rearrange/depgraph.hpp"
#include "rearrange/io.hpp"
#include "rearrange/planner.hpp"
#include "rearrange/render.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace rearrange;
namespace fs = std::filesystem;

namespace {

void write_text(const fs::path &path, const std::string &text) {
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << text;
}

struct GenArgs {
    std::string family = "random";
    std::string shape = "disc";
    std::size_t n = 10;
    double rho = 0.3;
    std::size_t rows = 0, cols = 0;
    std::size_t count = 1;
    std::uint64_t seed = 0;
    double width = 10.0, height = 10.0;
    std::string out;
};

int cmd_gen(const GenArgs &a) {
    BenchSpec spec;
    spec.family = family_from_string(a.family);
    spec.shape = shape_family_from_string(a.shape);
    spec.workspace = {a.width, a.height};
    if (spec.family == Family::Files)
        throw std::invalid_argument("gen cannot use the file family");
    auto make = [&](std::uint64_t seed) {
        if (spec.family == Family::Lattice && a.rows > 0)
            return gen_lattice(a.rows, a.cols > 0 ? a.cols : a.rows, seed);
        return bench_instance(spec, a.n, a.rho, seed, 0);
    };
    if (a.count == 1) {
        save_instance(a.out, make(a.seed));
        return 0;
    }
    fs::create_directories(a.out);
    for (std::size_t k = 0; k < a.count; ++k) {
        const std::uint64_t seed = mix_seed(a.seed, k);
        save_instance(fs::path(a.out) / ("instance_" + std::to_string(k) + ".json"), make(seed));
    }
    return 0;
}

struct SolveArgs {
    std::string instance;
    std::string cfg = "RBM-SP-BST";
    double time_limit = 300.0;
    std::uint64_t seed = 0;
    std::size_t max_iterations = 0;
    std::string out;
    std::string dot;
};

int cmd_solve(const SolveArgs &a) {
    const Instance inst = load_instance(a.instance);
    if (!a.dot.empty()) {
        CheckCounter counter;
        write_text(a.dot, to_dot(build_dependency_graph(inst.start, inst.goal, inst, counter)));
    }
    SolverConfig cfg = SolverConfig::parse(a.cfg);
    cfg.max_time = a.time_limit;
    cfg.seed = a.seed;
    cfg.max_iterations = a.max_iterations;
    const SolveOutcome out = solve(inst, cfg);
    std::cerr << cfg.name() << ": " << to_string(out.status) << ", " << out.stats.actions << " actions, "
              << out.stats.wall_time_s << " s, " << out.stats.collision_checks << " checks\n";
    if (!out.solved())
        return 2;
    if (!a.out.empty())
        write_json_file(a.out, plan_to_json(out.plan, {out.stats.actions, out.stats.wall_time_s,
                                                       out.stats.collision_checks}));
    return 0;
}

struct BenchArgs {
    std::string family = "random";
    std::string shape = "disc";
    std::vector<std::size_t> n{20, 40, 60, 80, 100};
    std::vector<double> rho{0.3};
    std::vector<std::string> cfg{"RBM-SP-BST"};
    std::vector<std::string> instances;
    std::size_t trials = 30;
    double time_limit = 300.0;
    std::uint64_t seed = 0;
    std::size_t max_iterations = 0;
    std::string out = "bench";
};

int cmd_bench(const BenchArgs &a) {
    BenchSpec spec;
    spec.family = family_from_string(a.family);
    spec.shape = shape_family_from_string(a.shape);
    spec.sizes = a.n;
    spec.densities = a.rho;
    spec.configs = a.cfg;
    spec.trials = a.trials;
    spec.time_limit = a.time_limit;
    spec.seed = a.seed;
    spec.max_iterations = a.max_iterations;
    for (const auto &f : a.instances)
        spec.files.emplace_back(f);
    const BenchReport report = run_bench(spec, bench_workers());
    fs::create_directories(a.out);
    std::ofstream csv(fs::path(a.out) / "bench.csv");
    write_csv(csv, report.rows);
    write_json_file(fs::path(a.out) / "manifest.json", bench_manifest(spec, report));
    write_csv(std::cout, report.rows);
    std::size_t errors = 0;
    for (const auto &t : report.trials)
        if (!t.error.empty()) {
            ++errors;
            std::cerr << "point " << t.point << " trial " << t.trial << ": " << t.error << '\n';
        }
    return errors ? 3 : 0;
}

int cmd_render(const std::string &instance, const std::string &plan, const std::string &out) {
    const Instance inst = load_instance(instance);
    const Plan p = plan.empty() ? Plan{} : plan_from_json(read_json_file(plan));
    write_text(out, render_svg(inst, p));
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Tabletop rearrangement planner with lazy buffer allocation"};
    app.require_subcommand(1);

    GenArgs gen;
    auto *g = app.add_subcommand("gen", "Generate instance files");
    g->add_option("--family", gen.family, "random, lattice or dense-small")->capture_default_str();
    g->add_option("--shape", gen.shape, "disc or rect")->capture_default_str();
    g->add_option("--n", gen.n, "Object count")->capture_default_str();
    g->add_option("--rho", gen.rho, "Density")->capture_default_str();
    g->add_option("--rows", gen.rows, "Lattice rows (default: derived from --n)");
    g->add_option("--cols", gen.cols, "Lattice columns");
    g->add_option("--count", gen.count, "Number of instances; more than one writes a directory")
        ->capture_default_str();
    g->add_option("--seed", gen.seed)->capture_default_str();
    g->add_option("--width", gen.width)->capture_default_str();
    g->add_option("--height", gen.height)->capture_default_str();
    g->add_option("--out", gen.out, "Output file or directory")->required();

    SolveArgs sol;
    auto *s = app.add_subcommand("solve", "Solve an instance file");
    s->add_option("--instance", sol.instance)->required()->check(CLI::ExistingFile);
    s->add_option("--cfg", sol.cfg, "e.g. RBM-SP-BST-PP")->capture_default_str();
    s->add_option("--time-limit", sol.time_limit)->capture_default_str();
    s->add_option("--seed", sol.seed)->capture_default_str();
    s->add_option("--max-iterations", sol.max_iterations, "0 = unlimited")->capture_default_str();
    s->add_option("--out", sol.out, "Plan file");
    s->add_option("--dot", sol.dot, "Write the start-to-goal dependency graph in DOT format");

    BenchArgs ben;
    auto *b = app.add_subcommand("bench", "Run a benchmark sweep");
    b->add_option("--family", ben.family, "random, lattice, dense-small or files")->capture_default_str();
    b->add_option("--shape", ben.shape)->capture_default_str();
    b->add_option("--n", ben.n, "Object counts")->capture_default_str();
    b->add_option("--rho", ben.rho, "Densities")->capture_default_str();
    b->add_option("--cfg", ben.cfg, "Solver configurations")->capture_default_str();
    b->add_option("--instances", ben.instances, "Instance files for --family files");
    b->add_option("--trials", ben.trials)->capture_default_str();
    b->add_option("--time-limit", ben.time_limit)->capture_default_str();
    b->add_option("--seed", ben.seed)->capture_default_str();
    b->add_option("--max-iterations", ben.max_iterations)->capture_default_str();
    b->add_option("--out", ben.out, "Output directory for bench.csv and manifest.json")->capture_default_str();

    std::string r_instance, r_plan, r_out;
    auto *r = app.add_subcommand("render", "Render a plan as SVG frames");
    r->add_option("--instance", r_instance)->required()->check(CLI::ExistingFile);
    r->add_option("--plan", r_plan)->check(CLI::ExistingFile);
    r->add_option("--out", r_out)->required();

    CLI11_PARSE(app, argc, argv);
    try {
        if (*g)
            return cmd_gen(gen);
        if (*s)
            return cmd_solve(sol);
        if (*b)
            return cmd_bench(ben);
        return cmd_render(r_instance, r_plan, r_out);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
