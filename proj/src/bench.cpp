#include "rearrange/bench.hpp"

#include "rearrange/io.hpp"
#include "rearrange/random.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rearrange {

Family family_from_string(const std::string &s) {
    if (s == "random") return Family::Random;
    if (s == "lattice") return Family::Lattice;
    if (s == "dense-small") return Family::DenseSmall;
    if (s == "files") return Family::Files;
    throw std::invalid_argument("unknown instance family '" + s + "'");
}

const char *to_string(Family f) {
    switch (f) {
    case Family::Random: return "random";
    case Family::Lattice: return "lattice";
    case Family::DenseSmall: return "dense-small";
    case Family::Files: return "files";
    }
    return "?";
}

void BenchSpec::check() const {
    if (trials < 1)
        throw std::invalid_argument("trials must be at least 1");
    if (!(time_limit > 0.0))
        throw std::invalid_argument("time limit must be positive");
    if (configs.empty())
        throw std::invalid_argument("need at least one solver configuration");
    if (family == Family::Files) {
        if (files.empty())
            throw std::invalid_argument("file family needs instance files");
    } else if (sizes.empty() || densities.empty()) {
        throw std::invalid_argument("need at least one object count and density");
    }
    for (const auto &c : configs)
        SolverConfig::parse(c);
}

namespace {

struct Point {
    std::size_t n;
    std::size_t rho_index;
    double rho;
    std::string cfg;
};

std::vector<Point> points(const BenchSpec &spec) {
    std::vector<Point> pts;
    const std::vector<std::size_t> sizes = spec.family == Family::Files ? std::vector<std::size_t>{0} : spec.sizes;
    for (std::size_t n : sizes) {
        // lattice and dense-small instances fix their own density
        std::vector<double> rhos = spec.densities;
        if (spec.family == Family::Files)
            rhos = {0.0};
        else if (spec.family != Family::Random)
            rhos = {bench_instance(spec, n, 0.0, 0, 0).density()};
        for (std::size_t r = 0; r < rhos.size(); ++r)
            for (const auto &cfg : spec.configs)
                pts.push_back({n, r, rhos[r], cfg});
    }
    return pts;
}

// rows x cols grid with rows <= cols as close to square as possible
std::pair<std::size_t, std::size_t> lattice_shape(std::size_t n) {
    std::size_t rows = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    while (rows > 1 && n % rows != 0)
        --rows;
    return {rows, n / rows};
}

TrialResult run_trial(const BenchSpec &spec, const Point &pt, std::size_t point_index, std::size_t trial) {
    TrialResult t;
    t.point = point_index;
    t.trial = trial;
    t.instance_seed = instance_seed(spec, pt.n, pt.rho_index, trial);
    t.solver_seed = mix_seed(t.instance_seed, 0x5eed);
    try {
        const Instance inst = bench_instance(spec, pt.n, pt.rho, t.instance_seed, trial);
        SolverConfig cfg = SolverConfig::parse(pt.cfg);
        cfg.max_time = spec.time_limit;
        cfg.seed = t.solver_seed;
        cfg.max_iterations = spec.max_iterations;
        const SolveOutcome out = solve(inst, cfg);
        t.objects = inst.size();
        t.solved = out.solved();
        t.time_s = out.stats.wall_time_s;
        t.actions = out.stats.actions;
        t.collision_checks = out.stats.collision_checks;
    } catch (const std::exception &e) {
        t.error = e.what();
    }
    return t;
}

std::vector<BenchRow> aggregate(const BenchSpec &spec, const std::vector<Point> &pts,
                                const std::vector<TrialResult> &trials) {
    std::vector<BenchRow> rows;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t p = 0; p < pts.size(); ++p) {
        BenchRow row{to_string(spec.family), pts[p].n, pts[p].rho, pts[p].cfg, 0.0, nan, nan, nan};
        std::size_t solved = 0;
        double time = 0.0, ratio = 0.0, checks = 0.0;
        for (const auto &t : trials) {
            if (t.point != p || !t.solved)
                continue;
            ++solved;
            time += t.time_s;
            ratio += t.objects ? static_cast<double>(t.actions) / static_cast<double>(t.objects) : 0.0;
            checks += static_cast<double>(t.collision_checks);
        }
        row.success_rate = static_cast<double>(solved) / static_cast<double>(spec.trials);
        if (solved > 0) {
            row.mean_time_s = time / static_cast<double>(solved);
            row.mean_actions_ratio = ratio / static_cast<double>(solved);
            row.mean_collision_checks = checks / static_cast<double>(solved);
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace

std::uint64_t instance_seed(const BenchSpec &spec, std::size_t n, std::size_t rho_index, std::size_t trial) {
    std::uint64_t s = mix_seed(spec.seed, static_cast<std::uint64_t>(spec.family));
    s = mix_seed(s, n);
    s = mix_seed(s, rho_index);
    return mix_seed(s, trial);
}

Instance bench_instance(const BenchSpec &spec, std::size_t n, double rho, std::uint64_t seed, std::size_t trial) {
    switch (spec.family) {
    case Family::Random: return gen_random(n, rho, spec.shape, spec.workspace, seed);
    case Family::Lattice: {
        const auto [rows, cols] = lattice_shape(n);
        return gen_lattice(rows, cols, seed);
    }
    case Family::DenseSmall: return gen_dense_small(n, seed);
    case Family::Files: return load_instance(spec.files[trial % spec.files.size()]);
    }
    throw std::logic_error("unhandled family");
}

int bench_workers() {
    if (const char *env = std::getenv("REARRANGE_WORKERS")) {
        const int w = std::atoi(env);
        if (w > 0)
            return w;
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

BenchReport run_bench(const BenchSpec &spec, int workers) {
    spec.check();
    const auto pts = points(spec);
    const long long total = static_cast<long long>(pts.size() * spec.trials);
    BenchReport report;
    report.trials.resize(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (long long k = 0; k < total; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        const std::size_t p = uk / spec.trials, t = uk % spec.trials;
        report.trials[uk] = run_trial(spec, pts[p], p, t);
    }
    (void)workers;
    report.rows = aggregate(spec, pts, report.trials);
    return report;
}

BenchReport run_bench_serial(const BenchSpec &spec) {
    spec.check();
    const auto pts = points(spec);
    BenchReport report;
    for (std::size_t p = 0; p < pts.size(); ++p)
        for (std::size_t t = 0; t < spec.trials; ++t)
            report.trials.push_back(run_trial(spec, pts[p], p, t));
    report.rows = aggregate(spec, pts, report.trials);
    return report;
}

void write_csv(std::ostream &os, const std::vector<BenchRow> &rows) {
    os << "family,n,rho,cfg,success,mean_time,mean_actions_ratio,mean_checks\n";
    auto num = [&](double v) -> std::ostream & {
        if (std::isnan(v))
            return os << "nan";
        return os << v;
    };
    for (const auto &r : rows) {
        os << r.family << ',' << r.n << ',' << r.rho << ',' << r.cfg << ',' << r.success_rate << ',';
        num(r.mean_time_s) << ',';
        num(r.mean_actions_ratio) << ',';
        num(r.mean_collision_checks) << '\n';
    }
}

nlohmann::json bench_manifest(const BenchSpec &spec, const BenchReport &report) {
    using nlohmann::json;
    json files = json::array();
    for (const auto &f : spec.files)
        files.push_back(f.string());
    json trials = json::array();
    for (const auto &t : report.trials) {
        json j = {{"point", t.point},
                  {"trial", t.trial},
                  {"instance_seed", t.instance_seed},
                  {"solver_seed", t.solver_seed},
                  {"solved", t.solved},
                  {"time_s", t.time_s},
                  {"actions", t.actions},
                  {"collision_checks", t.collision_checks}};
        if (!t.error.empty())
            j["error"] = t.error;
        trials.push_back(j);
    }
    return {{"family", to_string(spec.family)},
            {"shape", to_string(spec.shape)},
            {"sizes", spec.sizes},
            {"densities", spec.densities},
            {"configs", spec.configs},
            {"trials_per_point", spec.trials},
            {"time_limit", spec.time_limit},
            {"seed", spec.seed},
            {"max_iterations", spec.max_iterations},
            {"workspace", {{"width", spec.workspace.width}, {"height", spec.workspace.height}}},
            {"files", files},
            {"trials", trials}};
}

} // namespace rearrange
