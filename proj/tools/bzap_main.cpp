// bzap: block-sparse recovery experiments and single-instance solves.
//
//   bzap fig1        exact-recovery rate vs block sparsity (noiseless)
//   bzap fig2        MSD vs SNR at fixed block sparsity
//   bzap bound-check BZAP error vs the local-minimizer stability bound
//   bzap solve       recover x from matrix/vector files

#include "bzap/bench.hpp"
#include "bzap/errors.hpp"
#include "bzap/io.hpp"
#include "bzap/solvers.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using namespace bzap;

namespace {

struct CommonOptions {
    Index m = 40;
    Index n = 100;
    Index block_size = 4;
    std::vector<Index> k;
    std::optional<Index> k_min;
    std::optional<Index> k_max;
    std::vector<std::string> snr;
    std::optional<Index> trials;
    std::uint64_t seed = 20110101;
    std::string algorithms;
    std::string out = ".";
    bool paper_scale = false;
    bool trace = false;
    bool fix_matrix = false;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
};

struct SolverOptions {
    double kappa = 1.0;
    double alpha = 1.0;
    double eta = 0.1;
    int c1 = 4;
    int c2 = 1200;
};

void add_solver_options(CLI::App* cmd, SolverOptions& s) {
    cmd->add_option("--kappa", s.kappa, "Initial step length")->capture_default_str();
    cmd->add_option("--alpha", s.alpha, "Penalty width parameter")->capture_default_str();
    cmd->add_option("--eta", s.eta, "Step shrink factor in (0,1)")->capture_default_str();
    cmd->add_option("--c1", s.c1, "Maximum number of step reductions")->capture_default_str();
    cmd->add_option("--c2", s.c2, "Maximum number of iterations")->capture_default_str();
}

SolverConfig to_solver_config(const SolverOptions& s) {
    SolverConfig cfg;
    cfg.kappa0 = s.kappa;
    cfg.alpha = s.alpha;
    cfg.eta = s.eta;
    cfg.c1 = s.c1;
    cfg.c2 = s.c2;
    return cfg;
}

void add_common_options(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--m", o.m, "Number of measurements")->capture_default_str();
    cmd->add_option("--n", o.n, "Signal length")->capture_default_str();
    cmd->add_option("--block-size", o.block_size, "Block length D")->capture_default_str();
    cmd->add_option("--k", o.k, "Block sparsity level(s)");
    cmd->add_option("--k-min", o.k_min, "Smallest K of the sweep");
    cmd->add_option("--k-max", o.k_max, "Largest K of the sweep");
    cmd->add_option("--snr", o.snr, "SNR in dB (repeatable, 'inf' for noiseless)");
    cmd->add_option("--trials", o.trials, "Monte Carlo trials per point");
    cmd->add_option("--seed", o.seed, "Base seed")->capture_default_str();
    cmd->add_option("--algorithms", o.algorithms, "Comma-separated: bzap,zap,bomp,l21,oracle");
    cmd->add_option("--out", o.out, "Output directory")->capture_default_str();
    cmd->add_flag("--paper-scale", o.paper_scale, "Use the full trial counts (1e3 / 1e5)");
    cmd->add_flag("--trace", o.trace, "Also write per-trial records to trials.csv");
    cmd->add_flag("--fix-matrix", o.fix_matrix, "Use one measurement matrix for all trials");
    cmd->add_option("--threads", o.threads, "Worker threads")->capture_default_str();
}

double parse_snr(const std::string& text) {
    if (text == "inf" || text == "+inf" || text == "Inf") return bench::kNoiseless;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size()) throw ParameterError("cannot parse SNR value '" + text + "'");
    return v;
}

bench::ExperimentConfig make_config(bench::ExperimentConfig cfg, const CommonOptions& o,
                                    const SolverOptions& s, Index paper_trials) {
    cfg.m = o.m;
    cfg.n = o.n;
    cfg.block_size = o.block_size;
    if (!o.k.empty()) cfg.ks = o.k;
    if (o.k_min || o.k_max) {
        const Index lo = o.k_min.value_or(cfg.ks.front());
        const Index hi = o.k_max.value_or(cfg.ks.back());
        if (lo > hi) throw ParameterError("--k-min exceeds --k-max");
        cfg.ks.clear();
        for (Index k = lo; k <= hi; ++k) cfg.ks.push_back(k);
    }
    if (!o.snr.empty()) {
        cfg.snr_db.clear();
        for (const auto& s_text : o.snr) cfg.snr_db.push_back(parse_snr(s_text));
    }
    if (o.paper_scale) cfg.trials = paper_trials;
    if (o.trials) cfg.trials = *o.trials;
    cfg.base_seed = o.seed;
    if (!o.algorithms.empty()) cfg.algorithms = bench::parse_algorithms(o.algorithms);
    cfg.fix_matrix = o.fix_matrix;
    cfg.threads = o.threads;
    cfg.solver = to_solver_config(s);
    cfg.validate();
    return cfg;
}

std::ofstream open_output(const fs::path& dir, const std::string& name) {
    fs::create_directories(dir);
    std::ofstream out(dir / name);
    if (!out) throw FormatError("cannot write " + (dir / name).string());
    return out;
}

void write_trial_records(const fs::path& dir, const bench::ExperimentReport& report) {
    auto out = open_output(dir, "trials.csv");
    out.precision(17);
    out << "trial_id,algorithm,K,snr_db,squared_relative_deviation,exact,failed,iterations,"
           "wall_time\n";
    for (const auto& r : report.trials) {
        out << r.trial_id << ',' << bench::to_string(r.algorithm) << ',' << r.K << ','
            << r.snr_db << ',' << r.squared_relative_deviation << ',' << (r.exact ? 1 : 0)
            << ',' << (r.failed ? 1 : 0) << ',' << r.iterations << ',' << r.wall_time << '\n';
    }
}

int run_fig1(const CommonOptions& o, const SolverOptions& s) {
    const auto cfg = make_config(bench::fig1_defaults(), o, s, 1000);
    const auto report = bench::run_fig1(cfg);
    auto out = open_output(o.out, "fig1.csv");
    bench::write_fig1_csv(out, report);
    bench::write_fig1_csv(std::cout, report);
    if (o.trace) write_trial_records(o.out, report);
    return 0;
}

int run_fig2(const CommonOptions& o, const SolverOptions& s) {
    const auto cfg = make_config(bench::fig2_defaults(), o, s, 100000);
    const auto report = bench::run_fig2(cfg);
    auto out = open_output(o.out, "fig2.csv");
    bench::write_fig2_csv(out, report);
    bench::write_fig2_csv(std::cout, report);
    if (o.trace) write_trial_records(o.out, report);
    return 0;
}

int run_bound(const CommonOptions& o, const SolverOptions& s) {
    const auto cfg = make_config(bench::bound_check_defaults(), o, s, 1000);
    const auto report = bench::run_bound_check(cfg);
    auto out = open_output(o.out, "bound.csv");
    bench::write_bound_csv(out, report);
    std::cout << "trials=" << report.rows.size() << " in_ball=" << report.in_ball
              << " violations=" << report.violations << '\n';
    return 0;
}

struct SolveOptions {
    std::string matrix;
    std::string measurement;
    std::string algorithm = "bzap";
    Index block_size = 4;
    Index k = 0;
    std::vector<Index> support;
    std::string out;
    std::string trace;
};

int run_solve(const SolveOptions& o, const SolverOptions& s) {
    Matrix A = io::load_matrix(o.matrix);
    Vector y = io::load_vector(o.measurement);
    const SensingSystem sys(std::move(A), std::move(y));
    const BlockStructure structure = BlockStructure::from_length(sys.cols(), o.block_size);
    SolverConfig cfg = to_solver_config(s);
    cfg.record_trace = !o.trace.empty();

    std::optional<SolverTrace> trace;
    Vector x;
    switch (bench::parse_algorithm(o.algorithm)) {
    case bench::Algorithm::bzap: {
        auto r = bzap_solve(sys, structure, cfg);
        x = r.estimate.values();
        trace = std::move(r.trace);
        break;
    }
    case bench::Algorithm::zap: {
        auto r = zap_solve(sys, cfg);
        x = r.estimate.values();
        trace = std::move(r.trace);
        break;
    }
    case bench::Algorithm::l21: {
        auto r = l21_solve(sys, structure, cfg);
        x = r.estimate.values();
        trace = std::move(r.trace);
        break;
    }
    case bench::Algorithm::bomp:
        if (o.k < 1) throw ParameterError("bomp needs --k");
        x = bomp_solve(sys, structure, o.k).values();
        break;
    case bench::Algorithm::oracle:
        if (o.support.empty()) throw ParameterError("oracle needs --support");
        x = oracle_solve(sys, BlockSupport(o.support, structure)).values();
        break;
    }

    if (o.out.empty()) {
        io::write_vector(std::cout, x);
    } else {
        io::save_vector(o.out, x);
    }
    if (trace && !o.trace.empty()) {
        std::ofstream tout(o.trace);
        if (!tout) throw FormatError("cannot write " + o.trace);
        write_trace_csv(tout, *trace);
        std::cerr << "iterations=" << trace->iterations
                  << " reductions=" << trace->step_reductions
                  << " stop=" << to_string(trace->stop_reason) << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Block-sparse compressed sensing recovery and experiments"};
    app.require_subcommand(1);

    CommonOptions fig1_opts, fig2_opts, bound_opts;
    SolverOptions fig1_solver, fig2_solver, bound_solver, solve_solver;
    SolveOptions solve_opts;

    auto* fig1 = app.add_subcommand("fig1", "Exact-recovery rate vs block sparsity");
    add_common_options(fig1, fig1_opts);
    add_solver_options(fig1, fig1_solver);

    auto* fig2 = app.add_subcommand("fig2", "MSD vs SNR at fixed block sparsity");
    add_common_options(fig2, fig2_opts);
    add_solver_options(fig2, fig2_solver);

    auto* bound = app.add_subcommand("bound-check", "BZAP error vs the stability bound");
    add_common_options(bound, bound_opts);
    add_solver_options(bound, bound_solver);

    auto* solve = app.add_subcommand("solve", "Recover a signal from matrix/vector files");
    solve->add_option("--matrix", solve_opts.matrix, "Matrix file")->required();
    solve->add_option("--measurement,--y", solve_opts.measurement, "Measurement vector file")
        ->required();
    solve->add_option("--algorithm", solve_opts.algorithm, "bzap, zap, l21, bomp or oracle")
        ->capture_default_str();
    solve->add_option("--block-size", solve_opts.block_size, "Block length D")
        ->capture_default_str();
    solve->add_option("--k", solve_opts.k, "Block sparsity (bomp)");
    solve->add_option("--support", solve_opts.support, "1-based support blocks (oracle)")
        ->delimiter(',');
    solve->add_option("--out", solve_opts.out, "Output vector file (default: stdout)");
    solve->add_option("--trace", solve_opts.trace, "Per-iteration trace CSV");
    add_solver_options(solve, solve_solver);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*fig1) return run_fig1(fig1_opts, fig1_solver);
        if (*fig2) return run_fig2(fig2_opts, fig2_solver);
        if (*bound) return run_bound(bound_opts, bound_solver);
        if (*solve) return run_solve(solve_opts, solve_solver);
    } catch (const std::exception& e) {
        std::cerr << "bzap: error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
