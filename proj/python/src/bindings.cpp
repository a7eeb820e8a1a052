#include "bzap/affine_projection.hpp"
#include "bzap/bench.hpp"
#include "bzap/errors.hpp"
#include "bzap/penalty.hpp"
#include "bzap/solvers.hpp"
#include "bzap/stability.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace bzap;

namespace {

SolverConfig make_config(double kappa, double alpha, double eta, int c1, int c2, bool trace) {
    SolverConfig cfg;
    cfg.kappa0 = kappa;
    cfg.alpha = alpha;
    cfg.eta = eta;
    cfg.c1 = c1;
    cfg.c2 = c2;
    cfg.record_trace = trace;
    return cfg;
}

py::dict trace_dict(const SolverTrace& t) {
    py::dict d;
    d["iterations"] = t.iterations;
    d["step_reductions"] = t.step_reductions;
    d["final_cost"] = t.final_cost;
    d["final_kappa"] = t.final_kappa;
    d["stop_reason"] = std::string(to_string(t.stop_reason));
    d["cost_history"] = t.cost_history;
    return d;
}

py::tuple solved(const SolveResult& r) {
    return py::make_tuple(r.estimate.values(), trace_dict(r.trace));
}

BlockStructure structure_for(Index n, Index block_size) {
    return BlockStructure::from_length(n, block_size);
}

} // namespace

#define BZAP_SOLVER_ARGS                                                                        \
    py::arg("kappa") = 1.0, py::arg("alpha") = 1.0, py::arg("eta") = 0.1, py::arg("c1") = 4,    \
        py::arg("c2") = 1200, py::arg("trace") = false

PYBIND11_MODULE(_core, m) {
    m.doc() = "Block-sparse recovery by zero-point attracting projection";

    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<RankError>(m, "RankError", PyExc_ArithmeticError);
    py::register_exception<FormatError>(m, "FormatError", PyExc_IOError);

    m.def(
        "bzap_solve",
        [](const Matrix& A, const Vector& y, Index block_size, double kappa, double alpha,
           double eta, int c1, int c2, bool trace) {
            const SensingSystem sys(A, y);
            return solved(bzap_solve(sys, structure_for(A.cols(), block_size),
                                     make_config(kappa, alpha, eta, c1, c2, trace)));
        },
        py::arg("A"), py::arg("y"), py::arg("block_size"), BZAP_SOLVER_ARGS,
        "Block zero-point attracting projection. Returns (x, info).");

    m.def(
        "zap_solve",
        [](const Matrix& A, const Vector& y, double kappa, double alpha, double eta, int c1,
           int c2, bool trace) {
            const SensingSystem sys(A, y);
            return solved(zap_solve(sys, make_config(kappa, alpha, eta, c1, c2, trace)));
        },
        py::arg("A"), py::arg("y"), BZAP_SOLVER_ARGS, "Scalar zero-point attracting projection.");

    m.def(
        "l21_solve",
        [](const Matrix& A, const Vector& y, Index block_size, double kappa, double alpha,
           double eta, int c1, int c2, bool trace) {
            const SensingSystem sys(A, y);
            return solved(l21_solve(sys, structure_for(A.cols(), block_size),
                                    make_config(kappa, alpha, eta, c1, c2, trace)));
        },
        py::arg("A"), py::arg("y"), py::arg("block_size"), BZAP_SOLVER_ARGS,
        "Projected subgradient descent on the l_{2,1} norm.");

    m.def(
        "bomp_solve",
        [](const Matrix& A, const Vector& y, Index block_size, Index K) {
            return Vector(bomp_solve(SensingSystem(A, y), structure_for(A.cols(), block_size), K)
                              .values());
        },
        py::arg("A"), py::arg("y"), py::arg("block_size"), py::arg("K"));

    m.def(
        "oracle_solve",
        [](const Matrix& A, const Vector& y, Index block_size, const std::vector<Index>& support) {
            const BlockSupport T(support, structure_for(A.cols(), block_size));
            return Vector(oracle_solve(SensingSystem(A, y), T).values());
        },
        py::arg("A"), py::arg("y"), py::arg("block_size"), py::arg("support"),
        "Least squares on the given 1-based blocks.");

    m.def(
        "project",
        [](const Matrix& A, const Vector& y, const Vector& z) {
            return project(SensingSystem(A, y), z);
        },
        py::arg("A"), py::arg("y"), py::arg("z"), "Orthogonal projection onto {x : Ax = y}.");

    m.def("f_alpha", [](double w, double alpha) { return f_alpha(w, PenaltyParams(alpha)); },
          py::arg("w"), py::arg("alpha"));
    m.def(
        "cost_J",
        [](const Vector& x, Index block_size, double alpha) {
            return cost_J(BlockSignal(x, structure_for(x.size(), block_size)), PenaltyParams(alpha));
        },
        py::arg("x"), py::arg("block_size"), py::arg("alpha"));
    m.def(
        "grad_J",
        [](const Vector& x, Index block_size, double alpha) {
            return grad_J(BlockSignal(x, structure_for(x.size(), block_size)), PenaltyParams(alpha));
        },
        py::arg("x"), py::arg("block_size"), py::arg("alpha"));

    m.def(
        "radius_d",
        [](const Vector& xbar, Index block_size, const std::vector<Index>& support, double alpha) {
            const BlockStructure s = structure_for(xbar.size(), block_size);
            return radius_d(BlockSignal(xbar, s), BlockSupport(support, s), alpha);
        },
        py::arg("xbar"), py::arg("block_size"), py::arg("support"), py::arg("alpha"));
    m.def(
        "theorem1_bound",
        [](const Matrix& A, const Vector& v, Index block_size, const std::vector<Index>& support) {
            const SensingSystem sys(A, Vector::Zero(A.rows()));
            return theorem1_bound(sys, BlockSupport(support, structure_for(A.cols(), block_size)),
                                  v);
        },
        py::arg("A"), py::arg("v"), py::arg("block_size"), py::arg("support"),
        "Error bound for local minimizers near a signal supported on `support`.");

    m.def("gen_matrix", &bench::gen_matrix, py::arg("m"), py::arg("n"), py::arg("seed"));
    m.def(
        "gen_signal",
        [](Index n, Index block_size, Index K, std::uint64_t seed) {
            auto g = bench::gen_signal(structure_for(n, block_size), K, seed);
            return py::make_tuple(Vector(g.signal.values()), g.support.indices());
        },
        py::arg("n"), py::arg("block_size"), py::arg("K"), py::arg("seed"),
        "Returns (x, support) with support as 1-based block indices.");
    m.def(
        "gen_noise",
        [](const Matrix& A, const Vector& xbar, double snr_db, std::uint64_t seed) {
            return bench::gen_noise(A, xbar, snr_db, seed).v;
        },
        py::arg("A"), py::arg("xbar"), py::arg("snr_db"), py::arg("seed"));

    m.def(
        "run_fig1",
        [](std::vector<Index> ks, Index trials, const std::string& algorithms,
           std::uint64_t seed, unsigned threads) {
            bench::ExperimentConfig cfg = bench::fig1_defaults();
            cfg.ks = std::move(ks);
            cfg.trials = trials;
            cfg.algorithms = bench::parse_algorithms(algorithms);
            cfg.base_seed = seed;
            cfg.threads = threads;
            std::ostringstream out;
            {
                py::gil_scoped_release release;
                bench::write_fig1_csv(out, bench::run_fig1(cfg));
            }
            return out.str();
        },
        py::arg("ks"), py::arg("trials") = 200, py::arg("algorithms") = "bzap,zap,bomp,l21",
        py::arg("seed") = 20110101u, py::arg("threads") = 1u,
        "Exact-recovery sweep; returns the fig1 CSV text.");
}
