#include "bzap/solvers.hpp"

#include "bzap/errors.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace bzap {

void SolverConfig::validate() const {
    if (!(kappa0 > 0.0) || !std::isfinite(kappa0)) throw ParameterError("kappa0 must be positive");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ParameterError("alpha must be positive");
    if (!(eta > 0.0 && eta < 1.0)) throw ParameterError("eta must lie in (0, 1)");
    if (c1 < 1) throw ParameterError("c1 must be at least 1");
    if (c2 < 1) throw ParameterError("c2 must be at least 1");
}

std::string_view to_string(StopReason reason) {
    switch (reason) {
    case StopReason::reductions_exhausted: return "reductions_exhausted";
    case StopReason::iteration_cap: return "iteration_cap";
    }
    return "unknown";
}

void write_trace_csv(std::ostream& out, const SolverTrace& trace) {
    const auto old_prec = out.precision(17);
    out << "t,kappa,cost,feasibility_residual\n";
    for (const TraceRow& r : trace.rows) {
        out << r.t << ',' << r.kappa << ',' << r.cost << ',' << r.feasibility_residual << '\n';
    }
    out.precision(old_prec);
}

namespace {

template <class Cost, class Grad>
SolveResult attract_project(const SensingSystem& sys, const BlockStructure& structure,
                            const SolverConfig& cfg, Cost&& cost, Grad&& grad) {
    cfg.validate();
    if (structure.total_len() != sys.cols()) {
        std::ostringstream msg;
        msg << "block structure of length " << structure.total_len()
            << " does not match n=" << sys.cols();
        throw DimensionError(msg.str());
    }

    SolverTrace trace;
    BlockSignal x(sys.Q(), structure);
    double current = cost(x);
    double kappa = cfg.kappa0;
    trace.cost_history.push_back(current);
    if (cfg.record_trace) {
        trace.rows.push_back({0, kappa, current, feasibility_residual(sys, x.values())});
    }

    Vector step(sys.cols());
    while (trace.iterations < cfg.c2) {
        step.noalias() = x.values() - kappa * grad(x);
        BlockSignal next(sys.P() * step + sys.Q(), structure);
        const double next_cost = cost(next);
        if (next_cost > current) {
            if (trace.step_reductions >= cfg.c1) {
                trace.stop_reason = StopReason::reductions_exhausted;
                break;
            }
            // the increased iterate is kept; only the step shrinks
            kappa *= cfg.eta;
            ++trace.step_reductions;
            trace.reduction_iterations.push_back(trace.iterations + 1);
        }
        x = std::move(next);
        current = next_cost;
        ++trace.iterations;
        trace.cost_history.push_back(current);
        if (cfg.record_trace) {
            trace.rows.push_back(
                {trace.iterations, kappa, current, feasibility_residual(sys, x.values())});
        }
    }
    if (trace.iterations >= cfg.c2) trace.stop_reason = StopReason::iteration_cap;
    trace.final_cost = current;
    trace.final_kappa = kappa;
    return {std::move(x), std::move(trace)};
}

} // namespace

SolveResult bzap_solve(const SensingSystem& sys, const BlockStructure& structure,
                       const SolverConfig& cfg) {
    const PenaltyParams params(cfg.alpha);
    return attract_project(
        sys, structure, cfg, [&](const BlockSignal& x) { return cost_J(x, params); },
        [&](const BlockSignal& x) { return grad_J(x, params); });
}

SolveResult zap_solve(const SensingSystem& sys, const SolverConfig& cfg) {
    return bzap_solve(sys, BlockStructure(sys.cols(), 1), cfg);
}

SolveResult l21_solve(const SensingSystem& sys, const BlockStructure& structure,
                      const SolverConfig& cfg) {
    return attract_project(
        sys, structure, cfg, [](const BlockSignal& x) { return cost_l21(x); },
        [](const BlockSignal& x) { return grad_l21(x); });
}

SolveResult attract_project_solve(const SensingSystem& sys, const BlockStructure& structure,
                                  const SolverConfig& cfg) {
    switch (cfg.penalty_kind) {
    case PenaltyKind::smoothed_l20: return bzap_solve(sys, structure, cfg);
    case PenaltyKind::l21: return l21_solve(sys, structure, cfg);
    }
    throw ParameterError("unknown penalty kind");
}

BlockSignal bomp_solve(const SensingSystem& sys, const BlockStructure& structure, Index K) {
    const Matrix& A = sys.A();
    const Vector& y = sys.y();
    if (structure.total_len() != A.cols()) {
        throw DimensionError("block structure does not match the column count of A");
    }
    if (K < 0 || K > structure.num_blocks()) {
        throw ParameterError("BOMP sparsity K must lie in 0..N");
    }
    if (K * structure.block_len() > A.rows()) {
        std::ostringstream msg;
        msg << "BOMP needs K*D <= m, got K*D=" << K * structure.block_len() << " m=" << A.rows();
        throw ParameterError(msg.str());
    }

    constexpr double kResidualFloor = 1e-12;
    const Index D = structure.block_len();
    BlockSupport selected(structure);
    Vector residual = y;
    Vector coeffs;
    for (Index round = 0; round < K && residual.norm() > kResidualFloor; ++round) {
        const Vector corr = A.transpose() * residual;
        Index best = 0;
        double best_score = -1.0;
        for (Index k = 1; k <= structure.num_blocks(); ++k) {
            if (selected.contains(k)) continue;
            const double score = corr.segment(structure.offset(k), D).norm();
            if (score > best_score) {
                best = k;
                best_score = score;
            }
        }
        std::vector<Index> idx = selected.indices();
        idx.push_back(best);
        selected = BlockSupport(std::move(idx), structure);

        const Matrix A_S = submatrix_cols(A, selected);
        coeffs = pinv_tall(A_S, sys.rank_tol()) * y;
        residual = y - A_S * coeffs;
    }

    Vector out = Vector::Zero(A.cols());
    if (coeffs.size() > 0) {
        const std::vector<Index> coords = selected.coordinates();
        for (std::size_t i = 0; i < coords.size(); ++i) {
            out(coords[i]) = coeffs(static_cast<Index>(i));
        }
    }
    return BlockSignal(std::move(out), structure);
}

BlockSignal oracle_solve(const SensingSystem& sys, const BlockSupport& T) {
    const BlockStructure& structure = T.structure();
    if (structure.total_len() != sys.cols()) {
        throw DimensionError("support structure does not match the column count of A");
    }
    Vector out = Vector::Zero(sys.cols());
    if (T.empty()) return BlockSignal(std::move(out), structure);

    const Matrix A_T = submatrix_cols(sys.A(), T);
    const Vector coeffs = pinv_tall(A_T, sys.rank_tol()) * sys.y();
    const std::vector<Index> coords = T.coordinates();
    for (std::size_t i = 0; i < coords.size(); ++i) out(coords[i]) = coeffs(static_cast<Index>(i));
    return BlockSignal(std::move(out), structure);
}

} // namespace bzap
