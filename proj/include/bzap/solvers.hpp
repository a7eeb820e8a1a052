#pragma once

#include "bzap/affine_projection.hpp"
#include "bzap/block_model.hpp"
#include "bzap/penalty.hpp"

#include <iosfwd>
#include <string_view>
#include <vector>

namespace bzap {

enum class PenaltyKind { smoothed_l20, l21 };

/**
 * Step-size control for the attraction/projection iteration.
 *
 * kappa0 is the initial step. Every time the monitored cost increases the
 * step is multiplied by eta. Once c1 reductions have been applied, the next
 * increase ends the run. The run also ends after c2 accepted iterations.
 * Defaults are the 40x100, D=4 experiment settings.
 */
struct SolverConfig {
    double kappa0 = 1.0;
    double alpha = 1.0;
    double eta = 0.1;
    int c1 = 4;
    int c2 = 1200;
    PenaltyKind penalty_kind = PenaltyKind::smoothed_l20;
    /// Keep a per-iteration TraceRow log (costs one extra A*x per step).
    bool record_trace = false;

    void validate() const;
};

enum class StopReason { reductions_exhausted, iteration_cap };

std::string_view to_string(StopReason reason);

struct TraceRow {
    int t;
    double kappa;
    double cost;
    double feasibility_residual;
};

struct SolverTrace {
    int iterations = 0;
    int step_reductions = 0;
    /// Monitored cost of x(0), x(1), ..., one entry per accepted iterate.
    std::vector<double> cost_history;
    /// Iteration index t at which each reduction happened.
    std::vector<int> reduction_iterations;
    double final_cost = 0.0;
    double final_kappa = 0.0;
    StopReason stop_reason = StopReason::iteration_cap;
    /// Filled only with SolverConfig::record_trace.
    std::vector<TraceRow> rows;
};

struct SolveResult {
    BlockSignal estimate;
    SolverTrace trace;
};

/// CSV dump of the per-iteration rows: t,kappa,cost,feasibility_residual.
void write_trace_csv(std::ostream& out, const SolverTrace& trace);

/**
 * Block zero-point attracting projection.
 *
 * Starts from x(0) = A^+ y and alternates
 *   x~(t+1) = x(t) - kappa * grad_J(x(t))
 *   x(t+1)  = P x~(t+1) + Q
 * with the step control described on SolverConfig. Every iterate lies on
 * {x : Ax = y} up to rounding.
 */
SolveResult bzap_solve(const SensingSystem& sys, const BlockStructure& structure,
                       const SolverConfig& cfg);

/// Scalar variant: bzap_solve with D = 1.
SolveResult zap_solve(const SensingSystem& sys, const SolverConfig& cfg);

/// Same loop as bzap_solve, attracting with grad_l21 and monitoring ||x||_{2,1}.
SolveResult l21_solve(const SensingSystem& sys, const BlockStructure& structure,
                      const SolverConfig& cfg);

/// Dispatches on cfg.penalty_kind.
SolveResult attract_project_solve(const SensingSystem& sys, const BlockStructure& structure,
                                  const SolverConfig& cfg);

/**
 * Block orthogonal matching pursuit with exactly K greedy selections.
 *
 * Each round picks the unselected block maximizing ||A_k^T r|| (lowest index
 * on ties), refits least squares on the selected blocks and updates the
 * residual. Stops early, returning the current fit, once ||r|| <= 1e-12.
 */
BlockSignal bomp_solve(const SensingSystem& sys, const BlockStructure& structure, Index K);

/// Least squares restricted to a known support: x_T = A_T^+ y, zero elsewhere.
BlockSignal oracle_solve(const SensingSystem& sys, const BlockSupport& T);

} // namespace bzap
