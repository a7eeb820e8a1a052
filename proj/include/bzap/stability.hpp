#pragma once

#include "bzap/affine_projection.hpp"
#include "bzap/block_model.hpp"

namespace bzap {

/**
 * Ground truth and noise of one noisy instance y = A xbar + v, together with
 * the radius d of the neighborhood B(xbar, d) on which the local-minimizer
 * error bound applies.
 */
struct StabilityContext {
    BlockSignal xbar;
    BlockSupport T;
    double alpha;
    double d;
    Vector v;
};

/**
 * d = min over k in T of min(1/alpha, ||xbar_k|| - 1/alpha).
 *
 * Requires 1/alpha < ||xbar_k|| on every block of T; throws ParameterError
 * naming the first block that violates it. An empty T also throws.
 */
double radius_d(const BlockSignal& xbar, const BlockSupport& T, double alpha);

StabilityContext make_stability_context(BlockSignal xbar, BlockSupport T, double alpha, Vector v);

/// The pieces of  2 sqrt(N) (1 + ||A_T^+ A_Tc||) ||A^+ v|| + ||A_T^+ v||.
struct BoundTerms {
    double sqrt_coef;         ///< 2 sqrt(N), N = number of blocks of T's structure
    double cross_op_norm;     ///< ||A_T^+ A_Tc||
    double pinv_noise_norm;   ///< ||A^+ v||
    double oracle_noise_norm; ///< ||A_T^+ v||

    double leading_term() const { return sqrt_coef * (1.0 + cross_op_norm) * pinv_noise_norm; }
    double total() const { return leading_term() + oracle_noise_norm; }
};

/// Bound terms for support T; N is taken from T's structure. A_T must have full column rank.
BoundTerms theorem1_terms(const SensingSystem& sys, const BlockSupport& T, const Vector& v);

double theorem1_bound(const SensingSystem& sys, const BlockSupport& T, const Vector& v);

/// The same bound for the scalar (D = 1) view of the support, with sqrt(n) in place of sqrt(N).
double zap_comparison_bound(const SensingSystem& sys, const BlockSupport& T_scalar, const Vector& v);

struct InequalityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;

    double slack() const { return rhs - lhs; }
};

struct ProofCheckReport {
    bool feasible = false;         ///< x_hat on {Ax = y}
    bool in_ball = false;          ///< ||x_hat - xbar|| <= d
    bool hypotheses_met = false;   ///< feasible && in_ball
    double error = 0.0;            ///< ||x_hat - xbar||
    InequalityCheck off_support;   ///< ||dx_Tc|| <= 2 sqrt(N) ||A^+ v||
    InequalityCheck on_support;    ///< ||dx_T|| <= ||A_T^+ v|| + 2 sqrt(N) ||A_T^+ A_Tc|| ||A^+ v||
    InequalityCheck triangle;      ///< ||dx|| <= ||dx_T|| + ||dx_Tc||
    InequalityCheck total;         ///< ||dx|| <= full bound

    /// True when the hypotheses are unmet (nothing to check) or every inequality holds.
    bool passed() const;
};

/**
 * Evaluates the error decomposition dx = x_hat - xbar against the
 * intermediate and final bounds. An inequality counts as holding when
 * lhs <= rhs + abs_tol; abs_tol absorbs the distance between an iterate and
 * the exact minimizer. Outside the ball the report carries the numbers but
 * hypotheses_met is false.
 */
ProofCheckReport proof_intermediate_checks(const SensingSystem& sys, const StabilityContext& ctx,
                                           const BlockSignal& x_hat, double abs_tol = 0.0);

} // namespace bzap
