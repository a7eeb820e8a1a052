#include "bzap/stability.hpp"

#include "bzap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace bzap {

double radius_d(const BlockSignal& xbar, const BlockSupport& T, double alpha) {
    if (!(alpha > 0.0)) throw ParameterError("alpha must be positive");
    if (!(T.structure() == xbar.structure())) {
        throw DimensionError("support and signal use different block structures");
    }
    if (T.empty()) throw ParameterError("radius d is undefined for an empty support");

    const double inv_alpha = 1.0 / alpha;
    double d = std::numeric_limits<double>::infinity();
    for (Index k : T.indices()) {
        const double r = xbar.block(k).norm();
        if (!(r > inv_alpha)) {
            std::ostringstream msg;
            msg << "alpha condition violated on block " << k << ": ||xbar_k|| = " << r
                << " is not above 1/alpha = " << inv_alpha;
            throw ParameterError(msg.str());
        }
        d = std::min({d, inv_alpha, r - inv_alpha});
    }
    return d;
}

StabilityContext make_stability_context(BlockSignal xbar, BlockSupport T, double alpha, Vector v) {
    const double d = radius_d(xbar, T, alpha);
    return StabilityContext{std::move(xbar), std::move(T), alpha, d, std::move(v)};
}

BoundTerms theorem1_terms(const SensingSystem& sys, const BlockSupport& T, const Vector& v) {
    if (v.size() != sys.rows()) throw DimensionError("noise length does not match m");
    const Matrix A_T_pinv = pinv_tall(submatrix_cols(sys.A(), T), sys.rank_tol());
    const Matrix A_Tc = submatrix_cols(sys.A(), T.complement());

    BoundTerms terms{};
    terms.sqrt_coef = 2.0 * std::sqrt(static_cast<double>(T.structure().num_blocks()));
    terms.cross_op_norm = A_Tc.cols() == 0 ? 0.0 : op_norm(A_T_pinv * A_Tc);
    terms.pinv_noise_norm = (sys.A_pinv() * v).norm();
    terms.oracle_noise_norm = (A_T_pinv * v).norm();
    return terms;
}

double theorem1_bound(const SensingSystem& sys, const BlockSupport& T, const Vector& v) {
    return theorem1_terms(sys, T, v).total();
}

double zap_comparison_bound(const SensingSystem& sys, const BlockSupport& T_scalar,
                            const Vector& v) {
    if (T_scalar.structure().block_len() != 1) {
        throw ParameterError("ZAP comparison bound needs a scalar (D = 1) support");
    }
    return theorem1_bound(sys, T_scalar, v);
}

bool ProofCheckReport::passed() const {
    if (!hypotheses_met) return true;
    return off_support.holds && on_support.holds && triangle.holds && total.holds;
}

ProofCheckReport proof_intermediate_checks(const SensingSystem& sys, const StabilityContext& ctx,
                                           const BlockSignal& x_hat, double abs_tol) {
    if (!(x_hat.structure() == ctx.xbar.structure())) {
        throw DimensionError("estimate and ground truth use different block structures");
    }
    const auto check = [abs_tol](double lhs, double rhs) {
        return InequalityCheck{lhs, rhs, lhs <= rhs + abs_tol};
    };

    ProofCheckReport rep;
    const double tol = 1e-9 * (1.0 + sys.y().norm());
    rep.feasible = feasibility_residual(sys, x_hat.values()) <= tol;

    const BlockSignal dx(x_hat.values() - ctx.xbar.values(), ctx.xbar.structure());
    rep.error = dx.values().norm();
    rep.in_ball = rep.error <= ctx.d;
    rep.hypotheses_met = rep.feasible && rep.in_ball;

    const double dx_T = restrict_to(dx, ctx.T).values().norm();
    const double dx_Tc = restrict_to(dx, ctx.T.complement()).values().norm();
    const BoundTerms terms = theorem1_terms(sys, ctx.T, ctx.v);

    rep.off_support = check(dx_Tc, terms.sqrt_coef * terms.pinv_noise_norm);
    rep.on_support = check(dx_T, terms.oracle_noise_norm + terms.sqrt_coef * terms.cross_op_norm *
                                                               terms.pinv_noise_norm);
    rep.triangle = check(rep.error, dx_T + dx_Tc);
    rep.total = check(rep.error, terms.total());
    return rep;
}

} // namespace bzap
