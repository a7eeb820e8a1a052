#include "bzap/penalty.hpp"

#include "bzap/errors.hpp"

#include <cmath>

namespace bzap {

PenaltyParams::PenaltyParams(double a) : alpha(a) {
    if (!(a > 0.0) || !std::isfinite(a)) throw ParameterError("alpha must be positive and finite");
}

double f_alpha(double w, const PenaltyParams& params) {
    // t (2 - t) with t = alpha |w| rounds to exactly 1 at the boundary
    const double t = params.alpha * std::abs(w);
    if (t <= 1.0) return t * (2.0 - t);
    return 1.0;
}

double cost_J(const BlockSignal& x, const PenaltyParams& params) {
    double total = 0.0;
    for (Index k = 1; k <= x.structure().num_blocks(); ++k) {
        total += f_alpha(x.block(k).norm(), params);
    }
    return total;
}

Vector grad_J(const BlockSignal& x, const PenaltyParams& params) {
    const double a = params.alpha;
    const BlockStructure& s = x.structure();
    Vector g = Vector::Zero(s.total_len());
    for (Index k = 1; k <= s.num_blocks(); ++k) {
        const auto blk = x.block(k);
        const double r = blk.norm();
        // the kink at r = 1/alpha belongs to the flat side
        if (r > 0.0 && r * a < 1.0) {
            g.segment(s.offset(k), s.block_len()) = (2.0 * a / r - 2.0 * a * a) * blk;
        }
    }
    return g;
}

double cost_l21(const BlockSignal& x) {
    double total = 0.0;
    for (Index k = 1; k <= x.structure().num_blocks(); ++k) total += x.block(k).norm();
    return total;
}

Vector grad_l21(const BlockSignal& x) {
    const BlockStructure& s = x.structure();
    Vector g = Vector::Zero(s.total_len());
    for (Index k = 1; k <= s.num_blocks(); ++k) {
        const auto blk = x.block(k);
        const double r = blk.norm();
        if (r > 0.0) g.segment(s.offset(k), s.block_len()) = blk / r;
    }
    return g;
}

} // namespace bzap
