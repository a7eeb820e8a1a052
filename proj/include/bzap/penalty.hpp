#pragma once

#include "bzap/block_model.hpp"

namespace bzap {

/**
 * Width parameter of the smoothed l_{2,0} penalty. The penalty is quadratic
 * on |w| <= 1/alpha and saturates at 1 beyond it.
 *
 * A workable choice puts 1/alpha near the square root of the spread of the
 * nonzero amplitudes; nothing here picks alpha automatically.
 */
struct PenaltyParams {
    double alpha = 1.0;

    explicit PenaltyParams(double a = 1.0);
};

/// 2 alpha |w| - alpha^2 w^2 on |w| <= 1/alpha, 1 elsewhere.
double f_alpha(double w, const PenaltyParams& params);

/// Smoothed block-sparsity count  sum_k f_alpha(||x_k||), in [0, N].
double cost_J(const BlockSignal& x, const PenaltyParams& params);

/**
 * Gradient of cost_J.
 *
 * Block k is (2 alpha / ||x_k|| - 2 alpha^2) x_k inside the quadratic zone.
 * Blocks that are exactly zero, or whose norm is >= 1/alpha, get a zero
 * gradient.
 */
Vector grad_J(const BlockSignal& x, const PenaltyParams& params);

/// ||x||_{2,1}.
double cost_l21(const BlockSignal& x);

/// Unit direction x_k / ||x_k|| per block; zero for zero blocks.
Vector grad_l21(const BlockSignal& x);

} // namespace bzap
