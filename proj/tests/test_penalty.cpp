#include "bzap/errors.hpp"
#include "bzap/penalty.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>

using namespace bzap;

namespace {

// Central differences of a scalar cost in every coordinate.
Vector central_difference(const std::function<double(const BlockSignal&)>& cost,
                          const BlockSignal& x, double h) {
    Vector g(x.values().size());
    for (Index i = 0; i < g.size(); ++i) {
        Vector plus = x.values(), minus = x.values();
        plus(i) += h;
        minus(i) -= h;
        g(i) = (cost(BlockSignal(plus, x.structure())) - cost(BlockSignal(minus, x.structure()))) /
               (2 * h);
    }
    return g;
}

// Random blocks whose norms sit at least `margin` away from 0 and from 1/alpha.
BlockSignal kink_free_signal(std::mt19937_64& rng, const BlockStructure& s, double alpha,
                             double margin) {
    std::uniform_real_distribution<double> inner(margin, 1.0 / alpha - margin);
    std::uniform_real_distribution<double> outer(1.0 / alpha + margin, 3.0 / alpha);
    Vector v(s.total_len());
    for (Index k = 1; k <= s.num_blocks(); ++k) {
        Vector dir = testing::random_vector(rng, s.block_len());
        dir.normalize();
        const double r = (rng() & 1) ? inner(rng) : outer(rng);
        v.segment(s.offset(k), s.block_len()) = r * dir;
    }
    return BlockSignal(v, s);
}

} // namespace

TEST_CASE("f_alpha values") {
    CHECK(f_alpha(0.0, PenaltyParams(1)) == 0.0);
    CHECK(f_alpha(1.0, PenaltyParams(1)) == 1.0);
    CHECK(f_alpha(0.25, PenaltyParams(2)) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(f_alpha(5.0, PenaltyParams(1)) == 1.0);
    CHECK(f_alpha(-0.25, PenaltyParams(2)) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK_THROWS_AS(PenaltyParams(0.0), ParameterError);
    CHECK_THROWS_AS(PenaltyParams(-1.0), ParameterError);
}

TEST_CASE("f_alpha is exactly 1 at the boundary and stays in [0, 1]") {
    for (double alpha : {0.1, 0.3, 1.0, 2.0, 3.0, 7.0, 10.0, 1.0 / 3.0}) {
        const PenaltyParams p(alpha);
        CHECK(std::abs(f_alpha(1.0 / alpha, p) - 1.0) == 0.0);
    }
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> w(-10, 10), a(0.05, 20);
    for (int i = 0; i < 2000; ++i) {
        const double v = f_alpha(w(rng), PenaltyParams(a(rng)));
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("cost_J examples") {
    CHECK(cost_J(BlockSignal::zeros(BlockStructure(5, 4)), PenaltyParams(1)) == 0.0);

    // N=2, D=2, alpha=2, x=(0.1, 0.2, 0, 0): r = sqrt(0.05), 4r - 4r^2 = 0.694427191
    Vector v(4);
    v << 0.1, 0.2, 0, 0;
    CHECK(cost_J(BlockSignal(v, BlockStructure(2, 2)), PenaltyParams(2)) ==
          doctest::Approx(0.694427191).epsilon(1e-9));

    // Rademacher blocks with D=4 have norm 2 > 1/alpha, so each counts exactly 1
    const BlockStructure s(25, 4);
    Vector x = Vector::Zero(100);
    for (Index k : {3, 7, 20}) x.segment(s.offset(k), 4) << 1, -1, -1, 1;
    CHECK(cost_J(BlockSignal(x, s), PenaltyParams(1)) == 3.0);
}

TEST_CASE("cost_J bounds and the l_{2,1} sandwich") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 300; ++trial) {
        const double alpha = std::uniform_real_distribution<double>(0.2, 5.0)(rng);
        const BlockStructure s(1 + static_cast<Index>(rng() % 20), 1 + static_cast<Index>(rng() % 4));
        const PenaltyParams p(alpha);
        const BlockSignal x(testing::random_vector(rng, s.total_len(), 2.0 / alpha), s);
        const double J = cost_J(x, p);
        CHECK(J >= 0.0);
        CHECK(J <= static_cast<double>(s.num_blocks()));

        // alpha ||x_S||_{2,1} <= sum_{k in S} F(||x_k||) <= 2 alpha ||x_S||_{2,1}, S = small blocks
        double small_l21 = 0.0, small_J = 0.0;
        for (Index k = 1; k <= s.num_blocks(); ++k) {
            const double r = x.block(k).norm();
            if (r <= 1.0 / alpha) {
                small_l21 += r;
                small_J += f_alpha(r, p);
            }
        }
        CHECK(small_J <= 2 * alpha * small_l21 * (1 + 1e-12));
        CHECK(small_J >= alpha * small_l21 * (1 - 1e-12));

        // saturated signal: J equals the l_{2,0} count
        Vector big = x.values();
        for (Index k = 1; k <= s.num_blocks(); ++k) {
            auto blk = big.segment(s.offset(k), s.block_len());
            if (rng() % 2 == 0) {
                blk.setZero();
            } else if (blk.norm() > 0) {
                blk *= (1.0 / alpha + 0.5) / blk.norm();
            }
        }
        const BlockSignal xs(big, s);
        CHECK(cost_J(xs, p) == lpq_norm(xs, 2, 0));
    }
}

TEST_CASE("grad_J examples") {
    CHECK(grad_J(BlockSignal::zeros(BlockStructure(4, 2)), PenaltyParams(1)).isZero(0.0));

    Vector v(2);
    v << 0.5, 0;
    const Vector g = grad_J(BlockSignal(v, BlockStructure(1, 2)), PenaltyParams(1));
    CHECK(g(0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g(1) == 0.0);

    Vector w(4);
    w << 1.2, 1.6, 0, 0;   // norm 2 > 1/alpha = 1
    CHECK(grad_J(BlockSignal(w, BlockStructure(1, 4)), PenaltyParams(1)).isZero(0.0));

    Vector edge(2);
    edge << 0.6, 0.8;      // norm exactly 1/alpha
    CHECK(grad_J(BlockSignal(edge, BlockStructure(1, 2)), PenaltyParams(1)).isZero(0.0));
}

TEST_CASE("grad_J matches central finite differences away from kinks") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        const double alpha = std::uniform_real_distribution<double>(0.5, 2.0)(rng);
        const BlockStructure s(1 + static_cast<Index>(rng() % 10), 1 + static_cast<Index>(rng() % 4));
        const PenaltyParams p(alpha);
        const BlockSignal x = kink_free_signal(rng, s, alpha, 1e-3);
        const Vector g = grad_J(x, p);
        const Vector fd = central_difference([&](const BlockSignal& z) { return cost_J(z, p); }, x, 1e-7);
        CHECK((g - fd).norm() <= 1e-6 * std::max(1.0, g.norm()));
    }
}

TEST_CASE("grad_l21") {
    CHECK(grad_l21(BlockSignal::zeros(BlockStructure(3, 2))).isZero(0.0));
    Vector v(2);
    v << 3, 4;
    const Vector g = grad_l21(BlockSignal(v, BlockStructure(1, 2)));
    CHECK(g(0) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(g(1) == doctest::Approx(0.8).epsilon(1e-15));

    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        const BlockStructure s(1 + static_cast<Index>(rng() % 10), 1 + static_cast<Index>(rng() % 4));
        const BlockSignal x = kink_free_signal(rng, s, 1.0, 1e-3);
        const Vector g = grad_l21(x);
        const Vector fd = central_difference([](const BlockSignal& z) { return cost_l21(z); }, x, 1e-7);
        CHECK((g - fd).norm() <= 1e-6 * std::max(1.0, g.norm()));

        const double c = std::uniform_real_distribution<double>(0.1, 10)(rng);
        CHECK((grad_l21(BlockSignal(c * x.values(), s)) - g).norm() <= 1e-12 * g.norm());
    }
}
