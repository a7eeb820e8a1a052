#include "bzap/block_model.hpp"
#include "bzap/errors.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace bzap;

TEST_CASE("block structure rejects lengths the block size does not divide") {
    CHECK_THROWS_AS(BlockStructure::from_length(10, 4), ParameterError);
    CHECK_THROWS_AS(BlockStructure(0, 4), ParameterError);
    CHECK_THROWS_AS(BlockStructure(3, 0), ParameterError);
    const auto s = BlockStructure::from_length(100, 4);
    CHECK(s.num_blocks() == 25);
    CHECK(s.total_len() == 100);
    CHECK(s.offset(1) == 0);
    CHECK(s.offset(25) == 96);
    CHECK_THROWS_AS(s.offset(26), ParameterError);
    CHECK_THROWS_AS(s.offset(0), ParameterError);
}

TEST_CASE("block signal length must match its structure") {
    CHECK_THROWS_AS(BlockSignal(Vector::Zero(5), BlockStructure(2, 2)), DimensionError);
    const BlockSignal x(Vector::LinSpaced(6, 1, 6), BlockStructure(3, 2));
    CHECK(x.block(2)(0) == 3.0);
    CHECK(x.block(2)(1) == 4.0);
}

TEST_CASE("block support validates and complements") {
    const BlockStructure s(5, 2);
    CHECK_THROWS_AS(BlockSupport({1, 1}, s), ParameterError);
    CHECK_THROWS_AS(BlockSupport({6}, s), ParameterError);
    const BlockSupport T({4, 2}, s);
    CHECK(T.indices() == std::vector<Index>{2, 4});
    CHECK(T.complement().indices() == std::vector<Index>{1, 3, 5});
    CHECK(T.coordinates() == std::vector<Index>{2, 3, 6, 7});
    const BlockSupport scalar = T.to_scalar();
    CHECK(scalar.structure().block_len() == 1);
    CHECK(scalar.indices() == std::vector<Index>{3, 4, 7, 8});
}

TEST_CASE("block_norms") {
    SUBCASE("zero input") {
        const auto norms = block_norms(BlockSignal::zeros(BlockStructure(4, 3)));
        CHECK(norms.isZero(0.0));
    }
    SUBCASE("hand example") {
        Vector v(4);
        v << 1, -1, 0, 0;
        const auto norms = block_norms(BlockSignal(v, BlockStructure(2, 2)));
        CHECK(norms(0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
        CHECK(norms(1) == 0.0);
    }
    SUBCASE("Rademacher blocks have norm sqrt(D)") {
        std::mt19937_64 rng(3);
        const BlockStructure s(25, 4);
        Vector v = Vector::Zero(100);
        for (Index k : {2, 9, 17}) {
            for (Index j = 0; j < 4; ++j) v(s.offset(k) + j) = (rng() & 1) ? 1.0 : -1.0;
        }
        const auto norms = block_norms(BlockSignal(v, s));
        int nonzero = 0;
        for (Index k = 0; k < norms.size(); ++k) {
            if (norms(k) != 0.0) {
                ++nonzero;
                CHECK(norms(k) == 2.0);
            }
        }
        CHECK(nonzero == 3);
    }
}

TEST_CASE("lpq_norm") {
    Vector v(4);
    v << 1, -1, 0, 0;
    const BlockSignal x(v, BlockStructure(2, 2));
    CHECK(lpq_norm(x, 2, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(lpq_norm(x, 2, 0) == 1.0);
    CHECK(lpq_norm(x, 1, 1) == 2.0);
    CHECK(lpq_norm(x, 2, 2) == doctest::Approx(2.0));
    CHECK(lpq_norm(BlockSignal::zeros(BlockStructure(3, 3)), 2, 1) == 0.0);
    CHECK(lpq_norm(BlockSignal::zeros(BlockStructure(3, 3)), 2, 0) == 0.0);
    CHECK_THROWS_AS(lpq_norm(x, 0.5, 1), ParameterError);
    CHECK_THROWS_AS(lpq_norm(x, 2, -1), ParameterError);
}

TEST_CASE("lpq_norm properties on random signals") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(0.1, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
        const BlockStructure s(1 + static_cast<Index>(rng() % 12), 1 + static_cast<Index>(rng() % 5));
        Vector v = testing::random_vector(rng, s.total_len());
        // zero a random subset of blocks
        for (Index k = 1; k <= s.num_blocks(); ++k) {
            if (rng() % 3 == 0) v.segment(s.offset(k), s.block_len()).setZero();
        }
        const BlockSignal x(v, s);
        const Vector norms = block_norms(x);
        const double count = static_cast<double>((norms.array() > kDefaultZeroTol).count());
        CHECK(lpq_norm(x, 2, 0) == count);

        const double c = unif(rng);
        const BlockSignal scaled(c * v, s);
        CHECK(lpq_norm(scaled, 2, 1) == doctest::Approx(c * lpq_norm(x, 2, 1)).epsilon(1e-12));
    }
}

TEST_CASE("support_of") {
    const BlockStructure s(2, 2);
    CHECK(support_of(BlockSignal::zeros(s)).empty());
    Vector v(4);
    v << 1, -1, 0, 0;
    CHECK(support_of(BlockSignal(v, s), 1e-12).indices() == std::vector<Index>{1});
    CHECK_THROWS_AS(support_of(BlockSignal(v, s), -1.0), ParameterError);
}

TEST_CASE("support_of recovers a generated support for any tolerance below 1") {
    std::mt19937_64 rng(5);
    const BlockStructure s(25, 4);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Index> chosen;
        Vector v = Vector::Zero(100);
        for (Index k = 1; k <= 25; ++k) {
            if (rng() % 4 == 0) {
                chosen.push_back(k);
                for (Index j = 0; j < 4; ++j) v(s.offset(k) + j) = (rng() & 1) ? 1.0 : -1.0;
            }
        }
        const double tol = std::uniform_real_distribution<double>(0.0, 0.999)(rng);
        CHECK(support_of(BlockSignal(v, s), tol).indices() == chosen);
    }
}

TEST_CASE("restrict_to zeroes blocks outside the support") {
    const BlockStructure s(3, 2);
    const BlockSignal x(Vector::LinSpaced(6, 1, 6), s);
    const BlockSignal r = restrict_to(x, BlockSupport({2}, s));
    Vector expected(6);
    expected << 0, 0, 3, 4, 0, 0;
    CHECK(r.values() == expected);
}
