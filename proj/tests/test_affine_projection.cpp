#include "bzap/affine_projection.hpp"
#include "bzap/errors.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace bzap;

TEST_CASE("identity measurement") {
    Vector y(3);
    y << 1.5, -2, 0.25;
    const SensingSystem sys(Matrix::Identity(3, 3), y);
    CHECK(sys.A_pinv().isApprox(Matrix::Identity(3, 3), 1e-15));
    CHECK(sys.P().isZero(1e-15));
    CHECK(sys.Q().isApprox(y, 1e-15));
}

TEST_CASE("single-row hand example") {
    // A = [1 0]: A^T (A A^T)^-1 = [1; 0], P = diag(0, 1), Q = (1, 0)
    Matrix A(1, 2);
    A << 1, 0;
    Vector y(1);
    y << 1;
    const SensingSystem sys(A, y);
    Matrix pinv_expected(2, 1);
    pinv_expected << 1, 0;
    Matrix P_expected(2, 2);
    P_expected << 0, 0, 0, 1;
    CHECK((sys.A_pinv() - pinv_expected).norm() < 1e-15);
    CHECK((sys.P() - P_expected).norm() < 1e-15);
    CHECK(sys.Q()(0) == doctest::Approx(1.0));
    CHECK(sys.Q()(1) == doctest::Approx(0.0));

    Vector z(2);
    z << 5, 7;
    const Vector p = project(sys, z);
    CHECK(p(0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p(1) == doctest::Approx(7.0).epsilon(1e-15));
}

TEST_CASE("construction errors") {
    Matrix A = Matrix::Zero(2, 4);
    A(0, 0) = 1;
    A(1, 0) = 2;   // second row parallel to the first
    CHECK_THROWS_AS(SensingSystem(A, Vector::Zero(2)), RankError);
    CHECK_THROWS_AS(SensingSystem(Matrix::Identity(3, 3), Vector::Zero(2)), DimensionError);
    CHECK_THROWS_AS(project(SensingSystem(Matrix::Identity(3, 3), Vector::Zero(3)), Vector::Zero(4)),
                    DimensionError);
    try {
        SensingSystem bad(A, Vector::Zero(2));
    } catch (const RankError& e) {
        CHECK(std::string(e.what()).find("rank deficient") != std::string::npos);
    }
}

TEST_CASE("Gaussian 40x100 system properties") {
    std::mt19937_64 rng(42);
    const Matrix A = testing::random_matrix(rng, 40, 100);
    const Vector y = testing::random_vector(rng, 40);
    const SensingSystem sys(A, y);

    CHECK((A * sys.A_pinv() - Matrix::Identity(40, 40)).norm() <= 1e-10);
    CHECK((sys.P() - sys.P().transpose()).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK((sys.P() * sys.P() - sys.P()).cwiseAbs().maxCoeff() <= 1e-10);

    // normal-equations route as an independent check of the SVD pseudoinverse
    const Matrix normal_pinv = A.transpose() * (A * A.transpose()).inverse();
    CHECK((normal_pinv - sys.A_pinv()).cwiseAbs().maxCoeff() <= 1e-8);

    for (int trial = 0; trial < 200; ++trial) {
        const Vector z = testing::random_vector(rng, 100, 3.0);
        const Vector p = project(sys, z);
        CHECK((A * p - y).norm() <= 1e-10 * (1.0 + y.norm()));
        CHECK((project(sys, p) - p).norm() <= 1e-10);
    }

    // a point already in the solution space is fixed
    const Vector x0 = sys.Q() + sys.P() * testing::random_vector(rng, 100);
    CHECK((project(sys, x0) - x0).norm() <= 1e-10 * x0.norm());
}

TEST_CASE("with_measurement reuses the operator") {
    std::mt19937_64 rng(7);
    const Matrix A = testing::random_matrix(rng, 5, 9);
    const SensingSystem sys(A, Vector::Zero(5));
    const Vector y = testing::random_vector(rng, 5);
    const SensingSystem other = sys.with_measurement(y);
    const SensingSystem fresh(A, y);
    CHECK(other.Q() == fresh.Q());
    CHECK(other.P() == fresh.P());
    CHECK(other.y() == y);
}

TEST_CASE("submatrix_cols") {
    Matrix A(2, 4);
    A << 1, 2, 3, 4, 5, 6, 7, 8;
    const BlockStructure s(2, 2);
    CHECK(submatrix_cols(A, BlockSupport::full(s)) == A);
    const Matrix sub = submatrix_cols(A, BlockSupport({2}, s));
    Matrix expected(2, 2);
    expected << 3, 4, 7, 8;
    CHECK(sub == expected);
    CHECK(submatrix_cols(A, BlockSupport(s)).cols() == 0);
    CHECK_THROWS_AS(submatrix_cols(A, BlockSupport(BlockStructure(3, 2))), DimensionError);
}

TEST_CASE("pinv_tall") {
    CHECK(pinv_tall(Matrix::Identity(4, 4)).isApprox(Matrix::Identity(4, 4), 1e-15));
    Matrix B(2, 1);
    B << 1, 1;
    const Matrix Bp = pinv_tall(B);
    CHECK(Bp(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(Bp(0, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(pinv_tall(Matrix::Zero(1, 2)), DimensionError);
    Matrix deficient(3, 2);
    deficient << 1, 2, 2, 4, 3, 6;
    CHECK_THROWS_AS(pinv_tall(deficient), RankError);

    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix T = testing::random_matrix(rng, 40, 16);
        CHECK((pinv_tall(T) * T - Matrix::Identity(16, 16)).norm() <= 1e-10);
    }
}

TEST_CASE("sub-block pseudoinverse is a left inverse for small supports") {
    std::mt19937_64 rng(13);
    const BlockStructure s(25, 4);
    const Matrix A = testing::random_matrix(rng, 40, 100);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Index> idx;
        while (idx.size() < 8) {
            const Index k = 1 + static_cast<Index>(rng() % 25);
            if (std::find(idx.begin(), idx.end(), k) == idx.end()) idx.push_back(k);
        }
        const Matrix A_T = submatrix_cols(A, BlockSupport(idx, s));
        CHECK((pinv_tall(A_T) * A_T - Matrix::Identity(32, 32)).norm() <= 1e-9);
    }
}

// Power iteration on M^T M, independent of the SVD route.
static double power_iteration_norm(const Matrix& M, std::mt19937_64& rng) {
    Vector u = testing::random_vector(rng, M.cols());
    u.normalize();
    double sigma = 0.0;
    for (int it = 0; it < 2000; ++it) {
        Vector w = M.transpose() * (M * u);
        const double nw = w.norm();
        if (nw == 0.0) return 0.0;
        u = w / nw;
        sigma = std::sqrt(nw);
    }
    return sigma;
}

TEST_CASE("op_norm") {
    CHECK(op_norm(Matrix::Zero(3, 4)) == 0.0);
    CHECK(op_norm(Matrix(0, 0)) == 0.0);
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 3;
    d(1, 1) = 1;
    CHECK(op_norm(d) == doctest::Approx(3.0).epsilon(1e-14));

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix M = testing::random_matrix(rng, 12, 30);
        const double sigma = op_norm(M);
        double sampled = 0.0;
        for (int k = 0; k < 1000; ++k) {
            Vector u = testing::random_vector(rng, 30);
            u.normalize();
            sampled = std::max(sampled, (M * u).norm());
        }
        CHECK(sampled <= sigma * (1 + 1e-12));
        CHECK(power_iteration_norm(M, rng) == doctest::Approx(sigma).epsilon(0.02));
    }
}
