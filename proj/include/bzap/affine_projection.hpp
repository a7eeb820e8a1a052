#pragma once

#include "bzap/block_model.hpp"

namespace bzap {

/// Relative rank tolerance: singular values <= rank_tol * sigma_max count as zero.
inline constexpr double kDefaultRankTol = 1e-10;

/**
 * Measurement operator with everything the attraction/projection loop needs
 * precomputed: the pseudoinverse A^+, the null-space projector P = I - A^+ A
 * and the offset Q = A^+ y. The affine solution set {x : Ax = y} is then
 * reached from any z by P z + Q.
 *
 * Immutable after construction.
 */
class SensingSystem {
public:
    /// Throws RankError if A is not of full rank min(m, n) at the given tolerance.
    SensingSystem(Matrix A, Vector y, double rank_tol = kDefaultRankTol);

    const Matrix& A() const noexcept { return A_; }
    const Vector& y() const noexcept { return y_; }
    const Matrix& A_pinv() const noexcept { return A_pinv_; }
    const Matrix& P() const noexcept { return P_; }
    const Vector& Q() const noexcept { return Q_; }
    double rank_tol() const noexcept { return rank_tol_; }

    Index rows() const noexcept { return A_.rows(); }
    Index cols() const noexcept { return A_.cols(); }

    /// Same operator, different measurement. Reuses A^+ and P.
    SensingSystem with_measurement(Vector y) const;

private:
    SensingSystem() = default;

    Matrix A_;
    Vector y_;
    Matrix A_pinv_;
    Matrix P_;
    Vector Q_;
    double rank_tol_ = kDefaultRankTol;
};

inline SensingSystem build_system(Matrix A, Vector y, double rank_tol = kDefaultRankTol) {
    return SensingSystem(std::move(A), std::move(y), rank_tol);
}

/// P z + Q.
Vector project(const SensingSystem& sys, const Vector& z);

/// ||A x - y||.
double feasibility_residual(const SensingSystem& sys, const Vector& x);

/// Columns of A belonging to the blocks in T, block order preserved.
Matrix submatrix_cols(const Matrix& A, const BlockSupport& T);

/// Left pseudoinverse (B^T B)^{-1} B^T of a tall matrix, computed through an SVD.
Matrix pinv_tall(const Matrix& B, double rank_tol = kDefaultRankTol);

/// Moore-Penrose pseudoinverse of a full-rank matrix via SVD.
Matrix pinv(const Matrix& M, double rank_tol = kDefaultRankTol);

/// Largest singular value. Empty matrices have norm 0.
double op_norm(const Matrix& M);

} // namespace bzap
