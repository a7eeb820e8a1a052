#include "bzap/affine_projection.hpp"

#include "bzap/errors.hpp"

#include <Eigen/SVD>

#include <sstream>

namespace bzap {

namespace {

// SVD-based pseudoinverse with a hard full-rank requirement.
Matrix checked_pinv(const Matrix& M, double rank_tol, const char* what) {
    if (!(rank_tol > 0.0)) throw ParameterError("rank_tol must be positive");
    if (M.size() == 0) return Matrix::Zero(M.cols(), M.rows());

    Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& s = svd.singularValues();
    const double smax = s(0);
    const double smin = s(s.size() - 1);
    if (!(smax > 0.0) || smin <= rank_tol * smax) {
        std::ostringstream msg;
        msg << what << " is rank deficient: smallest singular value " << smin
            << " <= " << rank_tol << " * largest " << smax << " (" << M.rows() << "x"
            << M.cols() << ")";
        throw RankError(msg.str());
    }
    return svd.matrixV() * s.cwiseInverse().asDiagonal() * svd.matrixU().transpose();
}

} // namespace

SensingSystem::SensingSystem(Matrix A, Vector y, double rank_tol)
    : A_(std::move(A)), y_(std::move(y)), rank_tol_(rank_tol) {
    if (A_.rows() < 1 || A_.cols() < 1) throw DimensionError("measurement matrix is empty");
    if (y_.size() != A_.rows()) {
        std::ostringstream msg;
        msg << "measurement length " << y_.size() << " does not match " << A_.rows()
            << " rows of A";
        throw DimensionError(msg.str());
    }
    A_pinv_ = checked_pinv(A_, rank_tol, "measurement matrix");
    P_ = Matrix::Identity(A_.cols(), A_.cols()) - A_pinv_ * A_;
    Q_ = A_pinv_ * y_;
}

SensingSystem SensingSystem::with_measurement(Vector y) const {
    if (y.size() != A_.rows()) throw DimensionError("measurement length does not match A");
    SensingSystem out;
    out.A_ = A_;
    out.A_pinv_ = A_pinv_;
    out.P_ = P_;
    out.rank_tol_ = rank_tol_;
    out.Q_ = A_pinv_ * y;
    out.y_ = std::move(y);
    return out;
}

Vector project(const SensingSystem& sys, const Vector& z) {
    if (z.size() != sys.cols()) {
        std::ostringstream msg;
        msg << "cannot project vector of length " << z.size() << " with n=" << sys.cols();
        throw DimensionError(msg.str());
    }
    return sys.P() * z + sys.Q();
}

double feasibility_residual(const SensingSystem& sys, const Vector& x) {
    return (sys.A() * x - sys.y()).norm();
}

Matrix submatrix_cols(const Matrix& A, const BlockSupport& T) {
    if (A.cols() != T.structure().total_len()) {
        throw DimensionError("support structure does not match matrix column count");
    }
    const Index D = T.structure().block_len();
    Matrix out(A.rows(), static_cast<Index>(T.size()) * D);
    Index col = 0;
    for (Index k : T.indices()) {
        out.middleCols(col, D) = A.middleCols(T.structure().offset(k), D);
        col += D;
    }
    return out;
}

Matrix pinv_tall(const Matrix& B, double rank_tol) {
    if (B.rows() < B.cols()) {
        throw DimensionError("pinv_tall needs at least as many rows as columns");
    }
    return checked_pinv(B, rank_tol, "column block");
}

Matrix pinv(const Matrix& M, double rank_tol) {
    return checked_pinv(M, rank_tol, "matrix");
}

double op_norm(const Matrix& M) {
    if (M.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(M);
    return svd.singularValues()(0);
}

} // namespace bzap
