#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace bzap {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

inline constexpr double kDefaultZeroTol = 1e-12;

/**
 * Partition of an n-vector into N contiguous blocks of length D.
 *
 * Block indices are 1-based throughout the public API (block k covers
 * entries [(k-1)*D, k*D) of the underlying 0-based storage).
 */
class BlockStructure {
public:
    BlockStructure(Index num_blocks, Index block_len);

    /// Structure of an n-vector with blocks of length D; D must divide n.
    static BlockStructure from_length(Index total_len, Index block_len);

    Index num_blocks() const noexcept { return num_blocks_; }
    Index block_len() const noexcept { return block_len_; }
    Index total_len() const noexcept { return num_blocks_ * block_len_; }

    /// 0-based storage offset of 1-based block k.
    Index offset(Index k) const;

    bool operator==(const BlockStructure&) const = default;

private:
    Index num_blocks_;
    Index block_len_;
};

/// Real n-vector viewed through a BlockStructure.
class BlockSignal {
public:
    BlockSignal(Vector values, BlockStructure structure);

    static BlockSignal zeros(BlockStructure structure);

    const Vector& values() const noexcept { return values_; }
    const BlockStructure& structure() const noexcept { return structure_; }

    /// Block k (1-based).
    Eigen::VectorBlock<const Vector> block(Index k) const;

private:
    Vector values_;
    BlockStructure structure_;
};

/// Sorted set of 1-based block indices.
class BlockSupport {
public:
    explicit BlockSupport(BlockStructure structure);
    BlockSupport(std::vector<Index> indices, BlockStructure structure);

    /// All N blocks.
    static BlockSupport full(BlockStructure structure);

    const std::vector<Index>& indices() const noexcept { return indices_; }
    const BlockStructure& structure() const noexcept { return structure_; }
    std::size_t size() const noexcept { return indices_.size(); }
    bool empty() const noexcept { return indices_.empty(); }
    bool contains(Index k) const;

    BlockSupport complement() const;

    /// 0-based coordinate positions covered by the selected blocks, in block order.
    std::vector<Index> coordinates() const;

    /// The same coordinates seen as a D=1 support over n scalar "blocks".
    BlockSupport to_scalar() const;

    bool operator==(const BlockSupport&) const = default;

private:
    std::vector<Index> indices_;
    BlockStructure structure_;
};

/// Euclidean norm of every block.
Vector block_norms(const BlockSignal& x);

/**
 * Mixed l_{p,q} norm  sum_k ||x_k||_p^q.
 *
 * q = 0 counts the blocks whose p-norm exceeds zero_tol. Requires p >= 1 and q >= 0.
 */
double lpq_norm(const BlockSignal& x, double p, double q, double zero_tol = kDefaultZeroTol);

BlockSupport support_of(const BlockSignal& x, double zero_tol = kDefaultZeroTol);

/// Copy of x restricted to the blocks in `support` (other blocks zeroed).
BlockSignal restrict_to(const BlockSignal& x, const BlockSupport& support);

} // namespace bzap
