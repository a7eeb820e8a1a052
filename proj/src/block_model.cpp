#include "bzap/block_model.hpp"

#include "bzap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bzap {

BlockStructure::BlockStructure(Index num_blocks, Index block_len)
    : num_blocks_(num_blocks), block_len_(block_len) {
    if (num_blocks < 1 || block_len < 1) {
        throw ParameterError("block structure needs N >= 1 and D >= 1, got N=" +
                             std::to_string(num_blocks) + " D=" + std::to_string(block_len));
    }
}

BlockStructure BlockStructure::from_length(Index total_len, Index block_len) {
    if (block_len < 1 || total_len < 1 || total_len % block_len != 0) {
        throw ParameterError("block length " + std::to_string(block_len) +
                             " does not divide signal length " + std::to_string(total_len));
    }
    return BlockStructure(total_len / block_len, block_len);
}

Index BlockStructure::offset(Index k) const {
    if (k < 1 || k > num_blocks_) {
        throw ParameterError("block index " + std::to_string(k) + " outside 1.." +
                             std::to_string(num_blocks_));
    }
    return (k - 1) * block_len_;
}

BlockSignal::BlockSignal(Vector values, BlockStructure structure)
    : values_(std::move(values)), structure_(structure) {
    if (values_.size() != structure_.total_len()) {
        throw DimensionError("signal length " + std::to_string(values_.size()) +
                             " does not match block structure length " +
                             std::to_string(structure_.total_len()));
    }
}

BlockSignal BlockSignal::zeros(BlockStructure structure) {
    return BlockSignal(Vector::Zero(structure.total_len()), structure);
}

Eigen::VectorBlock<const Vector> BlockSignal::block(Index k) const {
    return values_.segment(structure_.offset(k), structure_.block_len());
}

BlockSupport::BlockSupport(BlockStructure structure) : structure_(structure) {}

BlockSupport::BlockSupport(std::vector<Index> indices, BlockStructure structure)
    : indices_(std::move(indices)), structure_(structure) {
    std::sort(indices_.begin(), indices_.end());
    if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
        throw ParameterError("block support contains duplicate indices");
    }
    for (Index k : indices_) {
        if (k < 1 || k > structure_.num_blocks()) {
            throw ParameterError("support index " + std::to_string(k) + " outside 1.." +
                                 std::to_string(structure_.num_blocks()));
        }
    }
}

BlockSupport BlockSupport::full(BlockStructure structure) {
    std::vector<Index> all(static_cast<std::size_t>(structure.num_blocks()));
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Index>(i) + 1;
    return BlockSupport(std::move(all), structure);
}

bool BlockSupport::contains(Index k) const {
    return std::binary_search(indices_.begin(), indices_.end(), k);
}

BlockSupport BlockSupport::complement() const {
    std::vector<Index> rest;
    rest.reserve(static_cast<std::size_t>(structure_.num_blocks()) - indices_.size());
    for (Index k = 1; k <= structure_.num_blocks(); ++k) {
        if (!contains(k)) rest.push_back(k);
    }
    return BlockSupport(std::move(rest), structure_);
}

std::vector<Index> BlockSupport::coordinates() const {
    std::vector<Index> coords;
    coords.reserve(indices_.size() * static_cast<std::size_t>(structure_.block_len()));
    for (Index k : indices_) {
        const Index start = structure_.offset(k);
        for (Index j = 0; j < structure_.block_len(); ++j) coords.push_back(start + j);
    }
    return coords;
}

BlockSupport BlockSupport::to_scalar() const {
    std::vector<Index> coords = coordinates();
    for (Index& c : coords) ++c;
    return BlockSupport(std::move(coords), BlockStructure(structure_.total_len(), 1));
}

Vector block_norms(const BlockSignal& x) {
    const BlockStructure& s = x.structure();
    Vector norms(s.num_blocks());
    for (Index k = 1; k <= s.num_blocks(); ++k) norms(k - 1) = x.block(k).norm();
    return norms;
}

double lpq_norm(const BlockSignal& x, double p, double q, double zero_tol) {
    if (!(p >= 1.0) || !(q >= 0.0) || !(zero_tol >= 0.0)) {
        throw ParameterError("l_{p,q} norm needs p >= 1 and q >= 0");
    }
    const BlockStructure& s = x.structure();
    double total = 0.0;
    for (Index k = 1; k <= s.num_blocks(); ++k) {
        const auto blk = x.block(k);
        double inner = 0.0;
        if (p == 2.0) {
            inner = blk.norm();
        } else if (std::isinf(p)) {
            inner = blk.cwiseAbs().maxCoeff();
        } else {
            inner = std::pow(blk.cwiseAbs().array().pow(p).sum(), 1.0 / p);
        }
        if (q == 0.0) {
            total += inner > zero_tol ? 1.0 : 0.0;
        } else {
            total += std::pow(inner, q);
        }
    }
    return total;
}

BlockSupport support_of(const BlockSignal& x, double zero_tol) {
    if (!(zero_tol >= 0.0)) throw ParameterError("zero_tol must be non-negative");
    const Vector norms = block_norms(x);
    std::vector<Index> idx;
    for (Index k = 0; k < norms.size(); ++k) {
        if (norms(k) > zero_tol) idx.push_back(k + 1);
    }
    return BlockSupport(std::move(idx), x.structure());
}

BlockSignal restrict_to(const BlockSignal& x, const BlockSupport& support) {
    if (!(support.structure() == x.structure())) {
        throw DimensionError("support and signal use different block structures");
    }
    Vector out = Vector::Zero(x.values().size());
    for (Index c : support.coordinates()) out(c) = x.values()(c);
    return BlockSignal(std::move(out), x.structure());
}

} // namespace bzap
