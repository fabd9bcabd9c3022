#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "tcc/bitvec.h"

namespace tcc {

/// Largest basis size accepted by span enumeration (2^24 elements).
inline constexpr std::size_t kMaxSpanRank = 24;

/// Incremental GF(2) row reduction that remembers, for every reduced row, which
/// inserted generators were combined to produce it.
///
/// Pivots are the lowest set bit of each reduced row; generators are processed in
/// insertion order, so witnesses are reproducible.
class Gf2Eliminator {
  public:
    /// `width` is the vector length; `max_generators` bounds the tag length.
    Gf2Eliminator(std::size_t width, std::size_t max_generators);

    /// Inserts generator number `count()` and returns true iff it increased the rank.
    /// When it did not, `last_dependency()` holds the generator combination summing to zero.
    bool insert(const BitVec& v);

    std::size_t rank() const { return rows_.size(); }
    std::size_t count() const { return inserted_; }
    std::size_t width() const { return width_; }

    /// Generator combination (over inserted generators) summing to `target`, or nullopt.
    std::optional<BitVec> solve(const BitVec& target) const;
    bool in_span(const BitVec& target) const;

    const BitVec& last_dependency() const { return last_dependency_; }
    /// Indices of generators that increased the rank, in insertion order.
    const std::vector<std::size_t>& pivot_generators() const { return pivot_generators_; }

  private:
    std::size_t width_;
    std::size_t max_generators_;
    std::size_t inserted_ = 0;
    std::vector<BitVec> rows_;
    std::vector<BitVec> tags_;
    std::vector<std::size_t> pivots_;
    std::vector<std::size_t> pivot_generators_;
    BitVec last_dependency_;
};

std::size_t gf2_rank(const std::vector<BitVec>& vectors);

/// Result of decomposing a linear map A: GF(2)^cols -> GF(2)^rows given by its columns.
struct LinearMapDecomposition {
    /// Basis of ker A, each a vector over the column index set.
    std::vector<BitVec> kernel;
    /// Basis of im A (a subset of the columns, in order).
    std::vector<BitVec> image;
    /// For each image basis vector, the single-column preimage (column indicator).
    std::vector<BitVec> image_preimages;
};

LinearMapDecomposition decompose_linear_map(const std::vector<BitVec>& columns, std::size_t rows);

/// Solves A y = target for y (over the column index set), or nullopt.
std::optional<BitVec> solve_linear_map(const std::vector<BitVec>& columns, std::size_t rows,
                                       const BitVec& target);

/// Span element with Gray-code index `index`: XOR of basis[i] over set bits of index ^ (index >> 1).
BitVec span_element(const std::vector<BitVec>& basis, std::uint64_t index, std::size_t width);

/// Visits span elements with Gray-code indices in [begin, end), in order. Consecutive
/// elements differ by one basis vector. Throws CapExceeded if basis.size() > kMaxSpanRank.
/// The length of each visited vector is `width`.
void for_each_in_span(const std::vector<BitVec>& basis, std::size_t width,
                      const std::function<void(const BitVec&)>& visit, std::uint64_t begin = 0,
                      std::uint64_t end = UINT64_MAX);

}  // namespace tcc
