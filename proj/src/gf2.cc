#include "tcc/gf2.h"

#include <string>

#include "tcc/errors.h"

namespace tcc {

Gf2Eliminator::Gf2Eliminator(std::size_t width, std::size_t max_generators)
    : width_(width), max_generators_(max_generators), pivots_(width, SIZE_MAX) {}

bool Gf2Eliminator::insert(const BitVec& v) {
    if (v.size() != width_) throw std::invalid_argument("Gf2Eliminator: vector width mismatch");
    if (inserted_ >= max_generators_) throw std::invalid_argument("Gf2Eliminator: too many generators");
    BitVec row = v;
    BitVec tag(max_generators_);
    tag.set(inserted_);
    ++inserted_;
    for (std::size_t p = row.lowest_set(); p < width_; p = row.lowest_set()) {
        const std::size_t r = pivots_[p];
        if (r == SIZE_MAX) {
            pivots_[p] = rows_.size();
            rows_.push_back(std::move(row));
            tags_.push_back(std::move(tag));
            pivot_generators_.push_back(inserted_ - 1);
            return true;
        }
        row ^= rows_[r];
        tag ^= tags_[r];
    }
    last_dependency_ = std::move(tag);
    return false;
}

std::optional<BitVec> Gf2Eliminator::solve(const BitVec& target) const {
    if (target.size() != width_) throw std::invalid_argument("Gf2Eliminator: target width mismatch");
    BitVec row = target;
    BitVec tag(max_generators_);
    for (std::size_t p = row.lowest_set(); p < width_; p = row.lowest_set()) {
        const std::size_t r = pivots_[p];
        if (r == SIZE_MAX) return std::nullopt;
        row ^= rows_[r];
        tag ^= tags_[r];
    }
    return tag;
}

bool Gf2Eliminator::in_span(const BitVec& target) const { return solve(target).has_value(); }

std::size_t gf2_rank(const std::vector<BitVec>& vectors) {
    if (vectors.empty()) return 0;
    Gf2Eliminator elim(vectors.front().size(), vectors.size());
    for (const auto& v : vectors) elim.insert(v);
    return elim.rank();
}

LinearMapDecomposition decompose_linear_map(const std::vector<BitVec>& columns, std::size_t rows) {
    LinearMapDecomposition out;
    const std::size_t cols = columns.size();
    Gf2Eliminator elim(rows, cols);
    for (std::size_t c = 0; c < cols; ++c) {
        if (elim.insert(columns[c])) {
            out.image.push_back(columns[c]);
            BitVec pre(cols);
            pre.set(c);
            out.image_preimages.push_back(std::move(pre));
        } else {
            out.kernel.push_back(elim.last_dependency());
        }
    }
    return out;
}

std::optional<BitVec> solve_linear_map(const std::vector<BitVec>& columns, std::size_t rows,
                                       const BitVec& target) {
    Gf2Eliminator elim(rows, columns.size());
    for (const auto& c : columns) elim.insert(c);
    return elim.solve(target);
}

BitVec span_element(const std::vector<BitVec>& basis, std::uint64_t index, std::size_t width) {
    BitVec v(width);
    const std::uint64_t gray = index ^ (index >> 1);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if ((gray >> i) & 1u) v ^= basis[i];
    }
    return v;
}

void for_each_in_span(const std::vector<BitVec>& basis, std::size_t width,
                      const std::function<void(const BitVec&)>& visit, std::uint64_t begin,
                      std::uint64_t end) {
    if (basis.size() > kMaxSpanRank) {
        throw CapExceeded("span rank " + std::to_string(basis.size()) + " exceeds enumeration cap " +
                          std::to_string(kMaxSpanRank));
    }
    const std::uint64_t total = std::uint64_t{1} << basis.size();
    if (end > total) end = total;
    if (begin >= end) return;
    BitVec v = span_element(basis, begin, width);
    visit(v);
    for (std::uint64_t k = begin + 1; k < end; ++k) {
        v ^= basis[static_cast<std::size_t>(std::countr_zero(k))];
        visit(v);
    }
}

}  // namespace tcc
