#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcc {

/// Fixed-length bit vector over GF(2), packed into 64-bit words.
class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    static BitVec from_indices(std::size_t size, const std::vector<std::size_t>& indices);
    /// Low `size` bits of `mask`. Requires size <= 64.
    static BitVec from_mask(std::size_t size, std::uint64_t mask);
    /// Parses a string of '0'/'1' characters; character i is bit i.
    static BitVec from_string(const std::string& bits);

    std::size_t size() const { return size_; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool value = true) {
        const std::uint64_t m = std::uint64_t{1} << (i & 63);
        if (value) {
            words_[i >> 6] |= m;
        } else {
            words_[i >> 6] &= ~m;
        }
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    BitVec& operator^=(const BitVec& other);
    BitVec& operator&=(const BitVec& other);
    friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
    friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }
    bool operator==(const BitVec& other) const = default;

    std::size_t popcount() const;
    bool any() const;
    bool none() const { return !any(); }
    /// Parity of the overlap with `other`.
    bool dot(const BitVec& other) const;
    /// Index of the lowest set bit, or size() if none.
    std::size_t lowest_set() const;
    std::vector<std::size_t> indices() const;
    /// Calls fn(i) for every set bit i in increasing order, without allocating.
    template <class F>
    void for_each_set(F&& fn) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t word = words_[w];
            while (word != 0) {
                fn(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
                word &= word - 1;
            }
        }
    }

    /// Low 64 bits as an integer. Requires size <= 64.
    std::uint64_t to_mask() const;
    /// '0'/'1' string, bit 0 first.
    std::string to_string() const;

    const std::vector<std::uint64_t>& words() const { return words_; }

  private:
    void check_same_size(const BitVec& other) const {
        if (other.size_ != size_) {
            throw std::invalid_argument("BitVec size mismatch: " + std::to_string(size_) + " vs " +
                                        std::to_string(other.size_));
        }
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace tcc
