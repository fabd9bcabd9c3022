#include "tcc/bitvec.h"

namespace tcc {

BitVec BitVec::from_indices(std::size_t size, const std::vector<std::size_t>& indices) {
    BitVec v(size);
    for (std::size_t i : indices) {
        if (i >= size) {
            throw std::out_of_range("BitVec index " + std::to_string(i) + " out of range " +
                                    std::to_string(size));
        }
        v.flip(i);
    }
    return v;
}

BitVec BitVec::from_mask(std::size_t size, std::uint64_t mask) {
    if (size > 64) throw std::invalid_argument("BitVec::from_mask requires size <= 64");
    BitVec v(size);
    if (size > 0) {
        v.words_[0] = size == 64 ? mask : (mask & ((std::uint64_t{1} << size) - 1));
    }
    return v;
}

BitVec BitVec::from_string(const std::string& bits) {
    BitVec v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            v.set(i);
        } else if (bits[i] != '0') {
            throw std::invalid_argument("bit string may only contain '0' and '1'");
        }
    }
    return v;
}

BitVec& BitVec::operator^=(const BitVec& other) {
    check_same_size(other);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
}

BitVec& BitVec::operator&=(const BitVec& other) {
    check_same_size(other);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
    return *this;
}

std::size_t BitVec::popcount() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

bool BitVec::any() const {
    for (auto w : words_) {
        if (w != 0) return true;
    }
    return false;
}

bool BitVec::dot(const BitVec& other) const {
    check_same_size(other);
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
    return std::popcount(acc) & 1;
}

std::size_t BitVec::lowest_set() const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
        if (words_[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
    }
    return size_;
}

std::vector<std::size_t> BitVec::indices() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t word = words_[w];
        while (word != 0) {
            out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
            word &= word - 1;
        }
    }
    return out;
}

std::uint64_t BitVec::to_mask() const {
    if (size_ > 64) throw std::invalid_argument("BitVec::to_mask requires size <= 64");
    return words_.empty() ? 0 : words_[0];
}

std::string BitVec::to_string() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
        if (get(i)) s[i] = '1';
    }
    return s;
}

}  // namespace tcc
