#include "tcc/gf2.h"

#include <random>
#include <set>

#include "gtest/gtest.h"
#include "tcc/errors.h"

using namespace tcc;

namespace {

BitVec random_vec(std::mt19937_64& rng, std::size_t n) {
    BitVec v(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rng() & 1) v.set(i);
    }
    return v;
}

// Brute-force rank: size of the span by enumeration of all subsets.
std::size_t brute_rank(const std::vector<BitVec>& vs) {
    std::set<std::string> span;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << vs.size()); ++m) {
        BitVec acc(vs.front().size());
        for (std::size_t i = 0; i < vs.size(); ++i) {
            if ((m >> i) & 1) acc ^= vs[i];
        }
        span.insert(acc.to_string());
    }
    std::size_t r = 0;
    while ((std::size_t{1} << r) < span.size()) ++r;
    return r;
}

}  // namespace

TEST(BitVec, basic_ops) {
    BitVec v = BitVec::from_string("0110");
    EXPECT_EQ(v.popcount(), 2u);
    EXPECT_TRUE(v.get(1));
    EXPECT_EQ(v.lowest_set(), 1u);
    v.flip(1);
    EXPECT_EQ(v.to_string(), "0010");
    EXPECT_EQ(BitVec::from_mask(4, 0b1010).to_string(), "0101");
    EXPECT_TRUE(BitVec::from_string("1100").dot(BitVec::from_string("0100")));
    EXPECT_FALSE(BitVec::from_string("1100").dot(BitVec::from_string("1100")));
    EXPECT_THROW(BitVec(3) ^= BitVec(4), std::invalid_argument);
}

TEST(BitVec, wide_vectors_span_words) {
    BitVec v(130);
    v.set(0);
    v.set(64);
    v.set(129);
    EXPECT_EQ(v.indices(), (std::vector<std::size_t>{0, 64, 129}));
    EXPECT_EQ(v.popcount(), 3u);
}

TEST(Gf2, rank_matches_brute_force_on_random_sets) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 9;
        const std::size_t k = 1 + rng() % 8;
        std::vector<BitVec> vs;
        for (std::size_t i = 0; i < k; ++i) vs.push_back(random_vec(rng, n));
        EXPECT_EQ(gf2_rank(vs), brute_rank(vs));
    }
}

TEST(Gf2, solve_returns_valid_combination) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 12;
        std::vector<BitVec> cols;
        for (int i = 0; i < 6; ++i) cols.push_back(random_vec(rng, n));
        const BitVec target = random_vec(rng, n);
        auto sol = solve_linear_map(cols, n, target);
        if (sol) {
            BitVec acc(n);
            for (std::size_t c : sol->indices()) acc ^= cols[c];
            EXPECT_EQ(acc, target);
        } else {
            // Unsolvable targets must lie outside the span.
            Gf2Eliminator e(n, cols.size() + 1);
            for (const auto& c : cols) e.insert(c);
            EXPECT_TRUE(e.insert(target));
        }
    }
}

TEST(Gf2, kernel_vectors_map_to_zero_and_dimensions_add_up) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t rows = 1 + rng() % 8;
        const std::size_t ncols = 1 + rng() % 10;
        std::vector<BitVec> cols;
        for (std::size_t i = 0; i < ncols; ++i) cols.push_back(random_vec(rng, rows));
        auto dec = decompose_linear_map(cols, rows);
        EXPECT_EQ(dec.kernel.size() + dec.image.size(), ncols);
        for (const auto& k : dec.kernel) {
            BitVec acc(rows);
            for (std::size_t c : k.indices()) acc ^= cols[c];
            EXPECT_TRUE(acc.none());
        }
        EXPECT_EQ(gf2_rank(dec.kernel.empty() ? std::vector<BitVec>{BitVec(ncols)} : dec.kernel),
                  dec.kernel.size());
    }
}

TEST(Gf2, span_enumeration_visits_every_element_once) {
    std::vector<BitVec> basis = {BitVec::from_string("1100"), BitVec::from_string("0110"),
                                 BitVec::from_string("0001")};
    std::set<std::string> seen;
    for_each_in_span(basis, 4, [&](const BitVec& v) { seen.insert(v.to_string()); });
    EXPECT_EQ(seen.size(), 8u);
    EXPECT_TRUE(seen.count("0000"));
    // Partitioned ranges concatenate to the full enumeration.
    std::vector<std::string> a, b;
    for_each_in_span(basis, 4, [&](const BitVec& v) { a.push_back(v.to_string()); });
    for_each_in_span(basis, 4, [&](const BitVec& v) { b.push_back(v.to_string()); }, 0, 3);
    for_each_in_span(basis, 4, [&](const BitVec& v) { b.push_back(v.to_string()); }, 3, 8);
    EXPECT_EQ(a, b);
}

TEST(Gf2, span_enumeration_cap) {
    std::vector<BitVec> basis(kMaxSpanRank + 1, BitVec(30));
    EXPECT_THROW(for_each_in_span(basis, 30, [](const BitVec&) {}), CapExceeded);
}
