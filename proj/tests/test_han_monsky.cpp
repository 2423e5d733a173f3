#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"

using namespace hkfs;

namespace {
// k_i <= p, sum k_i - n even, prod k_i <= 2000
std::vector<long> admissible(std::mt19937_64& rng, std::uint64_t p) {
    for (;;) {
        auto k = oracle::random_degrees(rng, 1 + rng() % 5, 1, static_cast<long>(p));
        long sum = 0, prod = 1;
        for (long x : k) sum += x, prod *= x;
        if ((sum - static_cast<long>(k.size())) % 2 == 0 && prod <= 2000) return k;
    }
}
}  // namespace

TEST(HanMonsky, ThreeWayAgreement) {
    std::mt19937_64 rng(17);
    int cases = 0;
    for (std::uint64_t p : {3ull, 5ull, 7ull})
        for (int trial = 0; trial < 80; ++trial) {
            auto k = admissible(rng, p);
            DNumberQuery q{p, k};
            Integer hm = d_number_hm(q);
            EXPECT_EQ(hm, d_number_oracle(q));
            EXPECT_EQ(hm, d_number_repring(p, k));
            ++cases;
        }
    EXPECT_GE(cases, 200);
}

TEST(HanMonsky, RepringMatchesOracleOutsideHypotheses) {
    EXPECT_EQ(d_number_repring(3, {5, 4}), d_number_oracle({3, {5, 4}}));
    EXPECT_EQ(d_number_repring(5, {2, 3, 7}), d_number_oracle({5, {2, 3, 7}}));
    EXPECT_THROW(d_number_hm({3, {5, 4}}), HypothesisError);
    EXPECT_THROW(d_number_hm({5, {2, 3}}), HypothesisError);  // sum - n odd
}

TEST(HanMonsky, PermutationSymmetry) {
    std::mt19937_64 rng(18);
    for (int trial = 0; trial < 30; ++trial) {
        auto k = oracle::random_degrees(rng, 3, 1, 6);
        Integer base = d_number_oracle({5, k});
        std::sort(k.begin(), k.end());
        do EXPECT_EQ(d_number_repring(5, k), base);
        while (std::next_permutation(k.begin(), k.end()));
    }
}

TEST(HanMonsky, MonotoneInEachExponent) {
    for (std::uint64_t p : {3ull, 5ull})
        for (long a = 1; a <= 6; ++a)
            for (long b = 1; b <= 6; ++b)
                for (long c = 1; c <= 5; ++c) {
                    Integer base = d_number_oracle({p, {a, b, c}});
                    EXPECT_LE(base, d_number_oracle({p, {a + 1, b, c}}));
                    EXPECT_LE(base, d_number_oracle({p, {a, b, c + 1}}));
                }
}

TEST(HanMonsky, Validation) {
    EXPECT_THROW(d_number_oracle({4, {2, 2}}), HypothesisError);
    EXPECT_THROW(d_number_oracle({3, {}}), HypothesisError);
    EXPECT_THROW(d_number_oracle({3, {0, 2}}), HypothesisError);
}
