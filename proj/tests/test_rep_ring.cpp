#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace hkfs;

namespace {
GammaElement L(std::uint64_t p, std::uint64_t i) { return GammaElement::lambda(p, i); }

GammaElement from_list(std::uint64_t p, std::vector<long> c) {
    GammaElement g(p);
    for (std::size_t i = 0; i < c.size(); ++i) g.add(i, Rational(c[i]));
    return g;
}
}  // namespace

TEST(Gamma, SmallProducts) {
    EXPECT_EQ(gamma_mul(L(3, 1), L(3, 1)), from_list(3, {1, 1, 1}));
    EXPECT_EQ(gamma_mul(L(3, 2), L(3, 5)), L(3, 3));
    EXPECT_EQ(theta(L(3, 1)), L(3, 5));
    EXPECT_EQ(gamma_mul(L(5, 0), L(5, 17)), L(5, 17));
    // cube of lambda_2 at p = 7
    EXPECT_EQ(gamma_pow(L(7, 2), 3), from_list(7, {1, 3, 5, 4, 3, 2, 1}));
    EXPECT_THROW(gamma_mul(L(3, 1), L(5, 1)), HypothesisError);
}

TEST(Gamma, DeltaProductsMatchJordanTensorDecomposition) {
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull})
        for (std::uint64_t a = 1; a <= 11; ++a)
            for (std::uint64_t b = a; b <= 11; ++b)
                EXPECT_EQ(gamma_mul(delta(p, a), delta(p, b)), oracle::jordan_product(p, a, b))
                    << "p=" << p << " a=" << a << " b=" << b;
}

TEST(Gamma, AlphaTruncMatchesCokernelDimensions) {
    for (std::uint64_t p : {3ull, 5ull})
        for (std::uint64_t a = 1; a <= 7; ++a)
            for (std::uint64_t b = 1; b <= 7; ++b)
                for (std::uint64_t c = 1; c <= a + b; ++c)
                    EXPECT_EQ(alpha_trunc(gamma_mul(delta(p, a), delta(p, b)), c),
                              Rational(oracle::jordan_coker(p, a, b, c)));
    for (std::uint64_t m = 1; m < 30; ++m)
        for (std::uint64_t a = 1; a < 30; ++a) EXPECT_EQ(alpha_trunc(delta(7, m), a), Rational(std::min(a, m)));
}

TEST(Gamma, CommutativeAndAssociative) {
    std::mt19937_64 rng(1);
    for (std::uint64_t p : {3ull, 5ull, 7ull})
        for (int trial = 0; trial < 60; ++trial) {
            auto u = oracle::random_gamma(rng, p, p * p), v = oracle::random_gamma(rng, p, p * p),
                 w = oracle::random_gamma(rng, p, p * p);
            EXPECT_EQ(gamma_mul(u, v), gamma_mul(v, u));
            EXPECT_EQ(gamma_mul(gamma_mul(u, v), w), gamma_mul(u, gamma_mul(v, w)));
            EXPECT_EQ(gamma_mul(u, v + w), gamma_mul(u, v) + gamma_mul(u, w));
        }
}

TEST(Gamma, ThetaIsARingHomomorphism) {
    std::mt19937_64 rng(2);
    for (std::uint64_t p : {3ull, 5ull, 7ull})
        for (int trial = 0; trial < 60; ++trial) {
            auto u = oracle::random_gamma(rng, p, p * p), v = oracle::random_gamma(rng, p, p * p);
            EXPECT_EQ(theta(gamma_mul(u, v)), gamma_mul(theta(u), theta(v)));
            EXPECT_EQ(theta(u + v), theta(u) + theta(v));
        }
    EXPECT_EQ(theta(GammaElement::one(5)), GammaElement::one(5));
}

TEST(Gamma, PowerCoefficientBound) {
    for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull})
        for (std::uint64_t i = 0; i < p; ++i)
            for (unsigned r = 2; r <= 5; ++r) {
                Integer bound = ipow(p, r - 2);
                for (const auto& [j, c] : gamma_pow(L(p, i), r).terms()) {
                    EXPECT_GE(c, 0);
                    EXPECT_LE(c, Rational(bound)) << "p=" << p << " i=" << i << " r=" << r << " j=" << j;
                }
            }
}

TEST(Gamma, DeltaBasisRoundTrip) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        auto u = oracle::random_gamma(rng, 5, 60, 5);
        GammaElement back(5);
        for (const auto& [m, c] : to_delta_basis(u)) back += delta(5, m) * c;
        EXPECT_EQ(back, u);
    }
    EXPECT_EQ(delta_fractional(3, make_rational(5, 2)), (delta(3, 2) + delta(3, 3)) * make_rational(1, 2));
}

TEST(Gamma, CyclicClassCountsBlocks) {
    // K[x]/(x^7) with T = x^3: blocks of sizes 3, 2, 2
    EXPECT_EQ(cyclic_class(5, 7, 3), delta(5, 3) + delta(5, 2) * Rational(2));
    EXPECT_EQ(cyclic_class(5, 6, 3), delta(5, 2) * Rational(3));
}

TEST(Gamma, DNumberRepringSmallCase) {
    EXPECT_EQ(d_number_repring(3, {2, 2, 3}), 4);
    EXPECT_EQ(d_number_repring(5, {1, 4}), 1);
}
