#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace hkfs;

namespace {
Rational R(long a, long b = 1) { return make_rational(a, b); }

std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = lo; p <= hi; ++p)
        if (is_prime(p)) out.push_back(p);
    return out;
}
}  // namespace

TEST(ClosedForm, FermatCubicValues) {
    ClosedFormFS a = fermat_fs_closed({5, 3, 4});
    EXPECT_EQ(a.s, R(15, 124));
    EXPECT_EQ(a.B, 1);
    ClosedFormFS b = fermat_fs_closed({7, 3, 4});
    EXPECT_EQ(b.s, R(21, 170));
    EXPECT_EQ(b.B, 3);
    EXPECT_EQ(b.fs(1), 45);
    EXPECT_EQ(a.fs(1), 16);
    EXPECT_EQ(fermat_fs_closed({11, 3, 4}).fs(1), 168);
    EXPECT_EQ(fermat_fs_closed({5, 3, 4}).series.coefficients(3), (std::vector<Rational>{1, 16, 1891}));
}

TEST(ClosedForm, InternalConsistency) {
    struct Q {
        std::uint64_t p, d;
        unsigned n;
    };
    for (const auto& q : std::vector<Q>{{5, 3, 4}, {7, 3, 4}, {11, 3, 4}, {13, 3, 4}, {7, 2, 4}, {5, 2, 3}, {11, 5, 6}, {7, 3, 5}}) {
        ClosedFormFS cf = fermat_fs_closed({q.p, q.d, q.n});
        const Integer pn1 = ipow(q.p, q.n - 1);
        EXPECT_EQ(cf.s, -Rational(cf.C) / Rational(pn1 - cf.B));
        EXPECT_GE(cf.B, 0);
        EXPECT_LE(cf.B, ipow(q.p, q.n - 3));
        auto coeffs = cf.series.coefficients(4);
        for (unsigned e = 1; e <= 3; ++e) {
            EXPECT_TRUE(is_integer(cf.fs(e)));
            EXPECT_EQ(coeffs[e], cf.fs(e));
        }
        EXPECT_EQ(coeffs[1], Rational(fs_value(FermatQuery{q.p, q.d, q.n}.hypersurface(), q.p, 1)));
    }
}

TEST(ClosedForm, CubicFormulaAgreesWithGeneralForm) {
    for (std::uint64_t p : {5ull, 7ull, 11ull, 13ull, 17ull, 19ull}) {
        ClosedFormFS a = fermat_cubic(p), b = fermat_fs_closed({p, 3, 4});
        EXPECT_EQ(a.s, b.s) << p;
        EXPECT_EQ(a.B, b.B) << p;
        EXPECT_EQ(a.C, b.C) << p;
        EXPECT_EQ(a.series, b.series) << p;
    }
    EXPECT_THROW(fermat_cubic(3), HypothesisError);
}

TEST(ClosedForm, QuadricThreefold) {
    DiagonalHypersurface f({2, 2, 2});
    for (std::uint64_t p : {3ull, 5ull, 7ull})
        for (unsigned e = 1; e <= 3; ++e) EXPECT_EQ(fs_value(f, p, e), (ipow(p, 2 * e) + 1) / 2);
    EXPECT_EQ(fermat_fs_closed({5, 2, 3}).s, R(1, 2));
    EXPECT_EQ(fermat_fs_closed({5, 2, 3}).B, 1);
}

TEST(ClosedForm, ConstantWhenDegreeEqualsDimension) {
    EXPECT_EQ(fs_equal_one({7, 3, 3}), (std::vector<Integer>{1, 1}));
    EXPECT_EQ(fs_equal_one({5, 4, 4}), (std::vector<Integer>{1, 1}));
    EXPECT_THROW(fs_equal_one({5, 3, 3}), HypothesisError);
    EXPECT_THROW(fs_equal_one({7, 3, 4}), HypothesisError);
}

TEST(ClosedForm, HypothesisErrors) {
    EXPECT_THROW(fermat_fs_closed({7, 3, 3}), HypothesisError);   // n = d
    EXPECT_THROW(fermat_fs_closed({3, 3, 4}), HypothesisError);   // p = d
    EXPECT_THROW(fermat_fs_closed({13, 5, 6}), HypothesisError);  // 13 = 3 mod 5
    EXPECT_THROW(fermat_fs_closed({5, 4, 5}), HypothesisError);   // n M odd
    EXPECT_THROW(fermat_fs_closed({6, 3, 4}), HypothesisError);
    try {
        fermat_fs_closed({5, 4, 5});
    } catch (const HypothesisError& e) {
        EXPECT_NE(std::string(e.what()).find("hypothesis not satisfied"), std::string::npos);
    }
}

TEST(ClosedForm, ClassificationTable) {
    auto cls = [](std::uint64_t p, std::uint64_t d) { return bc_classify({p, d, static_cast<unsigned>(d + 1)}); };
    // listed cells
    EXPECT_EQ(cls(5, 3), BCClass::One);
    EXPECT_EQ(cls(7, 4), BCClass::Zero);
    EXPECT_EQ(cls(13, 7), BCClass::Zero);
    EXPECT_EQ(cls(41, 7), BCClass::One);
    for (std::uint64_t p : {41ull, 83ull, 167ull, 251ull, 293ull}) EXPECT_EQ(cls(p, 21), BCClass::Zero);
    EXPECT_EQ(cls(419, 21), BCClass::One);
    // every admissible prime in range: B from the ring agrees with the class
    for (std::uint64_t d : {3ull, 4ull, 7ull, 21ull}) {
        const std::uint64_t thr = d * d - d - 1;
        for (std::uint64_t p : primes_between(d + 1, d == 21 ? 500 : 200)) {
            FermatQuery q{p, d, static_cast<unsigned>(d + 1)};
            if (!q.plus_one() && !q.minus_one()) continue;
            if (!detail::admissible_form(q)) continue;
            BCClass c = bc_classify(q);
            Integer B = fermat_B(q);
            EXPECT_EQ(c == BCClass::Zero, B == 0) << q.to_string();
            EXPECT_EQ(c == BCClass::One, B == 1) << q.to_string();
            if (q.minus_one()) {
                BCClass expected = p < thr ? BCClass::Zero : p == thr ? BCClass::One : BCClass::Greater;
                EXPECT_EQ(c, expected) << q.to_string();
            } else {
                EXPECT_EQ(c, BCClass::Greater) << q.to_string();
            }
            if (d == 3) {
                EXPECT_NE(c, BCClass::Zero);
            }
            if (d == 4) {
                EXPECT_NE(c, BCClass::One);
            }
        }
    }
}

TEST(ClosedForm, BEqualsOneCriterion) {
    for (std::uint64_t d = 3; d <= 9; ++d)
        for (unsigned n = d + 1; n <= d + 6; ++n)
            for (std::uint64_t p : primes_between(d + 1, 120)) {
                FermatQuery q{p, d, n};
                if (!q.minus_one() || q.plus_one() || !detail::admissible_form(q)) continue;
                bool formula = (d * n - n - d) % (n - d) == 0 && p == (d * n - n - d) / (n - d);
                EXPECT_EQ(bc_classify(q) == BCClass::One, formula) << q.to_string();
            }
    EXPECT_EQ(b_equal_one_fs({19, 5, 6}), R(455, 275122));
    EXPECT_EQ(fermat_fs_closed({19, 5, 6}).s, R(455, 275122));
    EXPECT_EQ(fermat_B({13, 7, 8}), 0);
    EXPECT_EQ(fermat_B({5, 3, 4}), 1);
}

TEST(ClosedForm, WatanabeYoshida) {
    for (std::uint64_t p : {5ull, 7ull, 11ull, 13ull}) {
        WYComparison c = watanabe_yoshida_compare(p, 3);
        EXPECT_EQ(c.verdict, WYVerdict::StrictLess) << p;
        EXPECT_EQ(c.bound, R(1, 8));
    }
    EXPECT_EQ(watanabe_yoshida_compare(19, 5).s, R(455, 275122));
    EXPECT_EQ(watanabe_yoshida_compare(5, 2).verdict, WYVerdict::Equal);
    // s approaches 1/8 as p grows, d = 3
    Rational first = -1, last = -1;
    for (std::uint64_t p : primes_between(5, 50)) {
        Rational gap = abs(fermat_fs_closed({p, 3, 4}).s - R(1, 8));
        if (first < 0) first = gap;
        last = gap;
    }
    EXPECT_LT(last, first);
}

TEST(ClosedForm, FPureClassification) {
    EXPECT_EQ(fpure_classification({7, 4, 5}), FPureClass::NotFPure);
    EXPECT_EQ(fpure_classification({7, 3, 3}), FPureClass::FPureNotStronglyFRegular);
    EXPECT_EQ(fpure_classification({5, 3, 3}), FPureClass::NotFPure);
    EXPECT_EQ(fpure_classification({5, 3, 4}), FPureClass::StronglyFRegular);
    EXPECT_EQ(fpure_classification({3, 5, 6}), FPureClass::NotFPure);
    EXPECT_EQ(fpure_classification({13, 5, 6}), FPureClass::Undetermined);
}

TEST(Census, MatchesTrialDivision) {
    for (std::uint64_t bound : {5ull, 12ull, 100ull, 2000ull}) {
        std::uint64_t expected = 0;
        for (std::uint64_t d = 5; d < bound; d += 2) {
            std::uint64_t m = d * d - d - 1;
            bool prime = true;
            for (std::uint64_t k = 2; k * k <= m && prime; ++k) prime = m % k != 0;
            expected += prime;
        }
        EXPECT_EQ(bunyakovsky_census(bound), expected) << bound;
        EXPECT_EQ(bunyakovsky_census(bound, 1), expected);
        EXPECT_EQ(bunyakovsky_census(bound, 7), expected);
    }
    EXPECT_EQ(bunyakovsky_census(12), 4u);
    EXPECT_THROW(bunyakovsky_census(3), HypothesisError);
}
