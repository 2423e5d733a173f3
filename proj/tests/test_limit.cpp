#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace hkfs;

namespace {
Rational R(long a, long b = 1) { return make_rational(a, b); }
Polynomial P(std::initializer_list<Rational> c) { return Polynomial(c); }
}  // namespace

TEST(Limit, CuspLimitFunction) {
    DiagonalHypersurface f({2, 3});
    PiecewisePolynomial expected({0, R(1, 6), R(5, 6), 1}, {P({0, 2}), P({R(-1, 24), R(5, 2), R(-3, 2)}), P({1})});
    PiecewisePolynomial got = limit_phi(f);
    EXPECT_EQ(got, expected);
    EXPECT_EQ(got.breakpoints(), expected.breakpoints());
    EXPECT_EQ(limit_hk(f), 2);
    EXPECT_EQ(limit_fs(f), 0);
    EXPECT_EQ(lct(f), R(5, 6));
}

TEST(Limit, PiecewisePolynomialBasics) {
    PiecewisePolynomial a({0, R(1, 2), 1}, {P({0, 1}), P({0, 1})});
    PiecewisePolynomial b({0, 1}, {P({0, 1})});
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.canonical().breakpoints().size(), 2u);
    PiecewisePolynomial c({0, R(1, 3), 1}, {P({1}), P({2})});
    EXPECT_FALSE(c.is_continuous());
    EXPECT_EQ((a + c)(R(1, 3)), R(4, 3));  // breakpoints belong to the left piece
    EXPECT_EQ((a + c)(R(1, 2)), R(5, 2));
    auto d = one_sided_derivatives(PiecewisePolynomial({0, R(1, 2), 1}, {P({0, 2}), P({R(1, 2), 1})}), R(1, 2));
    EXPECT_EQ(*d.left, 2);
    EXPECT_EQ(*d.right, 1);
    EXPECT_THROW(one_sided_derivatives(b, 2), HypothesisError);
    EXPECT_THROW(PiecewisePolynomial({0, 0, 1}, {P({1}), P({1})}), HypothesisError);
}

TEST(Limit, LimitFunctionShape) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 25; ++trial) {
        DiagonalHypersurface f(oracle::random_degrees(rng, 2 + trial % 3, 2, 6));
        PiecewisePolynomial phi = limit_phi(f);
        EXPECT_TRUE(phi.is_continuous());
        EXPECT_EQ(phi(0), 0);
        EXPECT_EQ(phi(1), 1);
        auto at0 = one_sided_derivatives(phi, 0), at1 = one_sided_derivatives(phi, 1);
        EXPECT_EQ(*at0.right, limit_hk(f)) << f.to_string();
        EXPECT_EQ(*at1.left, limit_fs(f)) << f.to_string();
        for (const auto& b : breakpoints(f)) EXPECT_TRUE(b >= 0 && b <= 1);
        // near-LCT monomial when the inverse sum is at most 1
        if (f.inverse_sum() <= 1) {
            const unsigned n = f.n();
            Polynomial mono = pow(Polynomial::linear(-1, lct(f)), n) *
                              (Rational(f.degree_product()) / Rational(ipow(2, n - 1) * factorial(n)));
            std::size_t i = phi.piece_index(lct(f));
            EXPECT_EQ(Polynomial::constant(1) - phi.pieces()[i], mono) << f.to_string();
        }
    }
}

TEST(Limit, FermatQuadricsAgreeWithEulerFormula) {
    for (unsigned n = 2; n <= 8; ++n) {
        DiagonalHypersurface f(std::vector<long>(n, 2));
        EXPECT_EQ(limit_phi(f), quadric_limit_phi(n)) << n;
    }
    EXPECT_EQ(quadric_limit_phi(2), PiecewisePolynomial({0, 1}, {P({0, 2, -1})}));
    EXPECT_EQ(quadric_limit_phi(3).pieces().front(), P({0, R(3, 2), 0, R(-2, 3)}));
}

TEST(Limit, GesselMonskyCoefficients) {
    auto series = oracle::sec_plus_tan(12);
    for (unsigned n = 1; n <= 13; ++n) EXPECT_EQ(sec_tan_coefficient(n), series[n - 1]) << n;
    for (unsigned n = 2; n <= 10; ++n) {
        DiagonalHypersurface f(std::vector<long>(n, 2));
        EXPECT_EQ(limit_hk(f), 1 + sec_tan_coefficient(n)) << n;
        EXPECT_EQ(limit_fs(f), 1 - sec_tan_coefficient(n)) << n;
    }
    EXPECT_EQ(sec_tan_coefficient(3), R(1, 2));
    EXPECT_EQ(sec_tan_coefficient(4), R(1, 3));
}

TEST(Limit, WatanabeYoshidaLimit) {
    for (long d = 2; d <= 5; ++d)
        EXPECT_EQ(limit_fs(DiagonalHypersurface(std::vector<long>(d + 1, d))),
                  Rational(1) / Rational(ipow(2, d - 1) * factorial(d - 1)));
    EXPECT_EQ(limit_fs(DiagonalHypersurface({3, 3, 3, 3})), R(1, 8));
    EXPECT_EQ(limit_fs(DiagonalHypersurface({2, 2, 2})), R(1, 2));
    EXPECT_EQ(lct(DiagonalHypersurface({2, 2, 2})), 1);
    EXPECT_EQ(lct(DiagonalHypersurface({3, 3, 3})), 1);
}

TEST(EulerFacts, PolynomialIdentities) {
    const Polynomial half_shift_down = Polynomial::linear(1, R(-1, 2));
    for (unsigned k = 0; k <= 12; ++k) {
        Polynomial E = euler_polynomial(k);
        EXPECT_EQ(E, oracle::euler_by_functional_equation(k)) << k;
        EXPECT_EQ(E.degree(), static_cast<int>(k));
        EXPECT_EQ(E.leading(), 1);
        EXPECT_EQ(E.compose_linear(1, R(1, 2)) + E.compose_linear(1, R(-1, 2)), pow(half_shift_down, k) * Rational(2));
        if (k >= 1) {
            EXPECT_EQ(E.derivative(), euler_polynomial(k - 1) * Rational(k));
            EXPECT_EQ(E(1), -E(0));
        }
        EXPECT_EQ(E(0), -Rational(2) / (k + 1) * Rational(ipow(2, k + 1) - 1) * bernoulli_number(k + 1));
        EXPECT_EQ(E(R(1, 2)), Rational(euler_number(k)) / Rational(ipow(2, k)));
    }
    EXPECT_EQ(euler_polynomial(2), P({0, -1, 1}));
}

TEST(EulerFacts, EulerNumbersMatchSecantSeries) {
    auto s = oracle::sec_plus_tan(12);
    for (unsigned k = 0; k <= 12; k += 2) {
        Rational sec_k = s[k] * Rational(factorial(k));  // signless Euler number
        EXPECT_EQ(abs(Rational(euler_number(k))), sec_k);
    }
}

TEST(EulerFacts, FiniteDifferences) {
    for (unsigned m = 0; m <= 8; ++m)
        for (long l = -3; l <= 3; ++l)
            for (unsigned n = 0; n <= m; ++n) {
                Rational s = 0;
                for (unsigned j = 0; j <= m; ++j)
                    s += Rational(binomial(m, j)) * (j % 2 ? -1 : 1) * Rational(ipow(Integer(l + long(j)), n));
                Rational expected = n < m ? Rational(0) : Rational(factorial(n)) * (n % 2 ? -1 : 1);
                EXPECT_EQ(s, expected) << "m=" << m << " l=" << l << " n=" << n;
            }
}

TEST(EulerFacts, SignedPowerSumIdentity) {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
    for (int trial = 0; trial < 20; ++trial) {
        auto d = oracle::random_degrees(rng, 1 + trial % 5, 1, 7);
        const unsigned n = static_cast<unsigned>(d.size());
        Integer prod = 1;
        for (long x : d) prod *= x;
        Rational expected = Rational(ipow(2, n) * factorial(n)) / Rational(prod);
        for (int s = 0; s < 5; ++s) {
            Rational t = make_rational(num(rng), den(rng));
            Rational total = 0;
            for (unsigned mask = 0; mask < (1u << n); ++mask) {
                Rational x = t;
                int sign = 1;
                for (unsigned i = 0; i < n; ++i) {
                    bool neg = mask >> i & 1;
                    x += make_rational(neg ? -1 : 1, d[i]);
                    if (neg) sign = -sign;
                }
                total += sign * rpow(x, n);
            }
            EXPECT_EQ(total, expected);
        }
    }
}

TEST(Convergence, CuspDiagnostics) {
    ConvergenceReport rep = convergence_report(DiagonalHypersurface({2, 3}), {7, 13, 31, 61, 127});
    EXPECT_TRUE(rep.sup_strictly_decreasing);
    EXPECT_TRUE(rep.scaled_sup_bounded);
    EXPECT_TRUE(rep.q0_monotone);
    EXPECT_TRUE(rep.q1_monotone);
    EXPECT_EQ(rep.rows.front().sup_error, R(1, 1176));
    for (const auto& row : rep.rows) {
        EXPECT_LE(row.scaled_sup, 6);
        EXPECT_EQ(row.q0, 2);
        EXPECT_EQ(row.q1, 0);
    }
}
