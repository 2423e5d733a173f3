#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "hkfs/gamma.hpp"
#include "hkfs/limit.hpp"
#include "hkfs/phi.hpp"
#include "hkfs/primes.hpp"
#include "hkfs/rational_series.hpp"
#include "hkfs/symbolic.hpp"

namespace hkfs {

// x_1^d + ... + x_n^d over F_p
struct FermatQuery {
    std::uint64_t p;
    std::uint64_t d;
    unsigned n;

    std::uint64_t M() const { return p / d; }
    bool plus_one() const { return p % d == 1; }
    bool minus_one() const { return p % d == d - 1; }
    DiagonalHypersurface hypersurface() const {
        return DiagonalHypersurface(std::vector<long>(n, static_cast<long>(d)));
    }
    std::string to_string() const {
        return "(p,d,n)=(" + std::to_string(p) + "," + std::to_string(d) + "," + std::to_string(n) + ")";
    }
};

namespace detail {

inline void validate(const FermatQuery& q) {
    require_prime(q.p);
    require(q.d >= 2, "d must be at least 2");
    require(q.n >= 2, "n must be at least 2");
}

// Congruence form whose parity condition n(M + alpha) even holds, if any.
inline std::optional<ShiftCongruence> admissible_form(const FermatQuery& q) {
    const std::uint64_t M = q.M();
    if (q.plus_one() && (q.n * M) % 2 == 0) return ShiftCongruence::PlusOne;
    if (q.minus_one() && (q.n * (M + 1)) % 2 == 0) return ShiftCongruence::MinusOne;
    return std::nullopt;
}

// Hypotheses of the two-term closed form; returns the congruence form to use.
inline ShiftCongruence closed_form_hypotheses(const FermatQuery& q) {
    validate(q);
    if (q.n <= q.d) throw HypothesisError("closed form needs n > d, got " + q.to_string());
    if (q.p <= q.d) throw HypothesisError("closed form needs p > d, got " + q.to_string());
    if (!q.plus_one() && !q.minus_one()) throw HypothesisError("congruence unsupported: p is not +-1 mod d");
    auto form = admissible_form(q);
    if (!form) throw HypothesisError("hypothesis not satisfied: n(M + alpha) is odd for " + q.to_string());
    return *form;
}

}  // namespace detail

enum class FPureClass { NotFPure, FPureNotStronglyFRegular, StronglyFRegular, Undetermined };

inline std::string to_string(FPureClass c) {
    switch (c) {
        case FPureClass::NotFPure: return "not F-pure";
        case FPureClass::FPureNotStronglyFRegular: return "F-pure, not strongly F-regular";
        case FPureClass::StronglyFRegular: return "strongly F-regular";
        case FPureClass::Undetermined: return "undetermined";
    }
    return "?";
}

// Coefficient of lambda_{p-1-M} in lambda_M^{n-1}.
inline Integer fermat_B(const FermatQuery& q) {
    detail::validate(q);
    if (q.p <= q.d) throw HypothesisError("fermat_B needs p > d");
    if (!q.plus_one() && !q.minus_one()) throw HypothesisError("congruence unsupported: p is not +-1 mod d");
    const std::uint64_t M = q.M();
    GammaElement pw = gamma_pow(GammaElement::lambda(q.p, M), q.n - 1);
    Rational c = pw.coeff(q.p - 1 - M);
    ensure(is_integer(c) && c >= 0, "fermat_B: coefficient is not a nonnegative integer");
    return c.get_num();
}

enum class BCClass { Zero, One, Greater };

inline std::string to_string(BCClass c) {
    switch (c) {
        case BCClass::Zero: return "B=C=0";
        case BCClass::One: return "B=1";
        case BCClass::Greater: return "B>1";
    }
    return "?";
}

inline BCClass bc_classify(const FermatQuery& q) {
    detail::closed_form_hypotheses(q);
    if (q.n < 4) throw HypothesisError("bc_classify needs n >= 4");
    if (q.plus_one()) return BCClass::Greater;
    const long p = static_cast<long>(q.p), d = static_cast<long>(q.d), n = static_cast<long>(q.n);
    long v = p * (n - d) + n + d - d * n;
    if (v < 0) return BCClass::Zero;
    if (v == 0) return BCClass::One;
    return BCClass::Greater;
}

// FS(e) = s p^{(n-1)e} + (1 - s) B^e for e >= 1; C = -s (p^{n-1} - B).
struct ClosedFormFS {
    FermatQuery query;
    Rational s;
    Integer B;
    Integer C;
    RationalSeries series;  // s/(1 - p^{n-1} z) + (1 - s)/(1 - B z)

    Rational fs(unsigned e) const {
        return s * Rational(ipow(query.p, static_cast<unsigned long>(query.n - 1) * e)) +
               (1 - s) * Rational(ipow(B, e));
    }
};

namespace detail {

inline RationalSeries two_term_series(std::uint64_t p, unsigned n, const Rational& s, const Integer& B) {
    RationalFunction a(Polynomial::constant(s), Polynomial({Rational(1), -Rational(ipow(p, n - 1))}));
    RationalFunction b(Polynomial::constant(1 - s), Polynomial({Rational(1), -Rational(B)}));
    return RationalSeries(a + b);
}

}  // namespace detail

inline ClosedFormFS fermat_fs_closed(const FermatQuery& q) {
    ShiftCongruence form = detail::closed_form_hypotheses(q);
    const Integer B = fermat_B(q);
    const Integer pn1 = ipow(q.p, q.n - 1);
    ensure(B <= ipow(q.p, q.n - 3), "fermat_fs_closed: B exceeds p^{n-3}");
    DiagonalHypersurface f = q.hypersurface();
    const Integer fs1 = fs_value(f, q.p, 1);
    Rational s = Rational(fs1 - B) / Rational(pn1 - B);
    Rational C = -s * Rational(pn1 - B);
    ensure(is_integer(C), "fermat_fs_closed: C is not an integer");
    ClosedFormFS out{q, s, B, C.get_num(), detail::two_term_series(q.p, q.n, s, B)};
    Integer fs2 = fs_value(f, q.p, 2);
    ensure(out.fs(2) == Rational(fs2), "fermat_fs_closed: closed form disagrees with FS(2) = " + fs2.get_str());
    if (q.n <= 5)
        ensure(fermat_fss_symbolic(q.p, q.d, q.n, form) == out.series,
               "fermat_fs_closed: symbolic r_n series disagrees with the closed form");
    return out;
}

inline ClosedFormFS fermat_cubic(std::uint64_t p) {
    require_prime(p);
    if (p <= 3) throw HypothesisError("fermat_cubic needs p > 3");
    const long alpha = p % 3 == 1 ? 0 : 1;
    const long sgn = alpha ? -1 : 1;  // (-1)^alpha
    Integer P(static_cast<unsigned long>(p));
    Rational s = Rational(3 * P * (P - 1) * (P + 1)) / Rational(8 * (3 * P * P * P - P - 2 * sgn));
    Integer B = (P + 2 * sgn) / 3;
    Rational C = -s * Rational(P * P * P - B);
    ensure(is_integer(C), "fermat_cubic: C is not an integer");
    FermatQuery q{p, 3, 4};
    return ClosedFormFS{q, s, B, C.get_num(), detail::two_term_series(p, 4, s, B)};
}

// d = n, p = 1 mod d: FS(e) = 1. Returns the checked values FS(1..E).
inline std::vector<Integer> fs_equal_one(const FermatQuery& q, unsigned E = 2) {
    detail::validate(q);
    if (q.d != q.n) throw HypothesisError("fs_equal_one needs d = n");
    if (q.p <= q.d) throw HypothesisError("fs_equal_one needs p > d");
    if (!q.plus_one()) throw HypothesisError("fs_equal_one needs p = 1 mod d");
    std::vector<Integer> out;
    DiagonalHypersurface f = q.hypersurface();
    for (unsigned e = 1; e <= E; ++e) {
        out.push_back(fs_value(f, q.p, e));
        ensure(out.back() == 1, "fs_equal_one: FS(" + std::to_string(e) + ") = " + out.back().get_str());
    }
    return out;
}

// s = ((d-1)^n - 1)/(p^{n-1} - 1) when B = 1 and d is odd
inline Rational b_equal_one_fs(const FermatQuery& q) {
    if (q.d % 2 == 0) throw HypothesisError("b_equal_one_fs needs d odd");
    if (bc_classify(q) != BCClass::One) throw HypothesisError("b_equal_one_fs needs B = 1");
    return Rational(ipow(q.d - 1, q.n) - 1) / Rational(ipow(q.p, q.n - 1) - 1);
}

enum class WYVerdict { StrictLess, Equal };

struct WYComparison {
    Rational s;
    Rational bound;
    WYVerdict verdict;
};

inline Rational watanabe_yoshida_bound(std::uint64_t d) {
    return Rational(1) / Rational(ipow(2, d - 1) * factorial(d - 1));
}

inline WYComparison watanabe_yoshida_compare(std::uint64_t p, std::uint64_t d) {
    ClosedFormFS cf = fermat_fs_closed(FermatQuery{p, d, static_cast<unsigned>(d + 1)});
    Rational bound = watanabe_yoshida_bound(d);
    ensure(cf.s <= bound, "watanabe_yoshida_compare: s exceeds the upper bound");
    return {cf.s, bound, cf.s < bound ? WYVerdict::StrictLess : WYVerdict::Equal};
}

inline FPureClass fpure_classification(const FermatQuery& q) {
    detail::validate(q);
    if (q.p <= q.d || q.d > q.n) return FPureClass::NotFPure;
    if (q.d == q.n) return q.plus_one() ? FPureClass::FPureNotStronglyFRegular : FPureClass::NotFPure;
    ClosedFormFS cf;
    try {
        cf = fermat_fs_closed(q);
    } catch (const HypothesisError&) {
        return FPureClass::Undetermined;
    }
    if (cf.s > 0) return FPureClass::StronglyFRegular;
    return cf.B == 0 ? FPureClass::NotFPure : FPureClass::FPureNotStronglyFRegular;
}

// Odd d with 3 < d < bound and d^2 - d - 1 prime.
inline std::uint64_t bunyakovsky_census(std::uint64_t bound, unsigned threads = 0) {
    require(bound >= 5, "census bound must be at least 5");
    require(bound <= 4000000000ULL, "census bound too large");
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    const std::uint64_t lo = 5, hi = bound;  // d in [lo, hi)
    if (hi <= lo) return 0;
    std::vector<std::uint64_t> counts(threads, 0);
    std::vector<std::thread> pool;
    const std::uint64_t span = (hi - lo + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            std::uint64_t a = lo + t * span, b = std::min(hi, a + span);
            std::uint64_t c = 0;
            for (std::uint64_t d = a | 1; d < b; d += 2)
                if (is_prime(d * d - d - 1)) ++c;
            counts[t] = c;
        });
    }
    for (auto& th : pool) th.join();
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    return total;
}

}  // namespace hkfs
