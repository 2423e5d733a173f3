#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "hkfs/errors.hpp"

namespace hkfs {

using Integer = mpz_class;
using Rational = mpq_class;  // GMP keeps results of arithmetic in lowest terms

inline Rational make_rational(const Integer& num, const Integer& den) {
    require(den != 0, "zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(Integer(num), Integer(den));
}

inline Integer ipow(const Integer& base, unsigned long exp) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline Integer ipow(unsigned long base, unsigned long exp) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

inline Rational rpow(const Rational& base, unsigned long exp) {
    Rational r(ipow(base.get_num(), exp), ipow(base.get_den(), exp));
    return r;  // already reduced
}

// p^e as a machine integer; throws when it does not fit.
inline std::uint64_t upow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > UINT64_MAX / base) throw HypothesisError("power overflows 64 bits");
        r *= base;
    }
    return r;
}

inline Integer floor_of(const Rational& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline std::string to_string(const Rational& r) { return r.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Integer parse_integer(std::string_view s) {
    Integer z;
    std::string tmp(s);
    if (tmp.empty() || z.set_str(tmp, 10) != 0) throw HypothesisError("not an integer: '" + tmp + "'");
    return z;
}

// Accepts "a", "-a", "a/b".
inline Rational parse_rational(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(s));
    return make_rational(parse_integer(s.substr(0, slash)), parse_integer(s.substr(slash + 1)));
}

// k fractional digits, round half to even.
inline std::string to_decimal(const Rational& r, unsigned k) {
    Rational a = abs(r);
    Integer scale = ipow(10, k);
    Rational scaled = a * scale;
    Integer q = floor_of(scaled);
    Rational frac = scaled - q;
    Rational half(1, 2);
    if (frac > half || (frac == half && mpz_odd_p(q.get_mpz_t()))) q += 1;
    std::string digits = q.get_str();
    if (digits.size() <= k) digits.insert(0, k + 1 - digits.size(), '0');
    std::string out = digits.substr(0, digits.size() - k);
    if (k > 0) out += "." + digits.substr(digits.size() - k);
    if (r < 0 && q != 0) out.insert(0, "-");
    return out;
}

}  // namespace hkfs
