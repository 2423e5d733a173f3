#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hkfs/gamma.hpp"
#include "hkfs/primes.hpp"
#include "hkfs/sparse_rank.hpp"

namespace hkfs {

struct DyadicPoint {
    std::uint64_t p = 2;
    std::uint64_t a = 0;
    unsigned e = 0;

    DyadicPoint() = default;
    DyadicPoint(std::uint64_t p_, std::uint64_t a_, unsigned e_) : p(p_), a(a_), e(e_) {
        require(a <= upow(p, e), "dyadic point: a exceeds p^e");
    }
    Rational value() const { return make_rational(Integer(static_cast<unsigned long>(a)), ipow(p, e)); }
    friend bool operator==(const DyadicPoint&, const DyadicPoint&) = default;
};

// x_1^{d_1} + ... + x_n^{d_n}, degrees kept sorted.
class DiagonalHypersurface {
public:
    explicit DiagonalHypersurface(std::vector<long> degrees) : d_(std::move(degrees)) {
        require(!d_.empty(), "hypersurface needs at least one variable");
        for (long di : d_) require(di >= 2, "degrees must be at least 2");
        std::sort(d_.begin(), d_.end());
    }
    const std::vector<long>& degrees() const { return d_; }
    unsigned n() const { return static_cast<unsigned>(d_.size()); }
    Integer degree_product() const {
        Integer r = 1;
        for (long di : d_) r *= di;
        return r;
    }
    Rational inverse_sum() const {
        Rational s = 0;
        for (long di : d_) s += make_rational(1, di);
        return s;
    }
    std::string to_string() const {
        static const char* names[] = {"x", "y", "z", "w"};
        std::string out;
        for (std::size_t i = 0; i < d_.size(); ++i) {
            if (i) out += " + ";
            out += d_.size() <= 4 ? names[i] : "x" + std::to_string(i + 1);
            out += "^" + std::to_string(d_[i]);
        }
        return out;
    }

private:
    std::vector<long> d_;
};

// Polynomial in n variables with integer coefficients, reduced mod p on use.
class GenericPolynomial {
public:
    using Exponents = std::vector<unsigned>;

    GenericPolynomial(unsigned n, std::map<Exponents, long> terms) : n_(n) {
        for (auto& [e, c] : terms) {
            require(e.size() == n, "exponent vector length must equal the variable count");
            unsigned total = 0;
            for (unsigned x : e) total += x;
            require(total >= 1, "polynomial must lie in the maximal ideal (no constant term)");
            if (c != 0) terms_[e] += c;
        }
    }

    static GenericPolynomial from_diagonal(const DiagonalHypersurface& f) {
        std::map<Exponents, long> t;
        for (unsigned i = 0; i < f.n(); ++i) {
            Exponents e(f.n(), 0);
            e[i] = static_cast<unsigned>(f.degrees()[i]);
            t[e] += 1;
        }
        return GenericPolynomial(f.n(), t);
    }

    // Terms like "y^3 - x^4 + x^2*y^2" or "3x1*x2^2"; variables are letters optionally
    // followed by digits. Without an explicit list, variables are ordered by name.
    static GenericPolynomial parse(const std::string& text, std::vector<std::string> vars = {}) {
        std::string s;
        for (char ch : text)
            if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
        require(!s.empty(), "empty polynomial");
        struct RawTerm {
            long coeff;
            std::map<std::string, unsigned> powers;
        };
        std::vector<RawTerm> raw;
        std::size_t i = 0;
        auto read_uint = [&](const char* what) {
            require(i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])), std::string("expected ") + what);
            unsigned long v = 0;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) v = v * 10 + (s[i++] - '0');
            return v;
        };
        while (i < s.size()) {
            long sign = 1;
            if (s[i] == '+' || s[i] == '-') {
                sign = s[i] == '-' ? -1 : 1;
                ++i;
            } else {
                require(raw.empty(), "expected '+' or '-' between terms");
            }
            RawTerm t{sign, {}};
            if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) t.coeff *= static_cast<long>(read_uint("coefficient"));
            while (i < s.size() && s[i] != '+' && s[i] != '-') {
                if (s[i] == '*') ++i;
                require(i < s.size() && std::isalpha(static_cast<unsigned char>(s[i])), "expected a variable name");
                std::string name(1, s[i++]);
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) name += s[i++];
                unsigned e = 1;
                if (i < s.size() && s[i] == '^') {
                    ++i;
                    e = static_cast<unsigned>(read_uint("exponent"));
                }
                t.powers[name] += e;
            }
            raw.push_back(std::move(t));
        }
        if (vars.empty()) {
            std::map<std::string, int> seen;
            for (const auto& t : raw)
                for (const auto& [v, e] : t.powers) seen[v] = 1;
            for (const auto& [v, one] : seen) vars.push_back(v);
        }
        std::map<Exponents, long> terms;
        for (const auto& t : raw) {
            Exponents e(vars.size(), 0);
            for (const auto& [v, pw] : t.powers) {
                auto it = std::find(vars.begin(), vars.end(), v);
                require(it != vars.end(), "unknown variable '" + v + "'");
                e[it - vars.begin()] += pw;
            }
            terms[e] += t.coeff;
        }
        return GenericPolynomial(static_cast<unsigned>(vars.size()), terms);
    }

    unsigned n() const { return n_; }
    const std::map<Exponents, long>& terms() const { return terms_; }

private:
    unsigned n_;
    std::map<Exponents, long> terms_;
};

// phi sampled at every a/p^level, a = 0..p^level.
struct PhiTable {
    std::uint64_t p;
    unsigned level;
    std::vector<Rational> values;

    const Rational& at(std::uint64_t a) const {
        require(a < values.size(), "phi table: index out of range");
        return values[a];
    }
};

namespace detail {
inline GammaElement diagonal_class(const DiagonalHypersurface& f, std::uint64_t p, unsigned e) {
    const std::uint64_t q = upow(p, e);
    GammaElement prod = GammaElement::one(p);
    for (long di : f.degrees()) prod = gamma_mul(prod, cyclic_class(p, q, static_cast<std::uint64_t>(di)));
    return prod;
}
}  // namespace detail

// All values phi(a/p^e), a = 0..p^e, from a single product of cyclic classes.
inline PhiTable phi_table_diagonal(const DiagonalHypersurface& f, std::uint64_t p, unsigned e) {
    require_prime(p);
    const std::uint64_t q = upow(p, e);
    GammaElement prod = detail::diagonal_class(f, p, e);
    Integer norm = ipow(p, static_cast<unsigned long>(f.n()) * e);
    PhiTable t{p, e, std::vector<Rational>(q + 1)};
    Rational running = 0;  // alpha_a as a prefix sum
    for (std::uint64_t a = 1; a <= q; ++a) {
        Rational c = prod.coeff(a - 1);
        if ((a - 1) % 2 == 0) running += c;
        else running -= c;
        t.values[a] = running / norm;
    }
    return t;
}

inline Rational phi_diagonal(const DiagonalHypersurface& f, const DyadicPoint& t) {
    require_prime(t.p);
    if (t.a == 0) return 0;
    GammaElement prod = detail::diagonal_class(f, t.p, t.e);
    return alpha_trunc(prod, t.a) / ipow(t.p, static_cast<unsigned long>(f.n()) * t.e);
}

namespace detail {

// Sparse polynomial over F_p keyed by exponent vectors.
using FpPoly = std::map<std::vector<std::uint64_t>, std::uint32_t>;

// product truncated to exponents < bound in every variable
inline FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::uint64_t p, std::uint64_t bound) {
    FpPoly out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            std::vector<std::uint64_t> e(ea.size());
            bool ok = true;
            for (std::size_t i = 0; i < e.size() && ok; ++i) {
                e[i] = ea[i] + eb[i];
                ok = e[i] < bound;
            }
            if (!ok) continue;
            auto& slot = out[e];
            slot = static_cast<std::uint32_t>((slot + std::uint64_t(ca) * cb) % p);
        }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

// f^a in F_p[x]/(x_i^q), using f^{p^j} = f(x^{p^j}) digit by digit.
inline FpPoly truncated_power(const GenericPolynomial& f, std::uint64_t p, std::uint64_t q, std::uint64_t a) {
    const unsigned n = f.n();
    FpPoly base;
    for (const auto& [e, c] : f.terms()) {
        long r = c % static_cast<long>(p);
        if (r < 0) r += static_cast<long>(p);
        if (r == 0) continue;
        base[std::vector<std::uint64_t>(e.begin(), e.end())] = static_cast<std::uint32_t>(r);
    }
    FpPoly result{{std::vector<std::uint64_t>(n, 0), 1}};
    std::uint64_t scale = 1;
    while (a > 0 && !result.empty()) {
        std::uint64_t digit = a % p;
        a /= p;
        if (scale >= q) {
            if (digit) result.clear();
            scale = q;
            continue;
        }
        std::uint64_t bound = (q + scale - 1) / scale;  // exponents e with e*scale < q
        FpPoly piece{{std::vector<std::uint64_t>(n, 0), 1}};
        for (std::uint64_t k = 0; k < digit; ++k) piece = fp_mul(piece, base, p, bound);
        FpPoly scaled;
        for (const auto& [e, c] : piece) {
            std::vector<std::uint64_t> se(e);
            for (auto& x : se) x *= scale;
            scaled[se] = c;
        }
        result = fp_mul(result, scaled, p, q);
        scale *= p;
    }
    return result;
}

}  // namespace detail

// dim A/(x_i^{p^e}, f^a) / p^{ne} by rank of multiplication by f^a on the monomial basis.
inline Rational phi_generic(const GenericPolynomial& f, const DyadicPoint& t) {
    require_prime(t.p);
    const unsigned n = f.n();
    const std::uint64_t q = upow(t.p, t.e);
    const std::uint64_t N = upow(q, n);
    require_oracle_size(N);
    if (t.a == 0) return 0;
    detail::FpPoly g = detail::truncated_power(f, t.p, q, t.a);
    if (g.empty()) return 1;
    std::vector<std::uint64_t> stride(n, 1);
    for (unsigned i = 1; i < n; ++i) stride[i] = stride[i - 1] * q;
    std::vector<std::pair<std::uint64_t, std::uint32_t>> gt;
    std::vector<std::vector<std::uint64_t>> gexp;
    for (const auto& [e, c] : g) {
        std::uint64_t idx = 0;
        for (unsigned i = 0; i < n; ++i) idx += e[i] * stride[i];
        gt.emplace_back(idx, c);
        gexp.push_back(e);
    }
    SparseFpMatrix T(static_cast<std::uint32_t>(t.p), N);
    std::vector<std::uint64_t> m(n, 0);
    for (std::uint64_t col = 0; col < N; ++col) {
        for (std::size_t k = 0; k < gt.size(); ++k) {
            bool ok = true;
            for (unsigned i = 0; i < n && ok; ++i) ok = m[i] + gexp[k][i] < q;
            if (ok) T.add(col + gt[k].first, col, gt[k].second);
        }
        for (unsigned i = 0; i < n; ++i) {  // advance the mixed-radix counter
            if (++m[i] < q) break;
            m[i] = 0;
        }
    }
    std::size_t rank = fp_rank(T);
    return make_rational(Integer(static_cast<unsigned long>(N - rank)), Integer(static_cast<unsigned long>(N)));
}

inline PhiTable phi_table_generic(const GenericPolynomial& f, std::uint64_t p, unsigned e) {
    const std::uint64_t q = upow(p, e);
    PhiTable t{p, e, std::vector<Rational>(q + 1)};
    for (std::uint64_t a = 0; a <= q; ++a) t.values[a] = phi_generic(f, DyadicPoint(p, a, e));
    return t;
}

inline Rational psi(const DiagonalHypersurface& f, const DyadicPoint& t) { return 1 - phi_diagonal(f, t); }
inline Rational psi(const GenericPolynomial& f, const DyadicPoint& t) { return 1 - phi_generic(f, t); }

namespace detail {
inline Integer colength(const Rational& phi, std::uint64_t p, unsigned long exponent, const char* what) {
    Rational v = phi * ipow(p, exponent);
    ensure(is_integer(v), std::string(what) + ": non-integral colength " + v.get_str());
    return v.get_num();
}
}  // namespace detail

inline Integer hk_value(const DiagonalHypersurface& f, std::uint64_t p, unsigned e) {
    require(e >= 1, "hk_value: e must be positive");
    return detail::colength(phi_diagonal(f, DyadicPoint(p, 1, e)), p, static_cast<unsigned long>(f.n()) * e,
                            "hk_value");
}

inline Integer fs_value(const DiagonalHypersurface& f, std::uint64_t p, unsigned e) {
    require(e >= 1, "fs_value: e must be positive");
    const std::uint64_t q = upow(p, e);
    return detail::colength(1 - phi_diagonal(f, DyadicPoint(p, q - 1, e)), p,
                            static_cast<unsigned long>(f.n()) * e, "fs_value");
}

// Smallest a with psi(a/p^e) = 0 by binary search (psi is non-increasing); returns
// the bracket [(a-1)/p^e, a/p^e].
template <class PsiAt>
std::pair<DyadicPoint, DyadicPoint> fpt_bracket_search(std::uint64_t p, unsigned e, PsiAt&& psi_at) {
    require(e >= 1, "fpt_bracket: e must be positive");
    std::uint64_t lo = 0, hi = upow(p, e);  // psi(lo) > 0, psi(hi) = 0
    while (hi - lo > 1) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (psi_at(mid) > 0) lo = mid;
        else hi = mid;
    }
    return {DyadicPoint(p, lo, e), DyadicPoint(p, hi, e)};
}

inline std::pair<DyadicPoint, DyadicPoint> fpt_bracket(const DiagonalHypersurface& f, std::uint64_t p, unsigned e) {
    PhiTable t = phi_table_diagonal(f, p, e);
    return fpt_bracket_search(p, e, [&](std::uint64_t a) { return Rational(1 - t.at(a)); });
}

inline std::pair<DyadicPoint, DyadicPoint> fpt_bracket(const GenericPolynomial& f, std::uint64_t p, unsigned e) {
    return fpt_bracket_search(p, e, [&](std::uint64_t a) { return psi(f, DyadicPoint(p, a, e)); });
}

// (T_{p^e|b} phi)(a/p^m) = phi((a + b p^m)/p^{m+e})
inline PhiTable restrict(const PhiTable& samples, unsigned e, std::uint64_t b) {
    require(samples.level >= e, "restrict: table level below e");
    const unsigned m = samples.level - e;
    const std::uint64_t pe = upow(samples.p, e), pm = upow(samples.p, m);
    if (b >= pe) throw HypothesisError("restrict: index out of range (b must be < p^e)");
    require(samples.values.size() == pe * pm + 1, "restrict: incomplete table");
    PhiTable out{samples.p, m, std::vector<Rational>(pm + 1)};
    for (std::uint64_t a = 0; a <= pm; ++a) out.values[a] = samples.values[a + b * pm];
    return out;
}

}  // namespace hkfs
