#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hkfs/rational.hpp"

namespace hkfs {

// Element of the representation ring over Q in the lambda basis, for a fixed characteristic p.
class GammaElement {
public:
    using Index = std::uint64_t;
    using Terms = std::map<Index, Rational>;

    explicit GammaElement(std::uint64_t p) : p_(p) { require(p >= 2, "characteristic must be at least 2"); }
    GammaElement(std::uint64_t p, const Terms& terms) : GammaElement(p) {
        for (const auto& [i, c] : terms) add(i, c);
    }

    static GammaElement lambda(std::uint64_t p, Index i, const Rational& c = 1) {
        GammaElement g(p);
        g.add(i, c);
        return g;
    }
    static GammaElement one(std::uint64_t p) { return lambda(p, 0); }

    std::uint64_t prime() const { return p_; }
    const Terms& terms() const& { return terms_; }
    Terms terms() && { return std::move(terms_); }
    bool is_zero() const { return terms_.empty(); }
    Rational coeff(Index i) const {
        auto it = terms_.find(i);
        return it == terms_.end() ? Rational(0) : it->second;
    }
    // 1 + largest index in the support (0 for the zero element).
    Index support_bound() const { return terms_.empty() ? 0 : terms_.rbegin()->first + 1; }

    void add(Index i, const Rational& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.emplace(i, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    GammaElement& operator+=(const GammaElement& o) {
        check_same(o);
        for (const auto& [i, c] : o.terms_) add(i, c);
        return *this;
    }
    GammaElement& operator-=(const GammaElement& o) {
        check_same(o);
        for (const auto& [i, c] : o.terms_) add(i, -c);
        return *this;
    }
    GammaElement& operator*=(const Rational& s) {
        if (s == 0) terms_.clear();
        for (auto& [i, c] : terms_) c *= s;
        return *this;
    }
    friend GammaElement operator+(GammaElement a, const GammaElement& b) { return a += b; }
    friend GammaElement operator-(GammaElement a, const GammaElement& b) { return a -= b; }
    friend GammaElement operator-(GammaElement a) { return a *= Rational(-1); }
    friend GammaElement operator*(GammaElement a, const Rational& s) { return a *= s; }
    friend GammaElement operator*(const Rational& s, GammaElement a) { return a *= s; }
    friend bool operator==(const GammaElement& a, const GammaElement& b) {
        return a.p_ == b.p_ && a.terms_ == b.terms_;
    }

    void check_same(const GammaElement& o) const {
        require(p_ == o.p_, "mismatched characteristic: " + std::to_string(p_) + " vs " + std::to_string(o.p_));
    }

    // "L0 + 3*L1 - 1/2*L4"
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [i, c] : terms_) {
            Rational mag = abs(c);
            if (out.empty()) {
                if (c < 0) out += "-";
            } else {
                out += c < 0 ? " - " : " + ";
            }
            if (mag != 1) out += mag.get_str() + "*";
            out += "L" + std::to_string(i);
        }
        return out;
    }

private:
    std::uint64_t p_;
    Terms terms_;
};

namespace detail {

using GTerms = std::vector<std::pair<std::uint64_t, Rational>>;

// lambda_i * lambda_j for i, j < p is the sum of lambda_k over this consecutive range.
inline std::pair<std::uint64_t, std::uint64_t> base_range(std::uint64_t p, std::uint64_t i, std::uint64_t j) {
    if (i > j) std::swap(i, j);
    std::uint64_t lo = j - i;
    std::uint64_t hi = std::min(i + j, 2 * p - 2 - i - j);
    return {lo, hi};
}

// Smallest p^L (L >= 1) exceeding x.
inline std::uint64_t level_bound(std::uint64_t p, std::uint64_t x) {
    std::uint64_t b = p;
    while (b <= x) {
        if (b > UINT64_MAX / p) return UINT64_MAX;
        b *= p;
    }
    return b;
}

class Accumulator {
public:
    explicit Accumulator(std::uint64_t bound) : dense_(bound <= (1u << 20)) {
        if (dense_) {
            vals_.resize(bound);
            hit_.assign(bound, 0);
        }
    }
    void add(std::uint64_t i, const Rational& c) {
        if (dense_) {
            vals_[i] += c;
            if (!hit_[i]) {
                hit_[i] = 1;
                touched_.push_back(i);
            }
        } else {
            map_[i] += c;
        }
    }
    GTerms take() {
        GTerms out;
        if (dense_) {
            std::sort(touched_.begin(), touched_.end());
            for (auto i : touched_)
                if (vals_[i] != 0) out.emplace_back(i, std::move(vals_[i]));
        } else {
            for (auto& [i, c] : map_)
                if (c != 0) out.emplace_back(i, std::move(c));
        }
        return out;
    }

private:
    bool dense_;
    std::vector<Rational> vals_;
    std::vector<char> hit_;
    std::vector<std::uint64_t> touched_;
    std::map<std::uint64_t, Rational> map_;
};

inline bool is_scalar(const GTerms& u) { return u.size() == 1 && u[0].first == 0; }

// Product of two sorted term lists. Every index m = p*q + r is read as
// lambda_m = theta(lambda_q) * lambda_s with s = r (q even) or p-1-r (q odd), and
// theta(lambda_k) * lambda_j = lambda_{p*k + (k even ? j : p-1-j)} for j < p.
inline GTerms mul_terms(std::uint64_t p, const GTerms& u, const GTerms& v) {
    if (u.empty() || v.empty()) return {};
    if (is_scalar(u) || is_scalar(v)) {
        const GTerms& s = is_scalar(u) ? u : v;
        const GTerms& w = is_scalar(u) ? v : u;
        GTerms out = w;
        for (auto& t : out) t.second *= s[0].second;
        return out;
    }
    const std::uint64_t top = std::max(u.back().first, v.back().first);
    if (top < p) {
        Accumulator acc(p);
        for (const auto& [i, a] : u)
            for (const auto& [j, b] : v) {
                Rational ab = a * b;
                auto [lo, hi] = base_range(p, i, j);
                for (std::uint64_t k = lo; k <= hi; ++k) acc.add(k, ab);
            }
        return acc.take();
    }
    std::vector<GTerms> U(p), V(p);
    auto split = [p](const GTerms& x, std::vector<GTerms>& parts) {
        for (const auto& [m, c] : x) {
            std::uint64_t q = m / p, r = m % p;
            std::uint64_t s = (q % 2 == 0) ? r : p - 1 - r;
            parts[s].emplace_back(q, c);
        }
    };
    split(u, U);
    split(v, V);
    Accumulator acc(level_bound(p, top));
    for (std::uint64_t s = 0; s < p; ++s) {
        if (U[s].empty()) continue;
        for (std::uint64_t t = 0; t < p; ++t) {
            if (V[t].empty()) continue;
            GTerms w = mul_terms(p, U[s], V[t]);
            if (w.empty()) continue;
            auto [lo, hi] = base_range(p, s, t);
            for (std::uint64_t j = lo; j <= hi; ++j)
                for (const auto& [k, c] : w) acc.add(p * k + ((k % 2 == 0) ? j : p - 1 - j), c);
        }
    }
    return acc.take();
}

inline GTerms to_terms(const GammaElement& g) {
    GTerms t;
    t.reserve(g.terms().size());
    for (const auto& [i, c] : g.terms()) t.emplace_back(i, c);
    return t;
}

inline GammaElement from_terms(std::uint64_t p, GTerms&& t) {
    GammaElement::Terms m;
    for (auto& [i, c] : t) m.emplace_hint(m.end(), i, std::move(c));
    return GammaElement(p, m);
}

}  // namespace detail

inline GammaElement gamma_mul(const GammaElement& u, const GammaElement& v) {
    u.check_same(v);
    return detail::from_terms(u.prime(), detail::mul_terms(u.prime(), detail::to_terms(u), detail::to_terms(v)));
}

inline GammaElement gamma_pow(const GammaElement& u, unsigned k) {
    GammaElement r = GammaElement::one(u.prime());
    GammaElement b = u;
    while (k) {
        if (k & 1) r = gamma_mul(r, b);
        k >>= 1;
        if (k) b = gamma_mul(b, b);
    }
    return r;
}

inline GammaElement gamma_product(std::uint64_t p, const std::vector<GammaElement>& factors) {
    GammaElement r = GammaElement::one(p);
    for (const auto& f : factors) r = gamma_mul(r, f);
    return r;
}

inline GammaElement theta(const GammaElement& u) {
    const std::uint64_t p = u.prime();
    GammaElement out(p);
    for (const auto& [i, c] : u.terms()) {
        require(i <= (UINT64_MAX - p) / p, "theta: index overflow");
        out.add(i % 2 == 0 ? p * i : p * i + p - 1, c);
    }
    return out;
}

inline GammaElement theta_pow(GammaElement u, unsigned e) {
    for (unsigned i = 0; i < e; ++i) u = theta(u);
    return u;
}

inline Rational alpha(const GammaElement& u) { return u.coeff(0); }

// dim M / T^a M, extended linearly: alpha_a(lambda_i) = (-1)^i [i < a].
inline Rational alpha_trunc(const GammaElement& u, std::uint64_t a) {
    require(a >= 1, "alpha_trunc: a must be positive");
    Rational s = 0;
    for (const auto& [i, c] : u.terms()) {
        if (i >= a) break;
        if (i % 2 == 0) s += c;
        else s -= c;
    }
    return s;
}

// delta_m = sum_{i<m} (-1)^i lambda_i
inline GammaElement delta(std::uint64_t p, std::uint64_t m) {
    GammaElement g(p);
    for (std::uint64_t i = 0; i < m; ++i) g.add(i, i % 2 == 0 ? 1 : -1);
    return g;
}

inline GammaElement delta_fractional(std::uint64_t p, const Rational& t) {
    require(t > 0, "delta_fractional: t must be positive");
    Integer fl = floor_of(t);
    Rational frac = t - fl;
    require(fl.fits_ulong_p(), "delta_fractional: t too large");
    std::uint64_t m = fl.get_ui();
    return delta(p, m) * (1 - frac) + delta(p, m + 1) * frac;
}

// Coefficients in the delta basis: lambda_i = (-1)^i (delta_{i+1} - delta_i).
inline std::map<std::uint64_t, Rational> to_delta_basis(const GammaElement& u) {
    std::map<std::uint64_t, Rational> out;
    auto add = [&](std::uint64_t m, const Rational& c) {
        if (m == 0 || c == 0) return;  // delta_0 = 0
        Rational& slot = out[m];
        slot += c;
        if (slot == 0) out.erase(m);
    };
    for (const auto& [i, c] : u.terms()) {
        Rational s = (i % 2 == 0) ? c : Rational(-c);
        add(i + 1, s);
        add(i, -s);
    }
    return out;
}

// Class of K[x]/(x^N) with T acting as x^d.
inline GammaElement cyclic_class(std::uint64_t p, std::uint64_t N, std::uint64_t d) {
    require(N >= 1 && d >= 1, "cyclic_class: N and d must be positive");
    std::uint64_t q = N / d, s = N % d;
    const long dd = static_cast<long>(d), ss = static_cast<long>(s);
    GammaElement g(p);
    for (std::uint64_t i = 0; i < q; ++i) g.add(i, Rational(i % 2 == 0 ? dd : -dd));
    if (s) g.add(q, Rational(q % 2 == 0 ? ss : -ss));
    return g;
}

inline Integer d_number_repring(std::uint64_t p, const std::vector<long>& k) {
    GammaElement prod = GammaElement::one(p);
    for (long ki : k) {
        require(ki >= 1, "d_number: k_i must be positive");
        prod = gamma_mul(prod, delta(p, static_cast<std::uint64_t>(ki)));
    }
    Rational a = alpha(prod);
    ensure(is_integer(a) && a >= 0, "d_number_repring: non-integral alpha");
    return a.get_num();
}

}  // namespace hkfs
