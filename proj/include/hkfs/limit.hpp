#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hkfs/euler.hpp"
#include "hkfs/phi.hpp"
#include "hkfs/polynomial.hpp"

namespace hkfs {

// Polynomial pieces on [b_0, b_1], ..., [b_{k-1}, b_k] with b_0 = 0, b_k = 1.
class PiecewisePolynomial {
public:
    PiecewisePolynomial() = default;
    PiecewisePolynomial(std::vector<Rational> breaks, std::vector<Polynomial> pieces)
        : breaks_(std::move(breaks)), pieces_(std::move(pieces)) {
        require(breaks_.size() >= 2 && pieces_.size() + 1 == breaks_.size(),
                "piecewise polynomial: need one piece per interval");
        for (std::size_t i = 1; i < breaks_.size(); ++i)
            require(breaks_[i - 1] < breaks_[i], "piecewise polynomial: breakpoints must increase");
    }

    const std::vector<Rational>& breakpoints() const { return breaks_; }
    const std::vector<Polynomial>& pieces() const { return pieces_; }

    // Index of the interval holding t; breakpoints go to the interval on their left.
    std::size_t piece_index(const Rational& t) const {
        require(t >= breaks_.front() && t <= breaks_.back(), "point outside the domain");
        for (std::size_t i = 0; i + 1 < breaks_.size(); ++i)
            if (t <= breaks_[i + 1]) return i;
        return pieces_.size() - 1;
    }
    Rational operator()(const Rational& t) const { return pieces_[piece_index(t)](t); }

    bool is_continuous() const {
        for (std::size_t i = 1; i + 1 < breaks_.size(); ++i)
            if (pieces_[i - 1](breaks_[i]) != pieces_[i](breaks_[i])) return false;
        return true;
    }

    PiecewisePolynomial derivative() const {
        std::vector<Polynomial> d;
        for (const auto& q : pieces_) d.push_back(q.derivative());
        return PiecewisePolynomial(breaks_, std::move(d));
    }

    // Adjacent identical pieces fused.
    PiecewisePolynomial canonical() const {
        std::vector<Rational> b{breaks_.front()};
        std::vector<Polynomial> q;
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            if (!q.empty() && q.back() == pieces_[i]) {
                b.back() = breaks_[i + 1];
            } else {
                q.push_back(pieces_[i]);
                b.push_back(breaks_[i + 1]);
            }
        }
        return PiecewisePolynomial(std::move(b), std::move(q));
    }

    friend PiecewisePolynomial operator+(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
        return combine(a, b, [](const Polynomial& x, const Polynomial& y) { return x + y; });
    }
    friend PiecewisePolynomial operator*(const Rational& s, const PiecewisePolynomial& a) {
        std::vector<Polynomial> q;
        for (const auto& x : a.pieces_) q.push_back(x * s);
        return PiecewisePolynomial(a.breaks_, std::move(q));
    }

    friend bool operator==(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
        PiecewisePolynomial ca = a.canonical(), cb = b.canonical();
        return ca.breaks_ == cb.breaks_ && ca.pieces_ == cb.pieces_;
    }

    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            if (i) out += "\n";
            out += "[" + breaks_[i].get_str() + ", " + breaks_[i + 1].get_str() + "]: " + pieces_[i].to_string("t");
        }
        return out;
    }

private:
    template <class Op>
    static PiecewisePolynomial combine(const PiecewisePolynomial& a, const PiecewisePolynomial& b, Op op) {
        require(a.breaks_.front() == b.breaks_.front() && a.breaks_.back() == b.breaks_.back(),
                "piecewise polynomials on different domains");
        std::set<Rational> all(a.breaks_.begin(), a.breaks_.end());
        all.insert(b.breaks_.begin(), b.breaks_.end());
        std::vector<Rational> br(all.begin(), all.end());
        std::vector<Polynomial> q;
        for (std::size_t i = 0; i + 1 < br.size(); ++i) {
            Rational mid = (br[i] + br[i + 1]) / 2;
            q.push_back(op(a.pieces_[a.piece_index(mid)], b.pieces_[b.piece_index(mid)]));
        }
        return PiecewisePolynomial(std::move(br), std::move(q));
    }

    std::vector<Rational> breaks_;
    std::vector<Polynomial> pieces_;
};

namespace detail {

// Multiset of signed sums eps_1/d_1 + ... + eps_n/d_n, each weighted by eps_1...eps_n.
inline std::map<Rational, Integer> signed_sums(const DiagonalHypersurface& f) {
    std::map<Rational, Integer> acc{{Rational(0), Integer(1)}};
    for (long di : f.degrees()) {
        Rational inv = make_rational(1, di);
        std::map<Rational, Integer> next;
        for (const auto& [s, w] : acc) {
            next[s + inv] += w;
            next[s - inv] -= w;
        }
        acc.clear();
        for (auto& [s, w] : next)
            if (w != 0) acc.emplace(s, w);
    }
    return acc;
}

inline long lambda_max(const DiagonalHypersurface& f) {
    return floor_of((1 + f.inverse_sum()) / 2).get_si();
}

}  // namespace detail

inline std::vector<Rational> breakpoints(const DiagonalHypersurface& f) {
    std::set<Rational> pts{Rational(0), Rational(1)};
    Rational total = f.inverse_sum();
    long lmax = floor_of((1 + 2 * total) / 2).get_si() + 1;
    // sigma ranges over all signed sums, with or without cancelling weights
    std::set<Rational> sigma{Rational(0)};
    for (long di : f.degrees()) {
        std::set<Rational> next;
        for (const auto& s : sigma) {
            next.insert(s + make_rational(1, di));
            next.insert(s - make_rational(1, di));
        }
        sigma = std::move(next);
    }
    for (const auto& s : sigma)
        for (long lam = -lmax; lam <= lmax; ++lam) {
            Rational x = s - 2 * lam;
            if (x >= 0 && x <= 1) pts.insert(x);
        }
    return {pts.begin(), pts.end()};
}

// C_lambda(t) = sum over eps_0..eps_n of (eps_0 ... eps_n)(eps_0 t + sigma - 2 lambda)^n,
// keeping the terms whose argument is nonnegative on the interval.
inline PiecewisePolynomial c_lambda(const DiagonalHypersurface& f, long lambda) {
    require(lambda >= 0, "c_lambda: lambda must be nonnegative");
    const unsigned n = f.n();
    std::vector<Rational> br = breakpoints(f);
    auto sums = detail::signed_sums(f);
    std::vector<Polynomial> pieces;
    for (std::size_t i = 0; i + 1 < br.size(); ++i) {
        Rational mid = (br[i] + br[i + 1]) / 2;
        Polynomial acc;
        for (const auto& [s, w] : sums)
            for (int e0 : {1, -1}) {
                Rational c = s - 2 * lambda;
                if (e0 * mid + c <= 0) continue;
                Polynomial term = pow(Polynomial::linear(e0, c), n);
                acc += term * Rational(e0 * w);
            }
        pieces.push_back(std::move(acc));
    }
    return PiecewisePolynomial(std::move(br), std::move(pieces));
}

inline PiecewisePolynomial limit_phi(const DiagonalHypersurface& f) {
    const unsigned n = f.n();
    PiecewisePolynomial sum = c_lambda(f, 0);
    for (long lam = 1; lam <= detail::lambda_max(f); ++lam) sum = sum + Rational(2) * c_lambda(f, lam);
    Rational scale = Rational(f.degree_product()) / Rational(ipow(2, n) * factorial(n));
    PiecewisePolynomial phi = scale * sum;
    ensure(phi.is_continuous(), "limit_phi: pieces disagree at a breakpoint");
    ensure(phi(0) == 0 && phi(1) == 1, "limit_phi: boundary values are not 0 and 1");
    return phi;
}

struct OneSided {
    std::optional<Rational> left;
    std::optional<Rational> right;
};

inline OneSided one_sided_derivatives(const PiecewisePolynomial& pp, const Rational& t) {
    const auto& br = pp.breakpoints();
    if (t < br.front() || t > br.back()) throw HypothesisError("one_sided_derivatives: t outside [0,1]");
    OneSided out;
    for (std::size_t i = 0; i < pp.pieces().size(); ++i) {
        const Rational &lo = br[i], &hi = br[i + 1];
        Polynomial d = pp.pieces()[i].derivative();
        if (t > lo && t <= hi) out.left = d(t);
        if (t >= lo && t < hi) out.right = d(t);
    }
    return out;
}

namespace detail {
// sum over eps with offset + sigma - 2 lambda >= 0 of (eps_1...eps_n)(offset + sigma - 2 lambda)^k
inline Rational filtered_power_sum(const std::map<Rational, Integer>& sums, const Rational& offset, long lambda,
                                   unsigned k) {
    Rational acc = 0;
    for (const auto& [s, w] : sums) {
        Rational x = offset + s - 2 * lambda;
        if (x < 0) continue;
        acc += Rational(w) * rpow(x, k);
    }
    return acc;
}
}  // namespace detail

inline Rational limit_hk(const DiagonalHypersurface& f) {
    const unsigned n = f.n();
    auto sums = detail::signed_sums(f);
    Rational total = 0;
    for (long lam = 0; lam <= detail::lambda_max(f); ++lam) {
        Rational D = detail::filtered_power_sum(sums, 0, lam, n - 1);
        total += lam == 0 ? D : 2 * D;
    }
    return Rational(f.degree_product()) / Rational(ipow(2, n - 1) * factorial(n - 1)) * total;
}

inline Rational limit_fs(const DiagonalHypersurface& f) {
    const unsigned n = f.n();
    auto sums = detail::signed_sums(f);
    Rational total = 0;
    for (long lam = 0; lam <= detail::lambda_max(f); ++lam) {
        Rational B = detail::filtered_power_sum(sums, 1, lam, n - 1) + detail::filtered_power_sum(sums, -1, lam, n - 1);
        total += lam == 0 ? B : 2 * B;
    }
    return Rational(f.degree_product()) / Rational(ipow(2, n) * factorial(n - 1)) * total;
}

inline Rational lct(const DiagonalHypersurface& f) { return std::min(f.inverse_sum(), Rational(1)); }

// Fermat quadric limit through Euler polynomials.
inline PiecewisePolynomial quadric_limit_phi(unsigned n) {
    require(n >= 2, "quadric_limit_phi: n must be at least 2");
    Polynomial En = euler_polynomial(n);
    Rational c = Rational(ipow(2, n - 1)) / Rational(factorial(n));
    if (n % 2 == 0) {
        if ((n / 2) % 2) c = -c;
        return PiecewisePolynomial({Rational(0), Rational(1)}, {Polynomial::t() + En * c});
    }
    if (((n - 1) / 2) % 2) c = -c;
    Rational half = make_rational(1, 2);
    Polynomial left = Polynomial::t() + En.shifted(half) * c;
    Polynomial right = Polynomial::t() - En.shifted(-half) * c;
    return PiecewisePolynomial({Rational(0), half, Rational(1)}, {left, right});
}

struct ConvergenceRow {
    std::uint64_t p;
    Rational sup_error;   // max over a of |phi_{f,p}(a/p) - phi_f(a/p)|
    Rational scaled_sup;  // p * sup_error
    Rational q0;          // p * phi_{f,p}(1/p)
    Rational q1;          // p * (1 - phi_{f,p}((p-1)/p))
};

struct ConvergenceReport {
    Rational hk_limit;
    Rational fs_limit;
    Integer lipschitz_bound;  // d_1 ... d_n
    std::vector<ConvergenceRow> rows;
    bool sup_strictly_decreasing = true;
    bool scaled_sup_bounded = true;
    bool q0_monotone = true;  // |q0 - hk_limit| non-increasing
    bool q1_monotone = true;  // |q1 - fs_limit| non-increasing
};

// Grid a/p, a = 0..p, for each prime in the given order.
inline ConvergenceReport convergence_report(const DiagonalHypersurface& f, const std::vector<std::uint64_t>& primes) {
    ConvergenceReport rep;
    PiecewisePolynomial lim = limit_phi(f);
    rep.hk_limit = limit_hk(f);
    rep.fs_limit = limit_fs(f);
    rep.lipschitz_bound = f.degree_product();
    for (std::uint64_t p : primes) {
        require_prime(p);
        PhiTable t = phi_table_diagonal(f, p, 1);
        ConvergenceRow row{p, 0, 0, 0, 0};
        for (std::uint64_t a = 0; a <= p; ++a) {
            Rational err = abs(t.at(a) - lim(make_rational(static_cast<long>(a), static_cast<long>(p))));
            if (err > row.sup_error) row.sup_error = err;
        }
        Rational P(Integer(static_cast<unsigned long>(p)));
        row.scaled_sup = P * row.sup_error;
        row.q0 = P * t.at(1);
        row.q1 = P * (1 - t.at(p - 1));
        if (!rep.rows.empty()) {
            const auto& prev = rep.rows.back();
            if (!(row.sup_error < prev.sup_error)) rep.sup_strictly_decreasing = false;
            if (abs(row.q0 - rep.hk_limit) > abs(prev.q0 - rep.hk_limit)) rep.q0_monotone = false;
            if (abs(row.q1 - rep.fs_limit) > abs(prev.q1 - rep.fs_limit)) rep.q1_monotone = false;
        }
        if (row.scaled_sup > Rational(rep.lipschitz_bound)) rep.scaled_sup_bounded = false;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace hkfs
