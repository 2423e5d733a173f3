#pragma once

// Slow, independent reference computations used only by the tests.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "hkfs/hkfs.hpp"

namespace oracle {

using hkfs::Integer;
using hkfs::Rational;
using Dense = std::vector<std::vector<std::uint64_t>>;

inline std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
    std::uint64_t r = 1;
    for (std::uint64_t e = p - 2, b = a % p; e; e >>= 1, b = b * b % p)
        if (e & 1) r = r * b % p;
    return r;
}

// Plain row reduction over F_p.
inline std::size_t dense_rank(Dense m, std::uint64_t p) {
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][c] % p == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[rank]);
        std::uint64_t inv = inverse_mod(m[rank][c], p);
        for (auto& x : m[rank]) x = x % p * inv % p;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][c] % p == 0) continue;
            std::uint64_t f = m[r][c] % p;
            for (std::size_t k = 0; k < cols; ++k) m[r][k] = (m[r][k] % p + p * p - f * m[rank][k]) % p;
        }
        ++rank;
    }
    return rank;
}

inline Dense mat_mul(const Dense& a, const Dense& b, std::uint64_t p) {
    const std::size_t n = a.size();
    Dense c(n, std::vector<std::uint64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (!a[i][k]) continue;
            for (std::size_t j = 0; j < n; ++j) c[i][j] = (c[i][j] + a[i][k] * b[k][j]) % p;
        }
    return c;
}

// N = J_a (x) 1 + 1 (x) J_b acting on K^a (x) K^b.
inline Dense jordan_tensor(std::uint64_t a, std::uint64_t b) {
    const std::size_t n = a * b;
    Dense N(n, std::vector<std::uint64_t>(n, 0));
    for (std::uint64_t i = 0; i < a; ++i)
        for (std::uint64_t j = 0; j < b; ++j) {
            std::size_t col = i * b + j;
            if (i + 1 < a) N[(i + 1) * b + j][col] += 1;
            if (j + 1 < b) N[i * b + j + 1][col] += 1;
        }
    return N;
}

// delta_a * delta_b by decomposing the tensor product of two Jordan blocks into blocks.
inline hkfs::GammaElement jordan_product(std::uint64_t p, std::uint64_t a, std::uint64_t b) {
    Dense N = jordan_tensor(a, b);
    std::vector<std::size_t> rk{a * b};  // rk[k] = rank N^k
    Dense P = N;
    while (rk.back() > 0) {
        rk.push_back(dense_rank(P, p));
        P = mat_mul(P, N, p);
    }
    // blocks of size exactly k: rk[k-1] - 2 rk[k] + rk[k+1]
    hkfs::GammaElement out(p);
    for (std::size_t k = 1; k < rk.size(); ++k) {
        long next = k + 1 < rk.size() ? static_cast<long>(rk[k + 1]) : 0;
        long cnt = static_cast<long>(rk[k - 1]) - 2 * static_cast<long>(rk[k]) + next;
        if (cnt) out += hkfs::delta(p, k) * Rational(cnt);
    }
    return out;
}

// dim of the cokernel of (N_{a,b})^c.
inline Integer jordan_coker(std::uint64_t p, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    Dense N = jordan_tensor(a, b);
    Dense P(a * b, std::vector<std::uint64_t>(a * b, 0));
    for (std::size_t i = 0; i < a * b; ++i) P[i][i] = 1;
    for (std::uint64_t i = 0; i < c; ++i) P = mat_mul(P, N, p);
    return Integer(static_cast<unsigned long>(a * b - dense_rank(P, p)));
}

// phi(a/q) for a polynomial with small integer coefficients, by dense linear algebra on
// K[x]/(x_1^q, ..., x_n^q).
inline Rational colength_phi(const hkfs::GenericPolynomial& f, std::uint64_t p, std::uint64_t q, std::uint64_t a) {
    const unsigned n = f.n();
    std::size_t N = 1;
    for (unsigned i = 0; i < n; ++i) N *= q;
    auto index = [&](const std::vector<unsigned>& e) {
        std::size_t r = 0;
        for (unsigned x : e) r = r * q + x;
        return r;
    };
    auto expo = [&](std::size_t r) {
        std::vector<unsigned> e(n);
        for (unsigned i = n; i-- > 0;) {
            e[i] = static_cast<unsigned>(r % q);
            r /= q;
        }
        return e;
    };
    // dense coefficient vector of f^a in the box
    std::vector<std::uint64_t> fa(N, 0), fv(N, 0);
    fa[0] = 1;
    for (const auto& [e, c] : f.terms()) {
        bool inside = true;
        for (unsigned x : e) inside = inside && x < q;
        if (!inside) continue;
        long r = c % static_cast<long>(p);
        fv[index(e)] = static_cast<std::uint64_t>(r < 0 ? r + static_cast<long>(p) : r);
    }
    auto mul = [&](const std::vector<std::uint64_t>& u, const std::vector<std::uint64_t>& v) {
        std::vector<std::uint64_t> w(N, 0);
        for (std::size_t i = 0; i < N; ++i) {
            if (!u[i]) continue;
            auto ei = expo(i);
            for (std::size_t j = 0; j < N; ++j) {
                if (!v[j]) continue;
                auto ej = expo(j);
                bool inside = true;
                for (unsigned k = 0; k < n; ++k) {
                    ej[k] += ei[k];
                    inside = inside && ej[k] < q;
                }
                if (inside) w[index(ej)] = (w[index(ej)] + u[i] * v[j]) % p;
            }
        }
        return w;
    };
    for (std::uint64_t i = 0; i < a; ++i) fa = mul(fa, fv);
    Dense M(N, std::vector<std::uint64_t>(N, 0));
    for (std::size_t col = 0; col < N; ++col) {
        std::vector<std::uint64_t> m(N, 0);
        m[col] = 1;
        auto img = mul(m, fa);
        for (std::size_t r = 0; r < N; ++r) M[r][col] = img[r];
    }
    return hkfs::make_rational(Integer(static_cast<unsigned long>(N - dense_rank(M, p))),
                               Integer(static_cast<unsigned long>(N)));
}

// Coefficients of sec z + tan z = (1 + sin z)/cos z through z^order, by power-series division.
inline std::vector<Rational> sec_plus_tan(unsigned order) {
    std::vector<Rational> s(order + 1), c(order + 1);
    Rational fact = 1;
    for (unsigned k = 0; k <= order; ++k) {
        if (k) fact *= k;
        Rational term = 1 / fact;
        if (k % 2 == 0) c[k] = (k / 2) % 2 ? Rational(-term) : term;
        else s[k] = ((k - 1) / 2) % 2 ? Rational(-term) : term;
    }
    s[0] += 1;
    std::vector<Rational> q(order + 1);
    for (unsigned k = 0; k <= order; ++k) {
        Rational v = s[k];
        for (unsigned j = 1; j <= k; ++j) v -= c[j] * q[k - j];
        q[k] = v / c[0];
    }
    return q;
}

// E_k(t) + E_k(t+1) = 2 t^k determines E_k; solve it top-down for the coefficients.
inline hkfs::Polynomial euler_by_functional_equation(unsigned k) {
    // unknown e_0..e_k with e_k = 1; coefficient of t^j in E(t) + E(t+1) is
    // 2 e_j + sum_{i>j} C(i,j) e_i, which must equal 2[j = k].
    std::vector<Rational> e(k + 1);
    e[k] = 1;
    for (unsigned j = k; j-- > 0;) {
        Rational s = 0;
        for (unsigned i = j + 1; i <= k; ++i) s += Rational(hkfs::binomial(i, j)) * e[i];
        e[j] = -s / 2;
    }
    return hkfs::Polynomial(e);
}

inline std::vector<long> random_degrees(std::mt19937_64& rng, unsigned n, long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    std::vector<long> out(n);
    for (auto& x : out) x = d(rng);
    return out;
}

inline hkfs::GammaElement random_gamma(std::mt19937_64& rng, std::uint64_t p, std::uint64_t bound, int terms = 3) {
    std::uniform_int_distribution<std::uint64_t> idx(0, bound - 1);
    std::uniform_int_distribution<long> coef(-4, 4);
    hkfs::GammaElement g(p);
    for (int i = 0; i < terms; ++i) g.add(idx(rng), Rational(coef(rng)));
    return g;
}

}  // namespace oracle
