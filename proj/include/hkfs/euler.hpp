#pragma once

#include <vector>

#include "hkfs/polynomial.hpp"

namespace hkfs {

inline Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

// E_k(t) from 2 e^{xt}/(e^x + 1): E_k(t) = t^k - (1/2) sum_{j<k} C(k,j) E_j(t).
inline Polynomial euler_polynomial(unsigned k) {
    std::vector<Polynomial> E;
    E.reserve(k + 1);
    for (unsigned m = 0; m <= k; ++m) {
        Polynomial acc = Polynomial::monomial(1, m);
        for (unsigned j = 0; j < m; ++j) acc -= E[j] * make_rational(binomial(m, j), 2);
        E.push_back(std::move(acc));
    }
    return E[k];
}

// Bernoulli numbers with B_1 = -1/2.
inline Rational bernoulli_number(unsigned k) {
    std::vector<Rational> B(k + 1);
    for (unsigned m = 0; m <= k; ++m) {
        if (m == 0) {
            B[0] = 1;
            continue;
        }
        Rational s = 0;
        for (unsigned j = 0; j < m; ++j) s += Rational(binomial(m + 1, j)) * B[j];
        B[m] = -s / (m + 1);
    }
    return B[k];
}

// Euler numbers in the sech convention: E_0 = 1, E_2 = -1, E_4 = 5, odd ones vanish.
inline Integer euler_number(unsigned k) {
    if (k % 2) return 0;
    std::vector<Integer> E(k + 1);
    E[0] = 1;
    for (unsigned m = 2; m <= k; m += 2) {
        Integer s = 0;
        for (unsigned j = 2; j <= m; j += 2) s += binomial(m, j) * E[m - j];
        E[m] = -s;
    }
    return E[k];
}

// Zigzag number A_k via the Seidel-Entringer boustrophedon triangle.
inline Integer zigzag_number(unsigned k) {
    std::vector<Integer> row{1};
    for (unsigned n = 1; n <= k; ++n) {
        std::vector<Integer> next(n + 1);
        next[0] = 0;
        for (unsigned j = 1; j <= n; ++j) next[j] = next[j - 1] + row[n - j];
        row = std::move(next);
    }
    return row[k];
}

// Coefficient of z^{n-1} in sec z + tan z.
inline Rational sec_tan_coefficient(unsigned n) {
    require(n >= 1, "sec_tan_coefficient: n must be positive");
    return make_rational(zigzag_number(n - 1), factorial(n - 1));
}

}  // namespace hkfs
