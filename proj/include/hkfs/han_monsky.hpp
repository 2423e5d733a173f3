#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "hkfs/gamma.hpp"
#include "hkfs/polynomial.hpp"
#include "hkfs/primes.hpp"
#include "hkfs/sparse_rank.hpp"

namespace hkfs {

struct DNumberQuery {
    std::uint64_t p;
    std::vector<long> k;
};

inline void validate(const DNumberQuery& q) {
    require_prime(q.p);
    require(!q.k.empty(), "d_number: need at least one exponent");
    for (long ki : q.k) require(ki >= 1, "d_number: k_i must be positive");
}

// Folded coefficient formula: sum over lambda of c_{gamma - p*lambda}.
inline Integer d_number_hm(const DNumberQuery& q) {
    validate(q);
    long sum = 0;
    for (long ki : q.k) {
        if (static_cast<std::uint64_t>(ki) > q.p) throw HypothesisError("k exceeds p");
        sum += ki;
    }
    long twice_gamma = sum - static_cast<long>(q.k.size());
    if (twice_gamma % 2 != 0) throw HypothesisError("parity violation");
    long gamma = twice_gamma / 2;
    Polynomial c = cyclotomic_quotient(q.k);
    const long P = static_cast<long>(q.p);
    long start = gamma % P;
    Rational total = 0;
    for (long idx = start; idx <= c.degree(); idx += P) total += c.coeff(static_cast<std::size_t>(idx));
    return total.get_num();
}

// dim F_p[x]/(x_i^{k_i}, x_1 + ... + x_n) = prod k_i - rank(multiplication by the sum).
inline Integer d_number_oracle(const DNumberQuery& q) {
    validate(q);
    std::uint64_t dim = 1;
    for (long ki : q.k) {
        dim *= static_cast<std::uint64_t>(ki);
        require_oracle_size(dim);
    }
    const std::size_t n = q.k.size();
    std::vector<std::uint64_t> stride(n, 1);
    for (std::size_t i = 1; i < n; ++i) stride[i] = stride[i - 1] * static_cast<std::uint64_t>(q.k[i - 1]);
    SparseFpMatrix T(static_cast<std::uint32_t>(q.p), dim);
    for (std::uint64_t m = 0; m < dim; ++m) {
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t exp = (m / stride[i]) % static_cast<std::uint64_t>(q.k[i]);
            if (exp + 1 < static_cast<std::uint64_t>(q.k[i])) T.add(m + stride[i], m, 1);
        }
    }
    return Integer(static_cast<unsigned long>(dim - fp_rank(T)));
}

}  // namespace hkfs
