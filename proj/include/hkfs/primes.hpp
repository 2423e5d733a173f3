#pragma once

#include <cstdint>
#include <string>

#include "hkfs/errors.hpp"

namespace hkfs {

namespace detail {
inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}
inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}
}  // namespace detail

// Miller-Rabin with bases 2..17: deterministic below 3.4e14; above that the
// remaining bases up to 37 make it deterministic for all 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    static constexpr std::uint64_t small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto q : small) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    const unsigned nbases = n < 341550071728321ULL ? 7 : 12;
    for (unsigned b = 0; b < nbases; ++b) {
        std::uint64_t x = detail::powmod(small[b], d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = detail::mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline void require_prime(std::uint64_t p) {
    require(is_prime(p), std::to_string(p) + " is not prime");
}

}  // namespace hkfs
