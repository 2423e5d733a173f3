#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hkfs/errors.hpp"

namespace hkfs {

// Upper bound on the dimension of brute-force quotient computations.
// HKFS_ORACLE_LIMIT overrides the default of 10^6.
inline std::uint64_t oracle_limit() {
    if (const char* env = std::getenv("HKFS_ORACLE_LIMIT")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return 1000000;
}

inline void require_oracle_size(std::uint64_t dim) {
    if (dim > oracle_limit())
        throw HypothesisError("too large: dimension " + std::to_string(dim) + " exceeds oracle limit " +
                              std::to_string(oracle_limit()) + " (set HKFS_ORACLE_LIMIT to raise it)");
}

// Square matrix over F_p stored by columns. Duplicate (row, col) entries accumulate.
class SparseFpMatrix {
public:
    using Entry = std::pair<std::uint32_t, std::uint32_t>;  // (row, value)

    SparseFpMatrix(std::uint32_t p, std::size_t dim) : p_(p), cols_(dim) {
        require(p >= 2, "modulus must be at least 2");
    }

    std::uint32_t modulus() const { return p_; }
    std::size_t dimension() const { return cols_.size(); }

    void add(std::size_t row, std::size_t col, std::int64_t value) {
        require(row < cols_.size() && col < cols_.size(), "matrix index out of range");
        std::int64_t v = value % static_cast<std::int64_t>(p_);
        if (v < 0) v += p_;
        if (v == 0) return;
        cols_[col].emplace_back(static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(v));
    }

    // Column with rows sorted and duplicates merged, zeros dropped.
    std::vector<Entry> column(std::size_t col) const {
        std::vector<Entry> c = cols_[col];
        std::sort(c.begin(), c.end());
        std::vector<Entry> out;
        for (const auto& [r, v] : c) {
            if (!out.empty() && out.back().first == r) {
                out.back().second = static_cast<std::uint32_t>((out.back().second + std::uint64_t(v)) % p_);
                if (out.back().second == 0) out.pop_back();
            } else {
                out.emplace_back(r, v);
            }
        }
        return out;
    }

private:
    std::uint32_t p_;
    std::vector<std::vector<Entry>> cols_;
};

namespace detail {
inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    std::int64_t t = 0, nt = 1, r = p, nr = a;
    while (nr) {
        std::int64_t q = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - q * nt);
        std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    if (t < 0) t += p;
    return static_cast<std::uint32_t>(t);
}
}  // namespace detail

// Rank over F_p. Columns are inserted into an echelon basis keyed by their highest row,
// lightest columns first; reduction always eliminates the current highest row.
inline std::size_t fp_rank(const SparseFpMatrix& m) {
    using Entry = SparseFpMatrix::Entry;
    const std::uint32_t p = m.modulus();
    const std::size_t n = m.dimension();
    std::vector<std::vector<Entry>> cols(n);
    for (std::size_t c = 0; c < n; ++c) cols[c] = m.column(c);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return cols[a].size() < cols[b].size(); });

    std::vector<std::int64_t> pivot_of(n, -1);
    std::vector<std::vector<Entry>> basis;
    std::vector<Entry> scratch;
    for (std::size_t c : order) {
        std::vector<Entry> v = std::move(cols[c]);
        while (!v.empty()) {
            std::uint32_t lead = v.back().first;
            std::int64_t k = pivot_of[lead];
            if (k < 0) {
                std::uint32_t inv = detail::inv_mod(v.back().second, p);
                for (auto& e : v) e.second = static_cast<std::uint32_t>(std::uint64_t(e.second) * inv % p);
                pivot_of[lead] = static_cast<std::int64_t>(basis.size());
                basis.push_back(std::move(v));
                break;
            }
            // v -= c * basis[k], pivot entries normalized to 1
            const auto& b = basis[k];
            std::uint64_t factor = v.back().second;
            scratch.clear();
            std::size_t i = 0, j = 0;
            while (i < v.size() || j < b.size()) {
                if (j == b.size() || (i < v.size() && v[i].first < b[j].first)) {
                    scratch.push_back(v[i++]);
                } else if (i == v.size() || b[j].first < v[i].first) {
                    std::uint32_t val = static_cast<std::uint32_t>((p - factor * b[j].second % p) % p);
                    if (val) scratch.emplace_back(b[j].first, val);
                    ++j;
                } else {
                    std::uint64_t val = (v[i].second + p - factor * b[j].second % p) % p;
                    if (val) scratch.emplace_back(v[i].first, static_cast<std::uint32_t>(val));
                    ++i;
                    ++j;
                }
            }
            v.swap(scratch);
        }
    }
    return basis.size();
}

}  // namespace hkfs
