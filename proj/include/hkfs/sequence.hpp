#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hkfs/gamma.hpp"
#include "hkfs/phi.hpp"

namespace hkfs {

// Entries u_0..u_E of a Lambda-sequence (arbitrary Gamma_Q entries).
class TruncatedSequence {
public:
    TruncatedSequence(std::uint64_t p, std::vector<GammaElement> entries) : p_(p), entries_(std::move(entries)) {
        require(!entries_.empty(), "truncated sequence needs at least one entry");
        for (const auto& x : entries_) require(x.prime() == p_, "mismatched characteristic");
    }
    std::uint64_t prime() const { return p_; }
    // u_e in Gamma_e for every e. Holds for L-sequences; scalar action by lambda_i, i > 0, breaks it.
    bool filtered() const {
        for (std::size_t e = 0; e < entries_.size(); ++e)
            if (entries_[e].support_bound() > upow(p_, static_cast<unsigned>(e))) return false;
        return true;
    }
    unsigned depth() const { return static_cast<unsigned>(entries_.size() - 1); }  // E
    const GammaElement& operator[](std::size_t e) const { return entries_.at(e); }
    const std::vector<GammaElement>& entries() const { return entries_; }
    friend bool operator==(const TruncatedSequence& a, const TruncatedSequence& b) {
        return a.p_ == b.p_ && a.entries_ == b.entries_;
    }

private:
    std::uint64_t p_;
    std::vector<GammaElement> entries_;
};

// phi given by level: phi_at(a, e) = phi(a / p^e).
inline TruncatedSequence l_sequence(std::uint64_t p, unsigned E,
                                    const std::function<Rational(std::uint64_t, unsigned)>& phi_at) {
    std::vector<GammaElement> entries;
    for (unsigned e = 0; e <= E; ++e) {
        const std::uint64_t q = upow(p, e);
        GammaElement u(p);
        Rational prev = phi_at(0, e);
        for (std::uint64_t i = 0; i < q; ++i) {
            Rational next = phi_at(i + 1, e);
            Rational diff = next - prev;
            u.add(i, i % 2 == 0 ? diff : Rational(-diff));
            prev = std::move(next);
        }
        entries.push_back(std::move(u));
    }
    return TruncatedSequence(p, std::move(entries));
}

// tables[e] holds phi at level e, for e = 0..E
inline TruncatedSequence l_sequence(const std::vector<PhiTable>& tables) {
    require(!tables.empty(), "l_sequence: no sample tables");
    const std::uint64_t p = tables.front().p;
    for (std::size_t e = 0; e < tables.size(); ++e) {
        require(tables[e].p == p && tables[e].level == e, "l_sequence: table for level " + std::to_string(e) + " missing");
        if (tables[e].values.size() != upow(p, static_cast<unsigned>(e)) + 1)
            throw HypothesisError("l_sequence: missing sample at level " + std::to_string(e));
    }
    return l_sequence(p, static_cast<unsigned>(tables.size() - 1),
                      [&](std::uint64_t a, unsigned e) { return tables[e].at(a); });
}

inline std::vector<PhiTable> phi_tables(const DiagonalHypersurface& f, std::uint64_t p, unsigned E) {
    std::vector<PhiTable> out;
    for (unsigned e = 0; e <= E; ++e) out.push_back(phi_table_diagonal(f, p, e));
    return out;
}

inline std::vector<PhiTable> phi_tables(const GenericPolynomial& f, std::uint64_t p, unsigned E) {
    std::vector<PhiTable> out;
    for (unsigned e = 0; e <= E; ++e) out.push_back(phi_table_generic(f, p, e));
    return out;
}

// Delta = L(t) = (delta_1, p^{-1} delta_p, p^{-2} delta_{p^2}, ...)
inline TruncatedSequence delta_sequence(std::uint64_t p, unsigned E) {
    std::vector<GammaElement> entries;
    for (unsigned e = 0; e <= E; ++e) {
        const std::uint64_t q = upow(p, e);
        entries.push_back(delta(p, q) * make_rational(Integer(1), ipow(p, e)));
    }
    return TruncatedSequence(p, std::move(entries));
}

// v_e = (-1)^{p^e} lambda_{p^e - 1} u_e
inline TruncatedSequence reflect(const TruncatedSequence& u) {
    const std::uint64_t p = u.prime();
    std::vector<GammaElement> out;
    for (unsigned e = 0; e <= u.depth(); ++e) {
        const std::uint64_t q = upow(p, e);
        Rational sign = q % 2 == 0 ? 1 : -1;
        out.push_back(gamma_mul(GammaElement::lambda(p, q - 1, sign), u[e]));
    }
    return TruncatedSequence(p, std::move(out));
}

inline TruncatedSequence seq_mul(const TruncatedSequence& u, const TruncatedSequence& v) {
    require(u.prime() == v.prime(), "seq_mul: mismatched characteristic");
    require(u.depth() == v.depth(), "seq_mul: mismatched truncation depth");
    std::vector<GammaElement> out;
    for (unsigned e = 0; e <= u.depth(); ++e) out.push_back(gamma_mul(u[e], v[e]));
    return TruncatedSequence(u.prime(), std::move(out));
}

// w . u = (w u_0, theta(w) u_1, theta^2(w) u_2, ...)
inline TruncatedSequence scalar_act(const GammaElement& w, const TruncatedSequence& u) {
    std::vector<GammaElement> out;
    GammaElement tw = w;
    for (unsigned e = 0; e <= u.depth(); ++e) {
        out.push_back(gamma_mul(tw, u[e]));
        if (e < u.depth()) tw = theta(tw);
    }
    return TruncatedSequence(u.prime(), std::move(out));
}

inline TruncatedSequence seq_add(const TruncatedSequence& u, const TruncatedSequence& v) {
    require(u.prime() == v.prime() && u.depth() == v.depth(), "seq_add: shape mismatch");
    std::vector<GammaElement> out;
    for (unsigned e = 0; e <= u.depth(); ++e) out.push_back(u[e] + v[e]);
    return TruncatedSequence(u.prime(), std::move(out));
}

inline TruncatedSequence seq_scale(const Rational& s, const TruncatedSequence& u) {
    std::vector<GammaElement> out;
    for (const auto& x : u.entries()) out.push_back(x * s);
    return TruncatedSequence(u.prime(), std::move(out));
}

// S(u) = (u_1, u_2, ...); loses one level. Entry e of S(u) lives in Gamma_{e+1}, so it is
// returned as a plain list rather than a TruncatedSequence.
inline std::vector<GammaElement> shift(const TruncatedSequence& u) {
    require(u.depth() >= 1, "shift: need at least two entries");
    return {u.entries().begin() + 1, u.entries().end()};
}

// Truncation of sum_e alpha(u_e v_e)(p^n z)^e, without the (1 - p^{n-1} z) factor.
inline std::vector<Rational> r_partial_sums(const TruncatedSequence& u, const TruncatedSequence& v, unsigned n) {
    require(u.prime() == v.prime() && u.depth() == v.depth(), "r_n: shape mismatch");
    std::vector<Rational> out;
    for (unsigned e = 0; e <= u.depth(); ++e)
        out.push_back(alpha(gamma_mul(u[e], v[e])) * ipow(u.prime(), static_cast<unsigned long>(n) * e));
    return out;
}

// Coefficients of r_n(u, v) = (1 - p^{n-1} z) sum_e alpha(u_e v_e)(p^n z)^e through z^E.
inline std::vector<Rational> r_truncated(const TruncatedSequence& u, const TruncatedSequence& v, unsigned n) {
    std::vector<Rational> s = r_partial_sums(u, v, n);
    Rational c = Rational(ipow(u.prime(), n - 1));
    std::vector<Rational> out(s.size());
    for (std::size_t e = 0; e < s.size(); ++e) out[e] = s[e] - (e ? c * s[e - 1] : Rational(0));
    return out;
}

// FS_{f+g}(e) = -p^{ne} alpha((R(L(phi_f)) L(phi_g))_e) for e = 0..E, n the total variable count.
inline std::vector<Integer> fss_numeric(const std::vector<PhiTable>& f_tables, const std::vector<PhiTable>& g_tables,
                                        unsigned n) {
    TruncatedSequence u = reflect(l_sequence(f_tables));
    TruncatedSequence v = l_sequence(g_tables);
    require(u.depth() == v.depth(), "fss_numeric: sample depths differ");
    std::vector<Integer> out;
    for (unsigned e = 0; e <= u.depth(); ++e) {
        Rational fs = -alpha(gamma_mul(u[e], v[e])) * ipow(u.prime(), static_cast<unsigned long>(n) * e);
        ensure(is_integer(fs) && fs >= 0, "fss_numeric: non-integral F-signature value " + fs.get_str());
        out.push_back(fs.get_num());
    }
    return out;
}

}  // namespace hkfs
