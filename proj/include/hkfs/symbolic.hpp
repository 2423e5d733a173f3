#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hkfs/gamma.hpp"
#include "hkfs/rational_series.hpp"
#include "hkfs/sequence.hpp"

namespace hkfs {

// Named generators of Lambda with their alpha(u_0) and a partial product table.
class GeneratorTable {
public:
    int add(const std::string& name, const Rational& alpha0) {
        require(!find(name), "generator '" + name + "' declared twice");
        names_.push_back(name);
        alpha0_.push_back(alpha0);
        return static_cast<int>(names_.size() - 1);
    }
    void set_product(int a, int b, int c) {
        products_[{std::min(a, b), std::max(a, b)}] = c;
    }
    std::optional<int> find(const std::string& name) const {
        auto it = std::find(names_.begin(), names_.end(), name);
        if (it == names_.end()) return std::nullopt;
        return static_cast<int>(it - names_.begin());
    }
    int id(const std::string& name) const {
        auto i = find(name);
        if (!i) throw HypothesisError("unknown generator '" + name + "'");
        return *i;
    }
    int product(int a, int b) const {
        auto it = products_.find({std::min(a, b), std::max(a, b)});
        if (it == products_.end())
            throw HypothesisError("product of unknown generators: " + name(a) + " * " + name(b));
        return it->second;
    }
    const std::string& name(int g) const { return names_.at(static_cast<std::size_t>(g)); }
    const Rational& alpha0(int g) const { return alpha0_.at(static_cast<std::size_t>(g)); }
    std::size_t size() const { return names_.size(); }

private:
    std::vector<std::string> names_;
    std::vector<Rational> alpha0_;
    std::map<std::pair<int, int>, int> products_;
};

// sum of coeff * R^parity(generator), plus (delta coefficient) * Delta.
class SymbolicSequence {
public:
    using Key = std::pair<int, unsigned>;  // (generator, parity)

    explicit SymbolicSequence(std::uint64_t p) : p_(p), delta_(p) {}

    std::uint64_t prime() const { return p_; }
    const std::map<Key, GammaElement>& terms() const { return terms_; }
    const GammaElement& delta_term() const { return delta_; }

    void add_term(const GammaElement& c, unsigned parity, int gen) {
        require(c.prime() == p_, "mismatched characteristic");
        if (c.is_zero()) return;
        Key k{gen, parity % 2};
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    void add_delta(const GammaElement& c) { delta_ += c; }

    friend bool operator==(const SymbolicSequence& a, const SymbolicSequence& b) {
        return a.p_ == b.p_ && a.terms_ == b.terms_ && a.delta_ == b.delta_;
    }

    std::string to_string(const GeneratorTable& table) const {
        std::string out;
        auto piece = [&](const GammaElement& c, const std::string& target) {
            if (!out.empty()) out += " + ";
            out += "(" + c.to_string() + ") " + target;
        };
        for (const auto& [k, c] : terms_) piece(c, k.second ? "R(" + table.name(k.first) + ")" : table.name(k.first));
        if (!delta_.is_zero()) piece(delta_, "Delta");
        return out.empty() ? "0" : out;
    }

private:
    std::uint64_t p_;
    std::map<Key, GammaElement> terms_;
    GammaElement delta_;
};

// scale * S(gen) = rhs
struct ShiftingRule {
    int gen;
    Integer scale;
    SymbolicSequence rhs;
};

// R(w R^j(g)) = w R^{j+1}(g), R(Delta) = -Delta
inline SymbolicSequence reflect(const SymbolicSequence& a) {
    SymbolicSequence out(a.prime());
    for (const auto& [k, c] : a.terms()) out.add_term(c, k.second + 1, k.first);
    out.add_delta(-a.delta_term());
    return out;
}

// Gamma scalar action w . a
inline SymbolicSequence act(const GammaElement& w, const SymbolicSequence& a) {
    SymbolicSequence out(a.prime());
    for (const auto& [k, c] : a.terms()) out.add_term(gamma_mul(w, c), k.second, k.first);
    out.add_delta(gamma_mul(w, a.delta_term()));
    return out;
}

// R^i(u) R^j(v) = R^{i+j}(uv); u . Delta = alpha(u_0) Delta; Delta . Delta = Delta.
inline SymbolicSequence symbolic_mul(const SymbolicSequence& a, const SymbolicSequence& b, const GeneratorTable& table) {
    require(a.prime() == b.prime(), "mismatched characteristic");
    const std::uint64_t p = a.prime();
    SymbolicSequence out(p);
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms())
            out.add_term(gamma_mul(ca, cb), ka.second + kb.second, table.product(ka.first, kb.first));
    auto alpha_of = [&](const SymbolicSequence::Key& k) {
        Rational s = table.alpha0(k.first);
        return k.second ? Rational(-s) : s;
    };
    for (const auto& [ka, ca] : a.terms())
        if (!b.delta_term().is_zero()) out.add_delta(gamma_mul(ca, b.delta_term()) * alpha_of(ka));
    for (const auto& [kb, cb] : b.terms())
        if (!a.delta_term().is_zero()) out.add_delta(gamma_mul(cb, a.delta_term()) * alpha_of(kb));
    if (!a.delta_term().is_zero() && !b.delta_term().is_zero())
        out.add_delta(gamma_mul(a.delta_term(), b.delta_term()));
    return out;
}

enum class ShiftCongruence { PlusOne, MinusOne };

// p S(u) = lambda_M R^M(u) + d sum_{i<M} (-1)^i lambda_i Delta              (p = 1 mod d)
// p S(u) = lambda_M R^{M+1}(u) + d sum_{i<=M} (-1)^i lambda_i Delta         (p = -1 mod d)
// For d = 2 both congruences hold; `prefer` picks the form.
inline ShiftingRule diagonal_shift_rule(std::uint64_t p, std::uint64_t d, int gen = 0,
                                        std::optional<ShiftCongruence> prefer = std::nullopt) {
    require_prime(p);
    require(d >= 2, "diagonal_shift_rule: d must be at least 2");
    if (p <= d) throw HypothesisError("diagonal_shift_rule: need p > d");
    bool plus = p % d == 1, minus = p % d == d - 1;
    if (!plus && !minus) throw HypothesisError("congruence unsupported: p is not +-1 mod d");
    ShiftCongruence c = plus ? ShiftCongruence::PlusOne : ShiftCongruence::MinusOne;
    if (prefer) {
        if ((*prefer == ShiftCongruence::PlusOne && !plus) || (*prefer == ShiftCongruence::MinusOne && !minus))
            throw HypothesisError("congruence unsupported for the requested form");
        c = *prefer;
    }
    const std::uint64_t M = p / d;
    SymbolicSequence rhs(p);
    rhs.add_term(GammaElement::lambda(p, M), static_cast<unsigned>(c == ShiftCongruence::PlusOne ? M : M + 1), gen);
    const std::uint64_t top = c == ShiftCongruence::PlusOne ? M : M + 1;
    GammaElement D(p);
    for (std::uint64_t i = 0; i < top; ++i) D.add(i, Rational(i % 2 == 0 ? static_cast<long>(d) : -static_cast<long>(d)));
    rhs.add_delta(D);
    return ShiftingRule{gen, Integer(static_cast<unsigned long>(p)), rhs};
}

// Rule for gen^k from the rule for gen: p^{mk} S(u^k) = (rhs)^k.
inline ShiftingRule rule_power(const ShiftingRule& rule, unsigned k, int target_gen, const GeneratorTable& table) {
    require(k >= 1, "rule_power: k must be positive");
    SymbolicSequence acc = rule.rhs;
    Integer scale = rule.scale;
    for (unsigned i = 1; i < k; ++i) {
        acc = symbolic_mul(acc, rule.rhs, table);
        scale *= rule.scale;
    }
    for (const auto& [key, c] : acc.terms()) {
        require(key.first == target_gen, "rule_power: generator table does not map the power to the target");
        (void)c;
    }
    return ShiftingRule{target_gen, scale, acc};
}

// Generators g^1..g^{n-1} of L(phi_{x^d}) powers with their rules, n the total variable count.
struct RuleSet {
    std::uint64_t p = 0;
    unsigned n = 0;
    GeneratorTable table;
    std::map<int, ShiftingRule> rules;
};

inline RuleSet fermat_rule_set(std::uint64_t p, std::uint64_t d, unsigned n,
                               std::optional<ShiftCongruence> prefer = std::nullopt) {
    require(n >= 2, "fermat_rule_set: n must be at least 2");
    RuleSet rs;
    rs.p = p;
    rs.n = n;
    std::vector<int> ids;
    for (unsigned k = 1; k < n; ++k) ids.push_back(rs.table.add(k == 1 ? "g" : "g^" + std::to_string(k), 1));
    for (unsigned i = 1; i < n; ++i)
        for (unsigned j = i; i + j < n; ++j) rs.table.set_product(ids[i - 1], ids[j - 1], ids[i + j - 1]);
    ShiftingRule base = diagonal_shift_rule(p, d, ids[0], prefer);
    rs.rules.emplace(ids[0], base);
    for (unsigned k = 2; k < n; ++k) rs.rules.emplace(ids[k - 1], rule_power(base, k, ids[k - 1], rs.table));
    return rs;
}

// Symbolic sequence evaluated on concrete truncated data for each generator.
inline TruncatedSequence evaluate_symbolic(const SymbolicSequence& s, const std::map<int, TruncatedSequence>& data,
                                           unsigned E) {
    const std::uint64_t p = s.prime();
    std::vector<GammaElement> zero(E + 1, GammaElement(p));
    TruncatedSequence acc(p, zero);
    for (const auto& [k, c] : s.terms()) {
        auto it = data.find(k.first);
        require(it != data.end(), "evaluate_symbolic: no data for generator");
        require(it->second.depth() == E, "evaluate_symbolic: depth mismatch");
        TruncatedSequence g = k.second ? reflect(it->second) : it->second;
        acc = seq_add(acc, scalar_act(c, g));
    }
    if (!s.delta_term().is_zero()) acc = seq_add(acc, scalar_act(s.delta_term(), delta_sequence(p, E)));
    return acc;
}

// ---------------------------------------------------------------------------
// r_n solver. Unknowns are r_n(R^parity(g), h), symmetric in (g, h).

struct RKey {
    std::string g, h;
    unsigned parity;
    friend auto operator<=>(const RKey&, const RKey&) = default;
};

inline RKey make_rkey(std::string g, std::string h, unsigned parity) {
    if (h < g) std::swap(g, h);
    return RKey{std::move(g), std::move(h), parity % 2};
}

inline std::string to_string(const RKey& k) {
    return "r(" + (k.parity ? "R(" + k.g + ")" : k.g) + ", " + k.h + ")";
}

// Affine system X_k = constant_k + sum_j coeff_kj X_j over Q(z).
class RSystem {
public:
    struct Equation {
        RationalFunction constant;
        std::map<RKey, RationalFunction> coeffs;
    };

    void add_equation(const RKey& lhs, Equation eq) {
        require(!equations_.count(lhs), "two equations for " + to_string(lhs));
        equations_.emplace(lhs, std::move(eq));
    }
    bool has(const RKey& k) const { return equations_.count(k) > 0; }
    const std::map<RKey, Equation>& equations() const { return equations_; }

    std::map<RKey, RationalFunction> solve() const {
        std::vector<RKey> keys;
        std::map<RKey, std::size_t> index;
        for (const auto& [k, eq] : equations_) {
            index[k] = keys.size();
            keys.push_back(k);
        }
        for (const auto& [k, eq] : equations_)
            for (const auto& [j, c] : eq.coeffs)
                if (!index.count(j)) throw HypothesisError("underdetermined system: no equation for " + to_string(j));
        const std::size_t N = keys.size();
        // rows of (I - C) X = constant
        std::vector<std::vector<RationalFunction>> A(N, std::vector<RationalFunction>(N + 1));
        for (std::size_t i = 0; i < N; ++i) {
            const Equation& eq = equations_.at(keys[i]);
            A[i][i] = RationalFunction(Rational(1));
            for (const auto& [j, c] : eq.coeffs) A[i][index[j]] = A[i][index[j]] - c;
            A[i][N] = eq.constant;
        }
        for (std::size_t col = 0; col < N; ++col) {
            std::size_t piv = N;
            for (std::size_t r = col; r < N; ++r) {
                if (A[r][col].is_zero()) continue;
                if (piv == N || A[r][col].denominator().degree() < A[piv][col].denominator().degree()) piv = r;
            }
            ensure(piv != N, "singular system");
            std::swap(A[piv], A[col]);
            RationalFunction inv = RationalFunction(Rational(1)) / A[col][col];
            for (std::size_t c = col; c <= N; ++c) A[col][c] = A[col][c] * inv;
            for (std::size_t r = 0; r < N; ++r) {
                if (r == col || A[r][col].is_zero()) continue;
                RationalFunction f = A[r][col];
                for (std::size_t c = col; c <= N; ++c) A[r][c] = A[r][c] - f * A[col][c];
            }
        }
        std::map<RKey, RationalFunction> out;
        for (std::size_t i = 0; i < N; ++i) out.emplace(keys[i], A[i][N]);
        return out;
    }

private:
    std::map<RKey, Equation> equations_;
};

namespace detail {

inline Rational pairing(const GammaElement& a, const GammaElement& b) {
    if (a.support_bound() > a.prime() || b.support_bound() > b.prime())
        throw HypothesisError("support exceeds p: orthogonality of lambda_i, lambda_j needs indices below p");
    Rational s = 0;
    for (const auto& [i, c] : a.terms()) s += c * b.coeff(i);
    return s;
}

inline Polynomial z_poly(const Rational& c0, const Rational& c1) { return Polynomial({c0, c1}); }

}  // namespace detail

// Equation for r_n(R^parity(g), h) from the rules of g and h.
inline RSystem::Equation r_equation(const RuleSet& rs, int g, int h, unsigned parity) {
    const std::uint64_t p = rs.p;
    const GeneratorTable& T = rs.table;
    auto rg = rs.rules.find(g), rh = rs.rules.find(h);
    if (rg == rs.rules.end()) throw HypothesisError("no shifting rule for generator '" + T.name(g) + "'");
    if (rh == rs.rules.end()) throw HypothesisError("no shifting rule for generator '" + T.name(h) + "'");
    Integer pn1 = ipow(p, rs.n - 1), pn = ipow(p, rs.n);
    Rational a0 = T.alpha0(g) * T.alpha0(h);
    if (parity) a0 = -a0;
    RSystem::Equation eq;
    eq.constant = RationalFunction(detail::z_poly(a0, -Rational(pn1) * a0));
    // S(R u) = lambda_{p-1} R(S u)
    SymbolicSequence U = rg->second.rhs;
    if (parity) U = act(GammaElement::lambda(p, p - 1), reflect(U));
    const SymbolicSequence& V = rh->second.rhs;
    Rational factor = Rational(pn) / Rational(rg->second.scale * rh->second.scale);
    auto alpha_of = [&](const SymbolicSequence::Key& k) {
        Rational s = T.alpha0(k.first);
        return k.second ? Rational(-s) : s;
    };
    Rational constant_z = 0;
    for (const auto& [ku, cu] : U.terms())
        for (const auto& [kv, cv] : V.terms()) {
            Rational w = detail::pairing(cu, cv);
            if (w == 0) continue;
            RKey key = make_rkey(T.name(ku.first), T.name(kv.first), ku.second + kv.second);
            auto& slot = eq.coeffs[key];
            slot = slot + RationalFunction(detail::z_poly(0, factor * w));
        }
    for (const auto& [ku, cu] : U.terms()) constant_z += detail::pairing(cu, V.delta_term()) * alpha_of(ku);
    for (const auto& [kv, cv] : V.terms()) constant_z += detail::pairing(U.delta_term(), cv) * alpha_of(kv);
    constant_z += detail::pairing(U.delta_term(), V.delta_term());
    eq.constant = eq.constant + RationalFunction(detail::z_poly(0, factor * constant_z));
    for (auto it = eq.coeffs.begin(); it != eq.coeffs.end();)
        it = it->second.is_zero() ? eq.coeffs.erase(it) : std::next(it);
    return eq;
}

// Adds the equations reachable from `start` to `sys`.
inline void close_system(const RuleSet& rs, const RKey& start, RSystem& sys) {
    require(rs.p > 2, "the r_n solver excludes p = 2");
    std::vector<RKey> todo{start};
    while (!todo.empty()) {
        RKey k = todo.back();
        todo.pop_back();
        if (sys.has(k)) continue;
        RSystem::Equation eq = r_equation(rs, rs.table.id(k.g), rs.table.id(k.h), k.parity);
        for (const auto& [j, c] : eq.coeffs)
            if (!sys.has(j)) todo.push_back(j);
        sys.add_equation(k, std::move(eq));
    }
}

// r_n(R^parity(u), v) as a rational function of z.
inline RationalSeries r_solve(const RuleSet& rs, const std::string& u, const std::string& v, unsigned parity = 0) {
    RKey target = make_rkey(u, v, parity);
    RSystem sys;
    close_system(rs, target, sys);
    return RationalSeries(sys.solve().at(target));
}

// F-signature series r_n(u, v) / (p^{n-1} z - 1); v is the generator for the reflected second factor.
inline RationalSeries fss_from_r(std::uint64_t p, unsigned n, const RationalSeries& r) {
    Polynomial den({Rational(-1), Rational(ipow(p, n - 1))});
    return RationalSeries(r.function() / RationalFunction(den));
}

inline RationalSeries fss_symbolic(const RuleSet& rs, const std::string& u, const std::string& v, unsigned parity = 0) {
    return fss_from_r(rs.p, rs.n, r_solve(rs, u, v, parity));
}

// Fermat hypersurface with n variables: u = L(phi of n-1 terms), v = R(L(phi_{x^d})).
inline RationalSeries fermat_fss_symbolic(std::uint64_t p, std::uint64_t d, unsigned n,
                                          std::optional<ShiftCongruence> prefer = std::nullopt) {
    RuleSet rs = fermat_rule_set(p, d, n, prefer);
    return fss_symbolic(rs, rs.table.name(static_cast<int>(n - 2)), "g", 1);
}

}  // namespace hkfs
