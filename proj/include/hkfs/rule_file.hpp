#pragma once

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hkfs/symbolic.hpp"

namespace hkfs {

// Line-oriented description of shifting rules and r_n relations:
//
//   prime 3
//   dimension 4
//   generator a 1                      name and alpha(u_0)
//   9 S(a) = (L0 + L1) b + (9 L0) Delta
//   3^2 S(b) = (L2 + L1) R(a) - (9 L2) Delta
//   relation r(u,b) = (-1+339z) + (z)*r(u,a)
//   known r(u,a) = (1+488z)/(1-2z-z^3)
//   target u R(b)
//
// '#' starts a comment. A rule item without a parenthesized coefficient has coefficient L0.
struct RuleFile {
    RuleSet rules;
    std::vector<std::pair<RKey, RSystem::Equation>> relations;
    std::optional<RKey> target;
};

namespace detail {

class Cursor {
public:
    Cursor(std::string text, int line) : s_(), line_(line) {
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) s_ += c;
    }
    bool done() const { return i_ >= s_.size(); }
    char peek() const { return done() ? '\0' : s_[i_]; }
    bool accept(char c) {
        if (peek() != c) return false;
        ++i_;
        return true;
    }
    bool accept(const std::string& w) {
        if (s_.compare(i_, w.size(), w) != 0) return false;
        i_ += w.size();
        return true;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw HypothesisError("rule file line " + std::to_string(line_) + ": " + what + " near '" + s_.substr(i_) +
                              "'");
    }
    bool at_digit() const { return std::isdigit(static_cast<unsigned char>(peek())); }
    Integer uint() {
        if (!at_digit()) fail("expected a number");
        std::string d;
        while (at_digit()) d += s_[i_++];
        return Integer(d);
    }
    // a or a/b
    Rational rational() {
        Integer a = uint();
        if (accept('/')) return make_rational(a, uint());
        return Rational(a);
    }
    std::string name() {
        std::string n;
        while (!done() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) n += s_[i_++];
        if (n.empty() || std::isdigit(static_cast<unsigned char>(n[0]))) fail("expected a name");
        return n;
    }
    std::string rest() const { return s_.substr(i_); }

private:
    std::string s_;
    std::size_t i_ = 0;
    int line_;
};

// "L0 + 3L1 - 1/2*L4", a bare number means a multiple of L0
inline GammaElement parse_gamma(Cursor& c, std::uint64_t p) {
    GammaElement g(p);
    bool first = true;
    while (!c.done() && c.peek() != ')') {
        Rational sign = 1;
        if (c.accept('-')) sign = -1;
        else if (!c.accept('+') && !first) c.fail("expected '+' or '-'");
        first = false;
        Rational coeff = 1;
        bool has_num = c.at_digit();
        if (has_num) coeff = c.rational();
        c.accept('*');
        std::uint64_t idx = 0;
        if (c.accept('L')) {
            idx = c.uint().get_ui();
        } else if (!has_num) {
            c.fail("expected a coefficient or L<i>");
        }
        g.add(idx, sign * coeff);
    }
    return g;
}

// "1 + 488z - z^3", "1/2*z^2"
inline Polynomial parse_zpoly(Cursor& c) {
    std::vector<Rational> coeffs;
    bool first = true;
    while (!c.done() && c.peek() != ')') {
        Rational sign = 1;
        if (c.accept('-')) sign = -1;
        else if (!c.accept('+') && !first) c.fail("expected '+' or '-'");
        first = false;
        Rational coeff = 1;
        bool has_num = c.at_digit();
        if (has_num) coeff = c.rational();
        c.accept('*');
        unsigned long deg = 0;
        if (c.accept('z')) {
            deg = 1;
            if (c.accept('^')) deg = c.uint().get_ui();
        } else if (!has_num) {
            c.fail("expected a coefficient or z");
        }
        if (coeffs.size() <= deg) coeffs.resize(deg + 1);
        coeffs[deg] += sign * coeff;
    }
    return Polynomial(std::move(coeffs));
}

// g, R(g) or R^j(g)
inline std::pair<std::string, unsigned> parse_reflected(Cursor& c) {
    unsigned parity = 0;
    if (c.accept("R(")) {
        parity = 1;
    } else if (c.accept("R^")) {
        parity = static_cast<unsigned>(c.uint().get_ui() % 2);
        c.expect('(');
    } else {
        return {c.name(), 0};
    }
    std::string n = c.name();
    c.expect(')');
    return {n, parity};
}

inline RKey parse_rkey(Cursor& c) {
    if (!c.accept("r(")) c.fail("expected r(x,y)");
    auto [g, pg] = parse_reflected(c);
    c.expect(',');
    auto [h, ph] = parse_reflected(c);
    c.expect(')');
    return make_rkey(g, h, pg + ph);
}

inline RationalFunction parse_zfunction(Cursor& c) {
    c.expect('(');
    Polynomial num = parse_zpoly(c);
    c.expect(')');
    if (!c.accept('/')) return RationalFunction(num);
    c.expect('(');
    Polynomial den = parse_zpoly(c);
    c.expect(')');
    return RationalFunction(num, den);
}

}  // namespace detail

inline RuleFile parse_rule_file(std::istream& in) {
    RuleFile rf;
    struct PendingRule {
        int line;
        std::string text;
    };
    std::vector<PendingRule> pending_rules;
    std::vector<PendingRule> pending_relations;
    std::optional<std::string> pending_target;
    int target_line = 0;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        std::istringstream words(raw);
        std::string head;
        if (!(words >> head)) continue;
        auto err = [&](const std::string& m) {
            throw HypothesisError("rule file line " + std::to_string(line) + ": " + m);
        };
        if (head == "prime") {
            std::uint64_t p = 0;
            if (!(words >> p)) err("expected a prime");
            require_prime(p);
            rf.rules.p = p;
        } else if (head == "dimension") {
            unsigned n = 0;
            if (!(words >> n) || n < 2) err("dimension must be an integer >= 2");
            rf.rules.n = n;
        } else if (head == "generator") {
            std::string name, alpha;
            if (!(words >> name >> alpha)) err("expected: generator <name> <alpha0>");
            rf.rules.table.add(name, parse_rational(alpha));
        } else if (head == "target") {
            std::string rest;
            std::getline(words, rest);
            pending_target = rest;
            target_line = line;
        } else if (head == "relation" || head == "known") {
            std::string rest;
            std::getline(words, rest);
            pending_relations.push_back({line, head + " " + rest});
        } else {
            pending_rules.push_back({line, raw});
        }
    }
    if (rf.rules.p == 0) throw HypothesisError("rule file: missing 'prime' line");
    if (rf.rules.n == 0) throw HypothesisError("rule file: missing 'dimension' line");
    const std::uint64_t p = rf.rules.p;
    auto gen_id = [&](const std::string& name, detail::Cursor& c) {
        auto id = rf.rules.table.find(name);
        if (!id) c.fail("undeclared generator '" + name + "'");
        return *id;
    };

    for (const auto& pr : pending_rules) {
        detail::Cursor c(pr.text, pr.line);
        Integer scale = c.uint();
        if (c.accept('^')) scale = ipow(scale, c.uint().get_ui());
        if (!c.accept("S(")) c.fail("expected <scale> S(<generator>) = ...");
        int g = gen_id(c.name(), c);
        c.expect(')');
        c.expect('=');
        SymbolicSequence rhs(p);
        bool first = true;
        while (!c.done()) {
            Rational sign = 1;
            if (c.accept('-')) sign = -1;
            else if (!c.accept('+') && !first) c.fail("expected '+' or '-'");
            first = false;
            GammaElement coeff = GammaElement::one(p);
            if (c.accept('(')) {
                coeff = detail::parse_gamma(c, p);
                c.expect(')');
                c.accept('*');
            }
            coeff *= sign;
            if (c.accept("Delta")) {
                rhs.add_delta(coeff);
                continue;
            }
            auto [name, parity] = detail::parse_reflected(c);
            rhs.add_term(coeff, parity, gen_id(name, c));
        }
        if (rhs.delta_term().support_bound() > p) c.fail("Delta coefficient must have support below p");
        if (rf.rules.rules.count(g)) c.fail("second rule for generator '" + rf.rules.table.name(g) + "'");
        rf.rules.rules.emplace(g, ShiftingRule{g, scale, rhs});
    }

    for (const auto& pr : pending_relations) {
        detail::Cursor c(pr.text, pr.line);
        bool known = c.accept("known");
        if (!known && !c.accept("relation")) c.fail("expected relation or known");
        RKey lhs = detail::parse_rkey(c);
        c.expect('=');
        RSystem::Equation eq;
        if (known) {
            eq.constant = detail::parse_zfunction(c);
        } else {
            bool first = true;
            while (!c.done()) {
                Rational sign = 1;
                if (c.accept('-')) sign = -1;
                else if (!c.accept('+') && !first) c.fail("expected '+' or '-'");
                first = false;
                RationalFunction coeff(sign);
                bool has_coeff = false;
                if (c.peek() == '(') {
                    coeff = coeff * detail::parse_zfunction(c);
                    has_coeff = true;
                }
                if (c.accept('*') || !has_coeff || c.peek() == 'r') {
                    RKey k = detail::parse_rkey(c);
                    auto& slot = eq.coeffs[k];
                    slot = slot + coeff;
                } else {
                    eq.constant = eq.constant + coeff;
                }
            }
        }
        if (!c.done()) c.fail("trailing input");
        rf.relations.emplace_back(lhs, std::move(eq));
    }

    if (pending_target) {
        std::istringstream words(*pending_target);
        std::string a, b, extra;
        if (!(words >> a >> b) || (words >> extra))
            throw HypothesisError("rule file line " + std::to_string(target_line) + ": expected: target <u> <v>");
        detail::Cursor ca(a, target_line), cb(b, target_line);
        auto [u, pu] = detail::parse_reflected(ca);
        auto [v, pv] = detail::parse_reflected(cb);
        if (!ca.done() || !cb.done()) ca.fail("expected: target <u> <v>");
        rf.target = make_rkey(u, v, pu + pv);
    }
    return rf;
}

inline RuleFile load_rule_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw HypothesisError("cannot open rule file '" + path + "'");
    return parse_rule_file(in);
}

// r_n at the target, combining explicit relations with equations generated from rules.
inline RationalSeries solve_rule_file(const RuleFile& rf, std::optional<RKey> target = std::nullopt) {
    if (!target) target = rf.target;
    if (!target) throw HypothesisError("rule file has no target");
    RSystem sys;
    for (const auto& [k, eq] : rf.relations) sys.add_equation(k, eq);
    std::vector<RKey> todo{*target};
    for (const auto& [k, eq] : rf.relations)
        for (const auto& [j, c] : eq.coeffs) todo.push_back(j);
    for (const auto& k : todo)
        if (!sys.has(k)) close_system(rf.rules, k, sys);
    return RationalSeries(sys.solve().at(*target));
}

inline RationalSeries fss_rule_file(const RuleFile& rf, std::optional<RKey> target = std::nullopt) {
    return fss_from_r(rf.rules.p, rf.rules.n, solve_rule_file(rf, target));
}

}  // namespace hkfs
