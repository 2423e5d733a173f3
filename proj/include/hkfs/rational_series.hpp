#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hkfs/polynomial.hpp"

namespace hkfs {

// Element of Q(z), kept reduced. Denominator scaled so that den(0) = 1 when den(0) != 0,
// otherwise monic.
class RationalFunction {
public:
    RationalFunction() : num_(), den_(Polynomial::constant(1)) {}
    RationalFunction(const Rational& c) : num_(Polynomial::constant(c)), den_(Polynomial::constant(1)) {}
    RationalFunction(Polynomial num) : num_(std::move(num)), den_(Polynomial::constant(1)) {}
    RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
        normalize();
    }

    const Polynomial& numerator() const { return num_; }
    const Polynomial& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a) { return RationalFunction(-a.num_, a.den_); }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        require(!b.is_zero(), "division by zero rational function");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    std::string to_string(const std::string& var = "z") const {
        if (den_ == Polynomial::constant(1)) return num_.to_string(var);
        return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
    }

private:
    void normalize() {
        require(!den_.is_zero(), "zero denominator");
        if (num_.is_zero()) {
            den_ = Polynomial::constant(1);
            return;
        }
        Polynomial g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = divmod(num_, g).first;
            den_ = divmod(den_, g).first;
        }
        Rational s = den_.coeff(0) != 0 ? den_.coeff(0) : den_.leading();
        if (s != 1) {
            Rational inv = 1 / s;
            num_ *= inv;
            den_ *= inv;
        }
    }
    Polynomial num_;
    Polynomial den_;
};

// Power series given by a rational function regular at z = 0; denominator(0) = 1.
class RationalSeries {
public:
    RationalSeries() : f_() {}
    explicit RationalSeries(RationalFunction f) : f_(std::move(f)) {
        require(f_.denominator().coeff(0) != 0, "series denominator vanishes at z = 0");
    }
    RationalSeries(Polynomial num, Polynomial den) : RationalSeries(RationalFunction(std::move(num), std::move(den))) {}

    const Polynomial& numerator() const { return f_.numerator(); }
    const Polynomial& denominator() const { return f_.denominator(); }
    const RationalFunction& function() const { return f_; }

    std::vector<Rational> coefficients(std::size_t count) const {
        const Polynomial& P = numerator();
        const Polynomial& Q = denominator();
        std::vector<Rational> c(count);
        for (std::size_t m = 0; m < count; ++m) {
            Rational v = P.coeff(m);
            int dq = Q.degree();
            for (int k = 1; k <= dq && static_cast<std::size_t>(k) <= m; ++k) v -= Q.coeff(k) * c[m - k];
            c[m] = v;  // Q(0) = 1
        }
        return c;
    }

    friend bool operator==(const RationalSeries& a, const RationalSeries& b) { return a.f_ == b.f_; }
    std::string to_string() const { return f_.to_string("z"); }

private:
    RationalFunction f_;
};

// P/Q with the given Q and deg P < deg Q, matched against every supplied coefficient.
inline RationalSeries fit_rational_series(const std::vector<Rational>& coeffs, const Polynomial& denominator) {
    require(!denominator.is_zero() && denominator.coeff(0) != 0, "denominator must not vanish at z = 0");
    int dq = denominator.degree();
    require(coeffs.size() >= static_cast<std::size_t>(dq) + 2,
            "fit_rational_series: need at least deg(Q) + 2 coefficients");
    std::vector<Rational> p(static_cast<std::size_t>(dq));
    for (int m = 0; m < dq; ++m) {
        Rational v = 0;
        for (int k = 0; k <= m; ++k) v += denominator.coeff(k) * coeffs[m - k];
        p[m] = v;
    }
    RationalSeries rs(Polynomial(std::move(p)), denominator);
    if (rs.coefficients(coeffs.size()) != coeffs) throw HypothesisError("inconsistent sequence");
    return rs;
}

struct PoleWeight {
    Rational reciprocal;  // delta, the pole sits at z = 1/delta
    Rational weight;
};

// Full split: coefficient of z^m equals sum_i a_i delta_i^m.
inline std::vector<PoleWeight> partial_fractions(const RationalSeries& rs, const std::vector<Rational>& roots) {
    std::set<Rational> distinct(roots.begin(), roots.end());
    require(distinct.size() == roots.size(), "partial_fractions: reciprocal roots must be distinct");
    Polynomial prod = Polynomial::constant(1);
    for (const auto& d : roots) {
        require(d != 0, "partial_fractions: reciprocal root must be nonzero");
        prod *= Polynomial::linear(-d, 1);
    }
    if (!(prod == rs.denominator())) throw HypothesisError("denominator does not split");
    require(rs.numerator().degree() < rs.denominator().degree(), "partial_fractions: improper series");
    std::vector<PoleWeight> out;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        Rational z0 = 1 / roots[i];
        Rational w = rs.numerator()(z0);
        for (std::size_t j = 0; j < roots.size(); ++j)
            if (j != i) w /= (1 - roots[j] * z0);
        out.push_back({roots[i], w});
    }
    return out;
}

// Weight of a single simple pole at z = 1/delta; the rest of the denominator may be irreducible.
inline Rational pole_weight(const RationalSeries& rs, const Rational& delta) {
    require(delta != 0, "pole_weight: reciprocal root must be nonzero");
    auto [quot, rem] = divmod(rs.denominator(), Polynomial::linear(-delta, 1));
    if (!rem.is_zero()) throw HypothesisError("denominator has no factor 1 - " + delta.get_str() + "z");
    Rational z0 = 1 / delta;
    Rational rest = quot(z0);
    require(rest != 0, "pole_weight: pole is not simple");
    return rs.numerator()(z0) / rest;
}

}  // namespace hkfs
