#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "hkfs/rational.hpp"

namespace hkfs {

// Dense univariate polynomial over Q; coeffs_[i] is the coefficient of t^i.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    Polynomial(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }

    static Polynomial constant(const Rational& c) { return Polynomial(std::vector<Rational>{c}); }
    static Polynomial monomial(const Rational& c, std::size_t deg) {
        std::vector<Rational> v(deg + 1);
        v[deg] = c;
        return Polynomial(std::move(v));
    }
    static Polynomial t() { return monomial(1, 1); }
    // a*t + b
    static Polynomial linear(const Rational& a, const Rational& b) { return Polynomial({b, a}); }

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Rational>& coefficients() const { return coeffs_; }
    Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
    Rational leading() const { return is_zero() ? Rational(0) : coeffs_.back(); }

    Rational operator()(const Rational& x) const {
        Rational acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Polynomial derivative() const {
        if (coeffs_.size() <= 1) return {};
        std::vector<Rational> d(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
        return Polynomial(std::move(d));
    }

    // P(a*t + b)
    Polynomial compose_linear(const Rational& a, const Rational& b) const {
        Polynomial acc;
        Polynomial lin = linear(a, b);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * lin + constant(*it);
        return acc;
    }
    Polynomial shifted(const Rational& c) const { return compose_linear(1, c); }

    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) { return *this += -o; }
    Polynomial& operator*=(const Rational& s) {
        if (s == 0) coeffs_.clear();
        for (auto& c : coeffs_) c *= s;
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> r(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return Polynomial(std::move(r));
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

    // Euclidean division; b must be nonzero.
    friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
        require(!b.is_zero(), "division by the zero polynomial");
        std::vector<Rational> rem = a.coeffs_;
        int db = b.degree();
        int da = a.degree();
        if (da < db) return {Polynomial(), a};
        std::vector<Rational> q(da - db + 1);
        Rational lead_inv = 1 / b.leading();
        for (int k = da - db; k >= 0; --k) {
            Rational c = rem[k + db] * lead_inv;
            q[k] = c;
            if (c == 0) continue;
            for (int j = 0; j <= db; ++j) rem[k + j] -= c * b.coeffs_[j];
        }
        rem.resize(db);
        return {Polynomial(std::move(q)), Polynomial(std::move(rem))};
    }

    Polynomial monic() const {
        if (is_zero()) return {};
        return *this * (1 / leading());
    }

    friend Polynomial gcd(Polynomial a, Polynomial b) {
        while (!b.is_zero()) {
            auto r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    std::string to_string(const std::string& var = "t") const {
        if (is_zero()) return "0";
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            const Rational& c = coeffs_[i];
            if (c == 0) continue;
            Rational mag = abs(c);
            bool neg = c < 0;
            if (out.empty()) {
                if (neg) out += "-";
            } else {
                out += neg ? " - " : " + ";
            }
            bool unit = (mag == 1);
            if (i == 0 || !unit) out += mag.get_str();
            if (i > 0) {
                if (!unit) out += "*";
                out += var;
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }
    std::vector<Rational> coeffs_;
};

inline Polynomial pow(const Polynomial& base, unsigned k) {
    Polynomial r = Polynomial::constant(1);
    Polynomial b = base;
    while (k) {
        if (k & 1) r *= b;
        k >>= 1;
        if (k) b *= b;
    }
    return r;
}

inline Polynomial poly_product(const std::vector<Polynomial>& factors) {
    Polynomial r = Polynomial::constant(1);
    for (const auto& f : factors) r *= f;
    return r;
}

// prod_i (1 + x + ... + x^{k_i - 1})
inline Polynomial cyclotomic_quotient(const std::vector<long>& k) {
    std::vector<Polynomial> factors;
    for (long ki : k) {
        require(ki >= 1, "cyclotomic_quotient: exponents must be positive");
        factors.emplace_back(std::vector<Rational>(static_cast<std::size_t>(ki), Rational(1)));
    }
    return poly_product(factors);
}

}  // namespace hkfs
