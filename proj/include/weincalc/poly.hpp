#pragma once

#include "weincalc/rational.hpp"

#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace weincalc {

/// Sparse univariate polynomial over Q in the formal variable x (= rho^2).
/// No stored coefficient is zero; the zero polynomial has no terms.
class PolyQ {
public:
    using Terms = std::map<unsigned, Rational>;

    PolyQ() = default;
    PolyQ(Rational c) { set(0, std::move(c)); } // NOLINT(google-explicit-constructor)
    PolyQ(long long c) : PolyQ(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    explicit PolyQ(const Terms& terms) {
        for (const auto& [e, c] : terms) set(e, c);
    }

    static PolyQ monomial(Rational c, unsigned exp) {
        PolyQ p;
        p.set(exp, std::move(c));
        return p;
    }
    static PolyQ x() { return monomial(1, 1); }

    [[nodiscard]] const Terms& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }

    /// Degree of a nonzero polynomial; throws on zero.
    [[nodiscard]] unsigned degree() const {
        if (is_zero()) throw std::domain_error("degree of zero polynomial");
        return terms_.rbegin()->first;
    }
    [[nodiscard]] Rational leading() const { return is_zero() ? Rational(0) : terms_.rbegin()->second; }

    [[nodiscard]] Rational coeff(unsigned exp) const {
        auto it = terms_.find(exp);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void set(unsigned exp, Rational c) {
        if (c.is_zero())
            terms_.erase(exp);
        else
            terms_[exp] = std::move(c);
    }
    void add_term(unsigned exp, const Rational& c) { set(exp, coeff(exp) + c); }

    [[nodiscard]] PolyQ monic() const {
        if (is_zero()) return {};
        return *this * leading().reciprocal();
    }

    [[nodiscard]] Rational evaluate(const Rational& at) const {
        Rational out(0);
        for (const auto& [e, c] : terms_) out += c * pow(at, e);
        return out;
    }
    [[nodiscard]] double evaluate(double at) const;

    PolyQ operator-() const {
        PolyQ out;
        for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
        return out;
    }
    PolyQ& operator+=(const PolyQ& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    PolyQ& operator-=(const PolyQ& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    PolyQ& operator*=(const Rational& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend PolyQ operator+(PolyQ a, const PolyQ& b) { return a += b; }
    friend PolyQ operator-(PolyQ a, const PolyQ& b) { return a -= b; }
    friend PolyQ operator*(PolyQ a, const Rational& s) { return a *= s; }
    friend PolyQ operator*(const Rational& s, PolyQ a) { return a *= s; }
    friend PolyQ operator*(const PolyQ& a, const PolyQ& b) {
        PolyQ out;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
        return out;
    }

    friend bool operator==(const PolyQ&, const PolyQ&) = default;

    /// Human form in the variable `var`, highest degree first, e.g. "x^2 + x + 1".
    [[nodiscard]] std::string to_string(const std::string& var = "x") const;

    friend std::ostream& operator<<(std::ostream& os, const PolyQ& p) { return os << p.to_string(); }

private:
    Terms terms_;
};

inline double PolyQ::evaluate(double at) const {
    double out = 0.0;
    for (const auto& [e, c] : terms_) {
        double pw = 1.0;
        for (unsigned i = 0; i < e; ++i) pw *= at;
        out += c.to_double() * pw;
    }
    return out;
}

inline std::string PolyQ::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational mag = c.abs();
        if (first) {
            if (c.sign() < 0) out += "-";
        } else {
            out += c.sign() < 0 ? " - " : " + ";
        }
        first = false;
        const bool unit = mag == Rational(1);
        if (e == 0) {
            out += mag.to_string();
            continue;
        }
        if (!unit) out += (mag.is_integer() ? mag.to_string() : "(" + mag.to_string() + ")") + "*";
        out += var;
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
}

struct PolyDivision {
    PolyQ quotient;
    PolyQ remainder;
};

/// Euclidean division a = q*b + r with deg r < deg b.
inline PolyDivision divmod(const PolyQ& a, const PolyQ& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    PolyDivision out{PolyQ{}, a};
    const unsigned db = b.degree();
    const Rational lb = b.leading();
    while (!out.remainder.is_zero() && out.remainder.degree() >= db) {
        const unsigned shift = out.remainder.degree() - db;
        const Rational factor = out.remainder.leading() / lb;
        out.quotient.add_term(shift, factor);
        for (const auto& [e, c] : b.terms()) out.remainder.add_term(e + shift, -(factor * c));
    }
    return out;
}

/// Exact quotient a / b; throws std::domain_error if b does not divide a.
inline PolyQ divexact(const PolyQ& a, const PolyQ& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw std::domain_error("divexact: " + b.to_string() + " does not divide " + a.to_string());
    return q;
}

/// Monic gcd in Q[x]; gcd(0, 0) = 0.
inline PolyQ gcd(PolyQ a, PolyQ b) {
    while (!b.is_zero()) {
        PolyQ r = divmod(a, b).remainder;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

} // namespace weincalc
