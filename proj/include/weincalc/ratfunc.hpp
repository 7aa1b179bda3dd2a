#pragma once

#include "weincalc/poly.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace weincalc {

/// Reduced rational function num/den over Q: gcd(num, den) = 1 and den is
/// monic. The zero function is 0/1.
class RatFuncQ {
public:
    RatFuncQ() : den_(1) {}
    RatFuncQ(PolyQ p) : num_(std::move(p)), den_(1) {} // NOLINT(google-explicit-constructor)
    RatFuncQ(Rational c) : RatFuncQ(PolyQ(std::move(c))) {} // NOLINT(google-explicit-constructor)

    /// Cancels the common factor and makes the denominator monic.
    static RatFuncQ reduce(const PolyQ& num, const PolyQ& den) {
        if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
        RatFuncQ out;
        if (num.is_zero()) return out;
        PolyQ g = gcd(num, den);
        PolyQ n = divexact(num, g);
        PolyQ d = divexact(den, g);
        const Rational lead = d.leading();
        out.num_ = n * lead.reciprocal();
        out.den_ = d.monic();
        return out;
    }

    [[nodiscard]] const PolyQ& num() const { return num_; }
    [[nodiscard]] const PolyQ& den() const { return den_; }

    [[nodiscard]] bool is_zero() const { return num_.is_zero(); }
    [[nodiscard]] bool is_polynomial() const { return den_ == PolyQ(1); }

    [[nodiscard]] std::optional<Rational> evaluate(const Rational& x) const {
        Rational d = den_.evaluate(x);
        if (d.is_zero()) return std::nullopt;
        return num_.evaluate(x) / d;
    }
    [[nodiscard]] double evaluate(double x) const { return num_.evaluate(x) / den_.evaluate(x); }

    RatFuncQ operator-() const {
        RatFuncQ out = *this;
        out.num_ = -out.num_;
        return out;
    }
    friend RatFuncQ operator+(const RatFuncQ& a, const RatFuncQ& b) {
        if (a.den_ == b.den_) return reduce(a.num_ + b.num_, a.den_);
        return reduce(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFuncQ operator-(const RatFuncQ& a, const RatFuncQ& b) { return a + (-b); }
    friend RatFuncQ operator*(const RatFuncQ& a, const RatFuncQ& b) {
        return reduce(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFuncQ operator*(const Rational& s, const RatFuncQ& a) {
        RatFuncQ out = a;
        out.num_ *= s;
        if (out.num_.is_zero()) out.den_ = PolyQ(1);
        return out;
    }

    friend bool operator==(const RatFuncQ&, const RatFuncQ&) = default;

    [[nodiscard]] std::string to_string(const std::string& var = "x") const {
        if (is_polynomial()) return num_.to_string(var);
        auto wrap = [&](const PolyQ& p) {
            return p.terms().size() > 1 ? "(" + p.to_string(var) + ")" : p.to_string(var);
        };
        return wrap(num_) + "/" + wrap(den_);
    }

private:
    PolyQ num_;
    PolyQ den_;
};

inline RatFuncQ ratfunc_reduce(const PolyQ& num, const PolyQ& den) { return RatFuncQ::reduce(num, den); }

} // namespace weincalc
