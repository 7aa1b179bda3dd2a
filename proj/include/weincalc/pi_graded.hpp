#pragma once

#include "weincalc/ratfunc.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>

namespace weincalc {

/// sum_a f_a(x) * pi^a with each f_a a reduced rational function in x = rho^2.
/// pi and x are formal symbols; zero components are never stored.
class PiGradedValue {
public:
    using Components = std::map<unsigned, RatFuncQ>;

    PiGradedValue() = default;

    static PiGradedValue term(unsigned pi_exp, RatFuncQ f) {
        PiGradedValue v;
        v.set(pi_exp, std::move(f));
        return v;
    }
    /// c * pi^a * x^b
    static PiGradedValue monomial(const Rational& c, unsigned pi_exp, unsigned x_exp = 0) {
        return term(pi_exp, RatFuncQ(PolyQ::monomial(c, x_exp)));
    }

    [[nodiscard]] const Components& components() const { return components_; }
    [[nodiscard]] bool is_zero() const { return components_.empty(); }

    [[nodiscard]] RatFuncQ component(unsigned pi_exp) const {
        auto it = components_.find(pi_exp);
        return it == components_.end() ? RatFuncQ{} : it->second;
    }

    void set(unsigned pi_exp, RatFuncQ f) {
        if (f.is_zero())
            components_.erase(pi_exp);
        else
            components_[pi_exp] = std::move(f);
    }

    /// Numeric value with pi and x = rho^2 substituted.
    [[nodiscard]] double evaluate(double x) const {
        double out = 0.0;
        for (const auto& [a, f] : components_) out += f.evaluate(x) * std::pow(std::numbers::pi, a);
        return out;
    }

    PiGradedValue& operator+=(const PiGradedValue& o) {
        for (const auto& [a, f] : o.components_) set(a, component(a) + f);
        return *this;
    }
    friend PiGradedValue operator+(PiGradedValue a, const PiGradedValue& b) { return a += b; }
    friend PiGradedValue operator-(const PiGradedValue& a, const PiGradedValue& b) { return a + Rational(-1) * b; }
    friend PiGradedValue operator*(const Rational& s, const PiGradedValue& v) {
        PiGradedValue out;
        for (const auto& [a, f] : v.components_) out.set(a, s * f);
        return out;
    }

    friend bool operator==(const PiGradedValue&, const PiGradedValue&) = default;

    /// e.g. "(1/3)*pi + (x + 1)*pi^2"
    [[nodiscard]] std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        for (const auto& [a, f] : components_) {
            if (!out.empty()) out += " + ";
            std::string body = f.to_string();
            if (a == 0) {
                out += body;
                continue;
            }
            out += "(" + body + ")*pi";
            if (a > 1) out += "^" + std::to_string(a);
        }
        return out;
    }

private:
    Components components_;
};

} // namespace weincalc
