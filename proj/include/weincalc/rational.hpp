#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace weincalc {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number, always stored in lowest terms with a positive
/// denominator. Zero is 0/1.
class Rational {
public:
    Rational() = default;
    Rational(long long v) : value_(v) {} // NOLINT(google-explicit-constructor)
    Rational(const BigInt& v) : value_(v) {} // NOLINT(google-explicit-constructor)
    Rational(BigInt num, BigInt den) {
        if (den == 0) throw std::domain_error("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        value_ = boost::multiprecision::cpp_rational(std::move(num), std::move(den));
    }

    [[nodiscard]] BigInt num() const { return boost::multiprecision::numerator(value_); }
    [[nodiscard]] BigInt den() const { return boost::multiprecision::denominator(value_); }

    [[nodiscard]] bool is_zero() const { return value_ == 0; }
    [[nodiscard]] bool is_integer() const { return den() == 1; }
    [[nodiscard]] int sign() const { return value_.sign(); }

    [[nodiscard]] Rational abs() const { return value_.sign() < 0 ? -*this : *this; }
    [[nodiscard]] Rational reciprocal() const {
        if (is_zero()) throw std::domain_error("reciprocal of zero");
        return Rational(den(), num());
    }

    /// Largest integer not exceeding the value.
    [[nodiscard]] BigInt floor() const {
        BigInt n = num(), d = den();
        BigInt q = n / d;
        if (n < 0 && q * d != n) --q;
        return q;
    }

    [[nodiscard]] double to_double() const { return value_.convert_to<double>(); }

    /// "p/q", or "p" when q = 1.
    [[nodiscard]] std::string to_string() const {
        if (is_integer()) return num().str();
        return num().str() + "/" + den().str();
    }

    /// Accepts "p", "p/q" and exact decimals "-1.25" (power-of-ten denominator).
    static Rational parse(std::string_view text);

    Rational operator-() const { Rational r; r.value_ = -value_; return r; }
    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("division by zero rational");
        value_ /= o.value_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        if (a.value_ < b.value_) return std::strong_ordering::less;
        if (a.value_ > b.value_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

private:
    boost::multiprecision::cpp_rational value_{0};
};

namespace detail {

inline BigInt parse_integer(std::string_view s, std::string_view whole) {
    if (s.empty()) throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
    std::size_t i = 0;
    bool negative = false;
    if (s[0] == '+' || s[0] == '-') {
        negative = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
    BigInt v = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9')
            throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
        v = v * 10 + (s[i] - '0');
    }
    return negative ? BigInt(-v) : v;
}

} // namespace detail

inline Rational Rational::parse(std::string_view text) {
    const std::string_view whole = text;
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt n = detail::parse_integer(text.substr(0, slash), whole);
        std::string_view den_text = text.substr(slash + 1);
        if (!den_text.empty() && (den_text[0] == '+' || den_text[0] == '-'))
            throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
        BigInt d = detail::parse_integer(den_text, whole);
        if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(whole) + "'");
        return Rational(std::move(n), std::move(d));
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = text.substr(0, dot);
        std::string_view frac_part = text.substr(dot + 1);
        bool negative = !int_part.empty() && int_part[0] == '-';
        if (!int_part.empty() && (int_part[0] == '-' || int_part[0] == '+')) int_part.remove_prefix(1);
        if (int_part.empty() && frac_part.empty())
            throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
        if (!frac_part.empty() && (frac_part[0] == '-' || frac_part[0] == '+'))
            throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
        BigInt ip = int_part.empty() ? BigInt(0) : detail::parse_integer(int_part, whole);
        BigInt fp = frac_part.empty() ? BigInt(0) : detail::parse_integer(frac_part, whole);
        BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac_part.size()));
        Rational r(ip * scale + fp, scale);
        return negative ? -r : r;
    }
    return Rational(detail::parse_integer(text, whole));
}

inline BigInt gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }
inline BigInt lcm(const BigInt& a, const BigInt& b) { return boost::multiprecision::lcm(a, b); }

inline Rational pow(const Rational& base, unsigned e) {
    Rational out(1);
    for (unsigned i = 0; i < e; ++i) out *= base;
    return out;
}

} // namespace weincalc
