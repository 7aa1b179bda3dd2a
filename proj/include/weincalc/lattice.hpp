#pragma once

#include "weincalc/pi_graded.hpp"

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace weincalc {

/// g > 0 with Z*g = Z*v_1 + ... + Z*v_r.
inline Rational rational_gcd(std::span<const Rational> values) {
    if (values.empty()) throw std::invalid_argument("rational_gcd of an empty sequence");
    BigInt common_den = 1;
    for (const Rational& v : values) {
        if (v.is_zero()) throw std::invalid_argument("rational_gcd: zero input");
        common_den = lcm(common_den, v.den());
    }
    BigInt g = 0;
    for (const Rational& v : values) g = gcd(g, BigInt(abs(v.num() * (common_den / v.den()))));
    return Rational(g, common_den);
}

/// One generator coeff * pi^pi_exp * x^x_exp of a period lattice.
struct LatticeGenerator {
    Rational coeff;
    unsigned pi_exp = 0;
    unsigned x_exp = 0;

    friend bool operator==(const LatticeGenerator&, const LatticeGenerator&) = default;
};

/// Z-module spanned by monomial generators. Generators sharing a monomial
/// pi^a x^b are collapsed to their positive rational_gcd on construction, so
/// the stored form is canonical.
class Lattice {
public:
    using Key = std::pair<unsigned, unsigned>; // (pi_exp, x_exp)

    Lattice() = default;
    explicit Lattice(std::span<const LatticeGenerator> gens) {
        for (const auto& g : gens) add(g);
    }
    Lattice(std::initializer_list<LatticeGenerator> gens) {
        for (const auto& g : gens) add(g);
    }

    void add(const LatticeGenerator& g) {
        if (g.coeff.is_zero()) throw std::invalid_argument("lattice generator with zero coefficient");
        const Key key{g.pi_exp, g.x_exp};
        auto it = gens_.find(key);
        if (it == gens_.end()) {
            gens_.emplace(key, g.coeff.abs());
        } else {
            const Rational pair[2] = {it->second, g.coeff};
            it->second = rational_gcd(pair);
        }
    }

    [[nodiscard]] std::vector<LatticeGenerator> generators() const {
        std::vector<LatticeGenerator> out;
        out.reserve(gens_.size());
        for (const auto& [key, c] : gens_) out.push_back({c, key.first, key.second});
        return out;
    }

    /// The positive generator of the cyclic summand at pi^a x^b, if any.
    [[nodiscard]] std::optional<Rational> at(unsigned pi_exp, unsigned x_exp) const {
        auto it = gens_.find({pi_exp, x_exp});
        if (it == gens_.end()) return std::nullopt;
        return it->second;
    }

    [[nodiscard]] std::size_t size() const { return gens_.size(); }
    [[nodiscard]] bool empty() const { return gens_.empty(); }

    friend bool operator==(const Lattice&, const Lattice&) = default;

    [[nodiscard]] std::string to_string() const {
        std::string out = "<";
        bool first = true;
        for (const auto& [key, c] : gens_) {
            if (!first) out += ", ";
            first = false;
            out += PiGradedValue::monomial(c, key.first, key.second).to_string();
        }
        return out + ">";
    }

private:
    std::map<Key, Rational> gens_;
};

inline Lattice lattice_sum(const Lattice& a, const Lattice& b) {
    Lattice out = a;
    for (const auto& g : b.generators()) out.add(g);
    return out;
}

struct OrderWitness {
    unsigned pi_exp = 0;
    std::optional<unsigned> x_exp; // empty when the whole pi-component is non-polynomial
    std::string reason;
};

class OrderResult {
public:
    enum class Kind { finite, infinite };

    static OrderResult finite(BigInt m) { return OrderResult(Kind::finite, std::move(m), std::nullopt); }
    static OrderResult infinite(OrderWitness w) { return OrderResult(Kind::infinite, 0, std::move(w)); }

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] bool is_finite() const { return kind_ == Kind::finite; }
    /// Meaningful only for finite results.
    [[nodiscard]] const BigInt& order() const { return order_; }
    [[nodiscard]] const std::optional<OrderWitness>& witness() const { return witness_; }

    [[nodiscard]] std::string to_string() const {
        return is_finite() ? "Finite(" + order_.str() + ")" : "Infinite";
    }

    friend bool operator==(const OrderResult& a, const OrderResult& b) {
        return a.kind_ == b.kind_ && a.order_ == b.order_;
    }

private:
    OrderResult(Kind k, BigInt m, std::optional<OrderWitness> w)
        : kind_(k), order_(std::move(m)), witness_(std::move(w)) {}

    Kind kind_;
    BigInt order_;
    std::optional<OrderWitness> witness_;
};

// Membership and order rely on {pi^a x^b} being linearly independent over Q
// (pi and rho = sqrt(x) treated as algebraically independent), so both
// decompose monomial by monomial into cyclic subgroups of Q.

inline OrderResult lattice_order(const PiGradedValue& value, const Lattice& lattice) {
    BigInt m = 1;
    for (const auto& [a, f] : value.components()) {
        if (!f.is_polynomial())
            return OrderResult::infinite(
                {a, std::nullopt, "coefficient of pi^" + std::to_string(a) + " is not a polynomial in x: " + f.to_string()});
        for (const auto& [b, c] : f.num().terms()) {
            auto g = lattice.at(a, b);
            if (!g)
                return OrderResult::infinite(
                    {a, b, "no generator at pi^" + std::to_string(a) + " x^" + std::to_string(b)});
            m = lcm(m, (c / *g).den());
        }
    }
    return OrderResult::finite(m);
}

inline bool lattice_member(const PiGradedValue& value, const Lattice& lattice) {
    const OrderResult r = lattice_order(value, lattice);
    return r.is_finite() && r.order() == 1;
}

/// True when every generator of `inner` lies in `outer`.
inline bool lattice_contains(const Lattice& outer, const Lattice& inner) {
    for (const auto& g : inner.generators())
        if (!lattice_member(PiGradedValue::monomial(g.coeff, g.pi_exp, g.x_exp), outer)) return false;
    return true;
}

/// Shifts every lattice-supported monomial coefficient of a polynomial
/// component into [0, g). Other parts of the value are left untouched.
inline PiGradedValue reduced_representative(const PiGradedValue& value, const Lattice& lattice) {
    PiGradedValue out;
    for (const auto& [a, f] : value.components()) {
        if (!f.is_polynomial()) {
            out.set(a, f);
            continue;
        }
        PolyQ p;
        for (const auto& [b, c] : f.num().terms()) {
            auto g = lattice.at(a, b);
            if (!g) {
                p.set(b, c);
                continue;
            }
            p.set(b, c - Rational((c / *g).floor()) * *g);
        }
        out.set(a, RatFuncQ(p));
    }
    return out;
}

} // namespace weincalc
