#pragma once

#include "weincalc/compositions.hpp"
#include "weincalc/lattice.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace weincalc {

/// An element of R / P: a representative value and the lattice it is taken modulo.
struct CosetValue {
    PiGradedValue value;
    Lattice lattice;

    [[nodiscard]] OrderResult order() const { return lattice_order(value, lattice); }
    [[nodiscard]] bool is_trivial() const { return lattice_member(value, lattice); }
    /// Representative with every lattice-supported coefficient moved into [0, g).
    [[nodiscard]] PiGradedValue representative() const { return reduced_representative(value, lattice); }
};

namespace detail {

inline void check_degree_range(unsigned n, unsigned k) {
    if (n < 1) throw std::invalid_argument("n must be >= 1 (got " + std::to_string(n) + ")");
    if (k < 1) throw std::invalid_argument("k must be >= 1 (got " + std::to_string(k) + ")");
    if (k > n)
        throw std::invalid_argument("k must satisfy k <= n (got k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
}

// S(k,k) by enumeration is the expensive half of every CP^n evaluation; it only
// depends on k, so it is computed once per process.
inline BigInt cached_bruteforce_sk(unsigned k) {
    static std::mutex mutex;
    static std::map<unsigned, BigInt> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(k); it != cache.end()) return it->second;
    }
    BigInt s = moment_sum_bruteforce(k, k);
    std::lock_guard lock(mutex);
    return cache.emplace(k, std::move(s)).first->second;
}

} // namespace detail

/// q(n,k) = n! k! C(2k-1, k) / (n+k)!: the value on the CP^n generator is q * pi^k / k!.
inline Rational cpn_coefficient(unsigned n, unsigned k) {
    detail::check_degree_range(n, k);
    return Rational(factorial(n) * factorial(k) * binomial(2 * k - 1, k), factorial(n + k));
}

/// Unsimplified multi-index form n! / ((n+k)! 2^k) * S(k,k), with S(k,k)
/// enumerated term by term. Equal to cpn_coefficient(n, k).
inline Rational cpn_weinstein_raw(unsigned n, unsigned k) {
    detail::check_degree_range(n, k);
    return Rational(factorial(n) * detail::cached_bruteforce_sk(k), factorial(n + k) * (BigInt(1) << k));
}

/// P_2k(CP^n) = <pi^k / k!>
inline Lattice cpn_lattice(unsigned k) { return Lattice{{Rational(1, factorial(k)), k, 0}}; }

struct CpnValue {
    unsigned n = 0;
    unsigned k = 0;
    Rational q;   // multiple of pi^k / k!
    Rational raw; // same number from the multi-index sum
    CosetValue coset;
};

/// Value of the generalized Weinstein morphism on the U(k)-block generator of
/// pi_{2k-1}(Ham(CP^n)). Throws std::logic_error if the closed form and the
/// multi-index sum ever disagree.
inline CpnValue cpn_weinstein(unsigned n, unsigned k) {
    CpnValue out;
    out.n = n;
    out.k = k;
    out.q = cpn_coefficient(n, k);
    out.raw = cpn_weinstein_raw(n, k);
    if (out.q != out.raw)
        throw std::logic_error("CP^" + std::to_string(n) + " k=" + std::to_string(k) + ": closed form " +
                               out.q.to_string() + " != multi-index sum " + out.raw.to_string());
    out.coset.value = PiGradedValue::monomial(out.q / Rational(factorial(k)), k);
    out.coset.lattice = cpn_lattice(k);
    return out;
}

/// P_2k of the one-point blow-up of weight rho: base + Z<pi^k x^k / k!>.
inline Lattice blowup_lattice(const Lattice& base, unsigned k) {
    Lattice out = base;
    out.add({Rational(1, factorial(k)), k, k});
    return out;
}

struct BlowupValue {
    unsigned n = 0;
    unsigned k = 0;
    Rational q;
    RatFuncQ multiple; // coefficient of pi^k / k!, i.e. q (1 - x^(n+k)) / (1 - x^n)
    CosetValue coset;
};

/// Value on the induced class of the blow-up of CP^n at j(0), weight rho, x = rho^2:
/// q(n,k)/k! * (1 - x^(n+k)) / (1 - x^n) * pi^k.
inline BlowupValue blowup_weinstein(unsigned n, unsigned k) {
    detail::check_degree_range(n, k);
    BlowupValue out;
    out.n = n;
    out.k = k;
    out.q = cpn_weinstein(n, k).q;
    const PolyQ one(1);
    out.multiple = RatFuncQ::reduce(out.q * (one - PolyQ::monomial(1, n + k)), one - PolyQ::monomial(1, n));
    out.coset.value = PiGradedValue::term(k, Rational(1, factorial(k)) * out.multiple);
    out.coset.lattice = blowup_lattice(cpn_lattice(k), k);
    return out;
}

inline OrderResult blowup_order(unsigned n, unsigned k) { return blowup_weinstein(n, k).coset.order(); }

/// Structured flags for results that disagree with the expected infinite order.
/// At k = n the value reduces to (1/2)(1 + x^n) pi^n / n!, which has order 2.
inline std::vector<std::string> blowup_flags(unsigned n, unsigned k, const OrderResult& order) {
    std::vector<std::string> flags;
    if (k == n && order.is_finite()) flags.emplace_back("k_equals_n_order_mismatch");
    return flags;
}

inline std::string blowup_flag_message(const std::string& flag) {
    if (flag == "k_equals_n_order_mismatch")
        return "k = n: the reduced value (1/2)(1 + x^n) pi^n/n! has finite order 2 modulo "
               "<pi^n/n!, pi^n x^n/n!>; infinite order is claimed for every 1 <= k <= n but is not "
               "reproduced here";
    return flag;
}

/// A morphism value in R / P_{2k} for a class in pi_{degree}(Ham), degree = 2k - 1.
struct ClassValue {
    unsigned degree = 0;
    PiGradedValue value;
    Lattice lattice;
};

/// A^{MxN}[psi x phi] = [A^M[psi] + A^N[phi]] modulo the product period lattice.
/// Rejects mismatched degrees and a full lattice that does not contain both factor lattices.
inline CosetValue product_value(const ClassValue& a, const ClassValue& b, const Lattice& full_lattice) {
    if (a.degree != b.degree)
        throw std::invalid_argument("product_value: classes live in different degrees (" + std::to_string(a.degree) +
                                    " vs " + std::to_string(b.degree) + ")");
    const Lattice sum = lattice_sum(a.lattice, b.lattice);
    for (const auto& g : sum.generators())
        if (!lattice_member(PiGradedValue::monomial(g.coeff, g.pi_exp, g.x_exp), full_lattice))
            throw std::invalid_argument("product_value: generator " +
                                        PiGradedValue::monomial(g.coeff, g.pi_exp, g.x_exp).to_string() +
                                        " of the factor lattices is not in the product lattice");
    return {a.value + b.value, full_lattice};
}

} // namespace weincalc
