#pragma once

#include "weincalc/rational.hpp"

#include <numeric>
#include <span>
#include <stdexcept>

namespace weincalc {

// Factorial-family functions. Arguments are plain unsigned integers; results
// are arbitrary precision, so no argument is too large to overflow.

inline BigInt factorial(unsigned n) {
    BigInt out = 1;
    for (unsigned i = 2; i <= n; ++i) out *= i;
    return out;
}

/// (2i-1)!! = 1*3*5*...*(2i-1), with the value 1 at i = 0.
inline BigInt double_factorial_odd(unsigned i) {
    BigInt out = 1;
    for (unsigned t = 1; t < 2 * i; t += 2) out *= t;
    return out;
}

inline BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt out = 1;
    for (unsigned i = 1; i <= k; ++i) {
        out *= n - k + i;
        out /= i; // exact: out is C(n-k+i, i) here
    }
    return out;
}

/// k! / (p_1! ... p_r!). Throws std::invalid_argument unless the parts sum to k.
inline BigInt multinomial(unsigned k, std::span<const unsigned> parts) {
    const unsigned long long total = std::accumulate(parts.begin(), parts.end(), 0ULL);
    if (total != k) throw std::invalid_argument("multinomial: parts sum to " + std::to_string(total) +
                                                ", expected " + std::to_string(k));
    // product of binomials C(p_1 + ... + p_j, p_j)
    BigInt out = 1;
    unsigned running = 0;
    for (unsigned p : parts) {
        running += p;
        out *= binomial(running, p);
    }
    return out;
}

} // namespace weincalc
