#pragma once

#include "weincalc/factorial.hpp"

#include <cstddef>
#include <iterator>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace weincalc {

/// A weak composition: `parts.size()` nonnegative slots summing to `weight`.
struct MultiIndex {
    std::vector<unsigned> parts;
    unsigned weight = 0;

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

/// Lazy range over all weak compositions of `weight` into `slots` parts, in
/// lexicographically decreasing order: (w,0,...,0) first, (0,...,0,w) last.
/// Yields exactly C(weight + slots - 1, slots - 1) elements.
class Compositions {
public:
    Compositions(unsigned weight, unsigned slots) : weight_(weight), slots_(slots) {
        if (slots == 0) throw std::invalid_argument("compositions need at least one slot");
    }

    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = MultiIndex;
        using difference_type = std::ptrdiff_t;
        using pointer = const MultiIndex*;
        using reference = const MultiIndex&;

        iterator() = default;

        reference operator*() const { return current_; }
        pointer operator->() const { return &current_; }

        iterator& operator++() {
            advance();
            return *this;
        }
        void operator++(int) { advance(); }

        friend bool operator==(const iterator& it, std::default_sentinel_t) { return it.done_; }

    private:
        friend class Compositions;
        iterator(unsigned weight, unsigned slots) {
            current_.weight = weight;
            current_.parts.assign(slots, 0);
            current_.parts[0] = weight;
            done_ = false;
        }

        // Move the tail mass one slot left of the rightmost nonzero non-final slot.
        void advance() {
            auto& p = current_.parts;
            const std::size_t last = p.size() - 1;
            const unsigned tail = p[last];
            p[last] = 0;
            std::size_t j = last;
            while (j > 0 && p[j - 1] == 0) --j;
            if (j == 0) {
                done_ = true;
                return;
            }
            --p[j - 1];
            p[j] = tail + 1;
        }

        MultiIndex current_;
        bool done_ = true;
    };

    [[nodiscard]] iterator begin() const { return iterator(weight_, slots_); }
    [[nodiscard]] std::default_sentinel_t end() const { return {}; }

private:
    unsigned weight_;
    unsigned slots_;
};

inline Compositions enumerate_compositions(unsigned weight, unsigned slots) { return {weight, slots}; }

/// S(k, l) = sum over compositions I of k into 2l slots of
///           k!/(i_1! ... i_2l!) * prod (2 i_j - 1)!!,
/// evaluated term by term.
inline BigInt moment_sum_bruteforce(unsigned k, unsigned l) {
    if (k < 1 || l < 1) throw std::invalid_argument("moment_sum_bruteforce requires k >= 1 and l >= 1");
    std::vector<BigInt> fact(k + 1), dfo(k + 1);
    for (unsigned i = 0; i <= k; ++i) {
        fact[i] = factorial(i);
        dfo[i] = double_factorial_odd(i);
    }
    BigInt total = 0;
    for (const MultiIndex& idx : enumerate_compositions(k, 2 * l)) {
        BigInt num = fact[k];
        BigInt den = 1;
        for (unsigned i : idx.parts) {
            if (i < 2) continue; // 0! = 1! = 1 and (-1)!! = 1!! = 1
            num *= dfo[i];
            den *= fact[i];
        }
        total += num / den;
    }
    return total;
}

/// Closed form 2^k * k! * C(k + l - 1, k); for l = k this is 2^k k! C(2k-1, k).
inline BigInt moment_sum_closed(unsigned k, unsigned l) {
    if (k < 1 || l < 1) throw std::invalid_argument("moment_sum_closed requires k >= 1 and l >= 1");
    return (BigInt(1) << k) * factorial(k) * binomial(k + l - 1, k);
}

struct IdentityRow {
    unsigned k = 0;
    BigInt brute_force;
    BigInt closed_form;
    bool pass = false;
};

inline std::vector<IdentityRow> verify_identity_va(unsigned k_max) {
    if (k_max < 1) throw std::invalid_argument("verify_identity_va requires k_max >= 1");
    std::vector<IdentityRow> rows;
    rows.reserve(k_max);
    for (unsigned k = 1; k <= k_max; ++k) {
        IdentityRow row{k, moment_sum_bruteforce(k, k), moment_sum_closed(k, k), false};
        row.pass = row.brute_force == row.closed_form;
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Exact value of the integral of (|z_1|^2 + ... + |z_l|^2)^k over the ball
/// B^{2n}(r0) against Lebesgue measure, as coefficient * pi^n * r0^(2(n+k)).
struct BallMoment {
    Rational coefficient; // S(k,l) / (2^k (n+k)!)
    unsigned pi_exp = 0;
    unsigned r0_exp = 0;

    /// coefficient * r0^(r0_exp), still to be multiplied by pi^pi_exp.
    [[nodiscard]] Rational at_radius(const Rational& r0) const { return coefficient * pow(r0, r0_exp); }
};

inline BallMoment ball_moment(unsigned n, unsigned l, unsigned k) {
    if (l < 1 || l > n) throw std::invalid_argument("ball_moment requires 1 <= l <= n");
    if (k < 1) throw std::invalid_argument("ball_moment requires k >= 1");
    Rational c(moment_sum_closed(k, l), (BigInt(1) << k) * factorial(n + k));
    return {c, n, 2 * (n + k)};
}

} // namespace weincalc
