#include "weincalc/compositions.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <set>
#include <vector>

using namespace weincalc;

namespace {

std::vector<std::vector<unsigned>> collect(unsigned weight, unsigned slots) {
    std::vector<std::vector<unsigned>> out;
    for (const auto& idx : enumerate_compositions(weight, slots)) out.push_back(idx.parts);
    return out;
}

// Exhaustive oracle: every vector in [0, weight]^slots with the right sum.
std::set<std::vector<unsigned>> exhaustive(unsigned weight, unsigned slots) {
    std::set<std::vector<unsigned>> out;
    std::vector<unsigned> v(slots, 0);
    std::function<void(unsigned, unsigned)> rec = [&](unsigned pos, unsigned left) {
        if (pos == slots - 1) {
            v[pos] = left;
            out.insert(v);
            return;
        }
        for (unsigned a = 0; a <= left; ++a) {
            v[pos] = a;
            rec(pos + 1, left - a);
        }
    };
    rec(0, weight);
    return out;
}

} // namespace

TEST(Compositions, SmallExamples) {
    EXPECT_EQ(collect(1, 2), (std::vector<std::vector<unsigned>>{{1, 0}, {0, 1}}));
    EXPECT_EQ(collect(0, 3), (std::vector<std::vector<unsigned>>{{0, 0, 0}}));
    EXPECT_EQ(collect(2, 4).size(), 10U);
    EXPECT_EQ(collect(5, 1), (std::vector<std::vector<unsigned>>{{5}}));
}

TEST(Compositions, ZeroSlotsRejected) { EXPECT_THROW(enumerate_compositions(2, 0), std::invalid_argument); }

TEST(Compositions, EachCompositionExactlyOnceInDecreasingLexOrder) {
    for (unsigned w = 0; w <= 6; ++w)
        for (unsigned s = 1; s <= 5; ++s) {
            const auto list = collect(w, s);
            EXPECT_EQ(BigInt(list.size()), binomial(w + s - 1, s - 1)) << w << "," << s;
            const std::set<std::vector<unsigned>> unique(list.begin(), list.end());
            EXPECT_EQ(unique.size(), list.size());
            EXPECT_EQ(unique, exhaustive(w, s));
            for (std::size_t i = 1; i < list.size(); ++i) EXPECT_GT(list[i - 1], list[i]);
        }
}

TEST(Compositions, WeightFieldMatchesParts) {
    for (const auto& idx : enumerate_compositions(4, 3)) {
        unsigned sum = 0;
        for (unsigned p : idx.parts) sum += p;
        EXPECT_EQ(sum, idx.weight);
        EXPECT_EQ(idx.weight, 4U);
    }
}

TEST(MomentSum, BruteForceExamples) {
    EXPECT_EQ(moment_sum_bruteforce(1, 1), 2);
    EXPECT_EQ(moment_sum_bruteforce(2, 2), 24);
    EXPECT_EQ(moment_sum_bruteforce(2, 1), 8);
    EXPECT_EQ(moment_sum_bruteforce(3, 3), 480);
}

TEST(MomentSum, ClosedFormExamples) {
    EXPECT_EQ(moment_sum_closed(2, 2), 24);
    EXPECT_EQ(moment_sum_closed(3, 3), 480);
    for (unsigned l = 1; l <= 10; ++l) EXPECT_EQ(moment_sum_closed(1, l), 2 * l);
}

TEST(MomentSum, RejectsZeroArguments) {
    EXPECT_THROW(moment_sum_bruteforce(0, 1), std::invalid_argument);
    EXPECT_THROW(moment_sum_closed(1, 0), std::invalid_argument);
}

TEST(MomentSum, BruteForceEqualsClosedFormUpToEight) {
    for (unsigned k = 1; k <= 8; ++k)
        for (unsigned l = 1; l <= 8; ++l) EXPECT_EQ(moment_sum_bruteforce(k, l), moment_sum_closed(k, l)) << k << "," << l;
}

TEST(MomentSum, StrictlyIncreasingInSlots) {
    for (unsigned k = 1; k <= 5; ++k)
        for (unsigned l = 1; l < 6; ++l) EXPECT_LT(moment_sum_bruteforce(k, l), moment_sum_bruteforce(k, l + 1));
}

TEST(MomentSum, SummandIdentityWithCentralBinomials) {
    // 2^k * multinomial(k, I) * prod (2i_j - 1)!! == k! * prod C(2 i_j, i_j)
    for (unsigned k = 1; k <= 5; ++k)
        for (const auto& idx : enumerate_compositions(k, 2 * k)) {
            BigInt lhs = (BigInt(1) << k) * multinomial(k, idx.parts);
            BigInt rhs = factorial(k);
            for (unsigned i : idx.parts) {
                lhs *= double_factorial_odd(i);
                rhs *= binomial(2 * i, i);
            }
            EXPECT_EQ(lhs, rhs);
        }
}

TEST(IdentityVa, AllPass) {
    for (unsigned k_max : {1U, 4U, 7U}) {
        const auto rows = verify_identity_va(k_max);
        ASSERT_EQ(rows.size(), k_max);
        for (const auto& r : rows) EXPECT_TRUE(r.pass) << r.k;
    }
    const auto rows = verify_identity_va(7);
    EXPECT_EQ(rows.back().brute_force, BigInt(645120) * 1716);
    EXPECT_EQ(rows.back().brute_force, 1107025920);
    EXPECT_THROW(verify_identity_va(0), std::invalid_argument);
}

TEST(BallMoment, PolarSpotValues) {
    // int_0^1 r^2 2 pi r dr = pi/2
    EXPECT_EQ(ball_moment(1, 1, 1).coefficient, Rational(1, 2));
    // half of int_{B^4} |x|^2 = (1/2)(pi^2/3)
    EXPECT_EQ(ball_moment(2, 1, 1).coefficient, Rational(1, 6));
    EXPECT_EQ(ball_moment(2, 1, 1).pi_exp, 2U);
    // int_0^1 r^4 2 pi r dr = pi/3
    EXPECT_EQ(ball_moment(1, 1, 2).coefficient, Rational(1, 3));
    EXPECT_EQ(ball_moment(2, 2, 2).coefficient, Rational(1, 4));
    EXPECT_EQ(ball_moment(2, 2, 1).coefficient, Rational(1, 3)); // int_{B^4} |x|^2 = pi^2/3
    EXPECT_EQ(ball_moment(3, 2, 1).r0_exp, 8U);
}

TEST(BallMoment, AgreesWithGammaFunctionRoute) {
    // Integral over B^{2n}(1) of (x_1^2 + ... + x_{2l}^2)^k computed through the
    // radial integral and the Beta(l, n - l) law of the partial squared norm on
    // the sphere: 2 pi^n / Gamma(n) * 1/(2(n+k)) * Gamma(l+k) Gamma(n) / (Gamma(l) Gamma(n+k)).
    for (unsigned n = 1; n <= 6; ++n)
        for (unsigned l = 1; l <= n; ++l)
            for (unsigned k = 1; k <= 6; ++k) {
                const double gamma_route = 2.0 * std::pow(std::numbers::pi, n) / (2.0 * (n + k)) *
                                           std::tgamma(l + k) / (std::tgamma(l) * std::tgamma(n + k));
                const BallMoment m = ball_moment(n, l, k);
                const double exact = m.coefficient.to_double() * std::pow(std::numbers::pi, m.pi_exp);
                EXPECT_NEAR(exact / gamma_route, 1.0, 1e-12) << n << "," << l << "," << k;
            }
}

TEST(BallMoment, RadiusScaling) {
    const BallMoment m = ball_moment(2, 1, 3);
    EXPECT_EQ(m.r0_exp, 10U);
    EXPECT_EQ(m.at_radius(Rational(1, 2)), m.coefficient / Rational(1024));
}

TEST(BallMoment, RejectsOutOfRange) {
    EXPECT_THROW(ball_moment(2, 3, 1), std::invalid_argument);
    EXPECT_THROW(ball_moment(2, 0, 1), std::invalid_argument);
    EXPECT_THROW(ball_moment(2, 1, 0), std::invalid_argument);
}
