#include "weincalc/embedding.hpp"
#include "weincalc/manifold.hpp"
#include "weincalc/morphism.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace weincalc;

namespace {

BallPoint random_ball_point(unsigned n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    BallPoint z;
    for (unsigned j = 0; j < n; ++j) z.coords.emplace_back(g(rng), g(rng));
    const double r = std::sqrt(z.squared_norm());
    const double target = 0.999 * std::pow(u(rng), 1.0 / (2.0 * n));
    for (auto& c : z.coords) c *= target / r;
    return z;
}

} // namespace

TEST(Cpn, CoefficientExamples) {
    EXPECT_EQ(cpn_coefficient(1, 1), Rational(1, 2));
    EXPECT_EQ(cpn_coefficient(2, 1), Rational(1, 3));
    EXPECT_EQ(cpn_coefficient(2, 2), Rational(1, 2));
    EXPECT_EQ(cpn_coefficient(3, 2), Rational(3, 10));
    EXPECT_EQ(cpn_coefficient(5, 5), Rational(1, 2));
}

TEST(Cpn, RawSumExamples) {
    // n!/((n+1)! 2) * S_1 with S_1 = 2
    EXPECT_EQ(cpn_weinstein_raw(3, 1), Rational(1, 4));
    EXPECT_EQ(cpn_weinstein_raw(2, 2), Rational(1, 2));
}

TEST(Cpn, RejectsOutOfRange) {
    EXPECT_THROW(cpn_weinstein(1, 2), std::invalid_argument);
    EXPECT_THROW(cpn_weinstein(0, 1), std::invalid_argument);
    EXPECT_THROW(cpn_weinstein(3, 0), std::invalid_argument);
}

TEST(Cpn, ValueAndLattice) {
    const CpnValue v = cpn_weinstein(2, 1);
    EXPECT_EQ(v.coset.value, PiGradedValue::monomial(Rational(1, 3), 1));
    EXPECT_EQ(*v.coset.lattice.at(1, 0), Rational(1));
    EXPECT_EQ(v.coset.order().to_string(), "Finite(3)");
    EXPECT_FALSE(v.coset.is_trivial());
    EXPECT_EQ(cpn_weinstein(5, 5).coset.order(), OrderResult::finite(2));
}

TEST(Cpn, StrictlyBetweenZeroAndOneSoNeverTrivial) {
    for (unsigned n = 1; n <= 10; ++n)
        for (unsigned k = 1; k <= n; ++k) {
            const CpnValue v = cpn_weinstein(n, k);
            EXPECT_GT(v.q, Rational(0));
            EXPECT_LT(v.q, Rational(1));
            EXPECT_FALSE(v.coset.is_trivial()) << n << "," << k;
        }
}

TEST(Cpn, DegreeTwoClassHasOrderNPlusOne) {
    // q(n,1) = 1/(n+1)
    for (unsigned n = 1; n <= 12; ++n) {
        EXPECT_EQ(cpn_coefficient(n, 1), Rational(1, n + 1));
        EXPECT_EQ(cpn_weinstein(n, 1).coset.order(), OrderResult::finite(n + 1));
    }
}

TEST(Blowup, Examples) {
    // n = 2, k = 1: (1/3)(1 - x^3)/(1 - x^2) = (1/3)(1 + x + x^2)/(1 + x)
    const BlowupValue b = blowup_weinstein(2, 1);
    EXPECT_EQ(b.q, Rational(1, 3));
    EXPECT_FALSE(b.multiple.is_polynomial());
    EXPECT_EQ(*b.multiple.evaluate(Rational(1, 4)), Rational(7, 20));
    EXPECT_FALSE(b.coset.order().is_finite());

    // k = n: (1/2)(1 + x^n)
    const BlowupValue c = blowup_weinstein(2, 2);
    EXPECT_TRUE(c.multiple.is_polynomial());
    EXPECT_EQ(c.multiple.num(), PolyQ(Rational(1, 2)) + PolyQ::monomial(Rational(1, 2), 2));
    EXPECT_EQ(c.coset.order(), OrderResult::finite(2));
    EXPECT_EQ(blowup_flags(2, 2, c.coset.order()), std::vector<std::string>{"k_equals_n_order_mismatch"});
    EXPECT_TRUE(blowup_flags(3, 1, blowup_order(3, 1)).empty());
}

TEST(Blowup, ZeroWeightRecoversCpn) {
    for (unsigned n = 1; n <= 6; ++n)
        for (unsigned k = 1; k <= n; ++k) {
            const BlowupValue b = blowup_weinstein(n, k);
            EXPECT_EQ(*b.multiple.evaluate(Rational(0)), cpn_coefficient(n, k));
        }
}

TEST(Blowup, AgreesWithClosedFormAtRationalWeights) {
    for (unsigned n = 1; n <= 5; ++n)
        for (unsigned k = 1; k <= n; ++k)
            for (const Rational& x : {Rational(1, 4), Rational(1, 9), Rational(2, 3)}) {
                const Rational expect = cpn_coefficient(n, k) * (Rational(1) - pow(x, n + k)) / (Rational(1) - pow(x, n));
                EXPECT_EQ(*blowup_weinstein(n, k).multiple.evaluate(x), expect);
            }
}

TEST(Blowup, InfiniteOrderBelowTopDegree) {
    for (unsigned n = 2; n <= 8; ++n)
        for (unsigned k = 1; k < n; ++k) {
            const OrderResult r = blowup_order(n, k);
            EXPECT_FALSE(r.is_finite()) << n << "," << k;
            EXPECT_TRUE(r.witness().has_value());
        }
    EXPECT_EQ(blowup_order(1, 1), OrderResult::finite(2));
}

TEST(Blowup, LatticeAddsExceptionalGenerator) {
    const Lattice l = blowup_lattice(cpn_lattice(3), 3);
    EXPECT_EQ(l.size(), 2U);
    EXPECT_EQ(*l.at(3, 3), Rational(1, 6));
    EXPECT_EQ(*l.at(3, 0), Rational(1, 6));
}

TEST(Product, ZeroClassGivesCpnValue) {
    ManifoldDescriptor m;
    m.dimension = 4;
    m.periods[2] = {Rational(1)};
    m.periods[4] = {Rational(1, 2)};
    const Lattice full = product_cpn_lattice(2, 1, m);
    EXPECT_EQ(*full.at(1, 0), Rational(1));
    EXPECT_EQ(*full.at(0, 0), Rational(1));
    const CpnValue cp = cpn_weinstein(2, 1);
    const ClassValue a{1, cp.coset.value, cp.coset.lattice};
    const ClassValue b{1, PiGradedValue{}, m.period_lattice(1)};
    const CosetValue v = product_value(a, b, full);
    EXPECT_EQ(v.value, cp.coset.value);
    EXPECT_EQ(v.order(), cp.coset.order());
}

TEST(Product, ValuesAdd) {
    ManifoldDescriptor m;
    m.dimension = 4;
    m.periods[2] = {Rational(1, 3)};
    m.periods[4] = {Rational(1, 5)};
    // k = 2 on CP^2 x M: <pi^2/2, (1/3) pi, 1/5>
    const Lattice full = product_cpn_lattice(2, 2, m);
    EXPECT_EQ(*full.at(2, 0), Rational(1, 2));
    EXPECT_EQ(*full.at(1, 0), Rational(1, 3));
    EXPECT_EQ(*full.at(0, 0), Rational(1, 5));
    const CpnValue cp = cpn_weinstein(2, 2);
    const ClassValue a{3, cp.coset.value, cp.coset.lattice};
    const ClassValue b{3, PiGradedValue::monomial(Rational(1, 10), 0), m.period_lattice(2)};
    const CosetValue v = product_value(a, b, full);
    EXPECT_EQ(v.value, cp.coset.value + PiGradedValue::monomial(Rational(1, 10), 0));
    EXPECT_EQ(v.order(), OrderResult::finite(2));
}

TEST(Product, Errors) {
    ManifoldDescriptor m;
    m.dimension = 2;
    m.periods[2] = {Rational(1)};
    EXPECT_THROW(product_cpn_lattice(2, 2, m), std::invalid_argument); // k > dim M / 2
    EXPECT_THROW(product_cpn_lattice(1, 2, m), std::invalid_argument); // k > n
    const ClassValue a{1, PiGradedValue{}, cpn_lattice(1)};
    const ClassValue b{3, PiGradedValue{}, cpn_lattice(2)};
    EXPECT_THROW(product_value(a, b, cpn_lattice(1)), std::invalid_argument);
    const ClassValue c{1, PiGradedValue{}, Lattice{{Rational(1, 7), 0, 0}}};
    EXPECT_THROW(product_value(a, c, cpn_lattice(1)), std::invalid_argument);
}

TEST(Embedding, Examples) {
    const HomogeneousPoint o = embed_ball_to_cpn(BallPoint{{Complex{0, 0}, Complex{0, 0}}});
    ASSERT_EQ(o.coords.size(), 3U);
    EXPECT_EQ(o.coords[2], Complex(1, 0));
    const HomogeneousPoint w = embed_ball_to_cpn(BallPoint{{Complex{0.6, 0}}});
    EXPECT_NEAR(w.coords[1].real(), 0.8, 1e-15);
    EXPECT_THROW(embed_ball_to_cpn(BallPoint{{Complex{1, 0}}}), std::invalid_argument);
    EXPECT_THROW(inverse_embed(HomogeneousPoint{{Complex{1, 0}, Complex{0, 0}}}), std::invalid_argument);
}

TEST(Embedding, RoundTrip) {
    std::mt19937_64 rng(21);
    for (unsigned n = 1; n <= 4; ++n)
        for (int t = 0; t < 1000; ++t) {
            const BallPoint z = random_ball_point(n, rng);
            const HomogeneousPoint w = embed_ball_to_cpn(z);
            double norm2 = 0.0;
            for (const auto& c : w.coords) norm2 += std::norm(c);
            EXPECT_NEAR(norm2, 1.0, 1e-12);
            // Rescaling by a phase and a modulus does not move the point in CP^n.
            HomogeneousPoint scaled = w;
            for (auto& c : scaled.coords) c *= Complex(-1.7, 0.4);
            const BallPoint back = inverse_embed(scaled);
            for (unsigned j = 0; j < n; ++j) EXPECT_LT(std::abs(back.coords[j] - z.coords[j]), 1e-12);
        }
}

TEST(Embedding, SquaredModuliMatchFullEmbedding) {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 100; ++t) {
        const BallPoint z = random_ball_point(3, rng);
        std::vector<double> sq(3), out(4);
        for (unsigned j = 0; j < 3; ++j) sq[j] = std::norm(z.coords[j]);
        embed_squared_moduli(sq, out);
        const HomogeneousPoint w = embed_ball_to_cpn(z);
        for (unsigned j = 0; j < 4; ++j) EXPECT_NEAR(out[j], std::norm(w.coords[j]), 1e-14);
    }
}

TEST(TraceAction, Examples) {
    const double pi = std::numbers::pi;
    // [1 : 1] on CP^1: half the sphere, area pi/2
    EXPECT_NEAR(trace_action(1, 1, HomogeneousPoint{{Complex{1, 0}, Complex{1, 0}}}), pi / 2, 1e-15);
    // The centre of the chart has zero action.
    EXPECT_EQ(trace_action(2, 1, HomogeneousPoint{{Complex{}, Complex{}, Complex{1, 0}}}), 0.0);
    // [1 : 1 : 1], k = 2: (2/3)^2 pi^2 / 2
    EXPECT_NEAR(trace_action(2, 2, HomogeneousPoint{{Complex{1, 0}, Complex{1, 0}, Complex{1, 0}}}),
                4.0 / 9.0 * pi * pi / 2.0, 1e-14);
    EXPECT_THROW(trace_action(2, 3, HomogeneousPoint{{Complex{1, 0}, Complex{1, 0}, Complex{1, 0}}}),
                 std::invalid_argument);
    EXPECT_THROW(trace_action(1, 1, HomogeneousPoint{{Complex{1, 0}, Complex{}}}), std::invalid_argument);
}

TEST(TraceAction, InvariantUnderScalingAndPhases) {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 200; ++t) {
        HomogeneousPoint w;
        for (int j = 0; j < 4; ++j) w.coords.emplace_back(u(rng), u(rng));
        const double base = trace_action(3, 2, w);
        HomogeneousPoint s = w;
        for (auto& c : s.coords) c *= Complex(2.5, -0.3);
        EXPECT_NEAR(trace_action(3, 2, s), base, 1e-12 * (1 + base));
        // Independent phases per coordinate only change arguments, not moduli.
        HomogeneousPoint p = w;
        for (auto& c : p.coords) c *= std::polar(1.0, 6.0 * u(rng));
        EXPECT_NEAR(trace_action(3, 2, p), base, 1e-12 * (1 + base));
        EXPECT_NEAR(trace_action(3, 2, w.canonical()), base, 1e-12 * (1 + base));
    }
}

TEST(TraceAction, ExactPathAgreesWithFloatingPath) {
    const std::vector<Rational> sq{Rational(1, 4), Rational(1, 3), Rational(1, 6), Rational(1, 4)};
    // ratio = (1/4 + 1/3) / 1 = 7/12 with homogeneous total 1
    EXPECT_EQ(trace_action_exact(3, 2, sq), Rational(49, 144));
    HomogeneousPoint w;
    for (const auto& s : sq) w.coords.emplace_back(std::sqrt(s.to_double()), 0.0);
    EXPECT_NEAR(trace_action(3, 2, w), 49.0 / 144.0 * std::numbers::pi * std::numbers::pi / 2.0, 1e-14);
    const std::vector<Rational> bad{Rational(-1), Rational(1)};
    EXPECT_THROW(trace_action_exact(1, 1, bad), std::invalid_argument);
}
