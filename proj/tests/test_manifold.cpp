#include "weincalc/manifold.hpp"

#include <gtest/gtest.h>

#include <string>

using namespace weincalc;
using nlohmann::json;

namespace {

std::string field_of(const std::string& text) {
    try {
        parse_manifold_descriptor(json::parse(text));
    } catch (const DescriptorError& e) {
        return e.field();
    }
    return "<accepted>";
}

} // namespace

TEST(Descriptor, Minimal) {
    const auto d = parse_manifold_descriptor(json::parse(R"({"dimension": 2})"));
    EXPECT_EQ(d.dimension, 2U);
    EXPECT_EQ(d.half_dimension(), 1U);
    EXPECT_TRUE(d.periods.empty());
    EXPECT_TRUE(d.period_lattice(1).empty());
}

TEST(Descriptor, FullExample) {
    const auto d = parse_manifold_descriptor(json::parse(R"({
        "dimension": 4,
        "trivial_odd_homotopy": [1, 3],
        "periods": {"2": ["1", "1/3"], "4": ["0.5"]},
        "classes": {"loop": {"degree": 1, "value": [{"pi_exp": 0, "num": [[0, "1/7"]]}]},
                    "zero": {"degree": 3}}
    })"));
    EXPECT_EQ(d.trivial_odd_homotopy, (std::set<unsigned>{1, 3}));
    ASSERT_EQ(d.periods.at(2).size(), 2U);
    EXPECT_EQ(d.periods.at(4)[0], Rational(1, 2));
    EXPECT_EQ(*d.period_lattice(1).at(0, 0), Rational(1, 3));
    EXPECT_EQ(d.classes.at("loop").value, PiGradedValue::monomial(Rational(1, 7), 0));
    EXPECT_TRUE(d.classes.at("zero").value.is_zero());
}

TEST(Descriptor, FieldLevelErrors) {
    EXPECT_EQ(field_of("[]"), "$");
    EXPECT_EQ(field_of("{}"), "dimension");
    EXPECT_EQ(field_of(R"({"dimension": 3})"), "dimension");
    EXPECT_EQ(field_of(R"({"dimension": -2})"), "dimension");
    EXPECT_EQ(field_of(R"({"dimension": "4"})"), "dimension");
    EXPECT_EQ(field_of(R"({"dimension": 4, "trivial_odd_homotopy": [1, 2]})"), "trivial_odd_homotopy[1]");
    EXPECT_EQ(field_of(R"({"dimension": 4, "periods": []})"), "periods");
    EXPECT_EQ(field_of(R"({"dimension": 4, "periods": {"3": ["1"]}})"), "periods.3");
    EXPECT_EQ(field_of(R"({"dimension": 4, "periods": {"6": ["1"]}})"), "periods.6");
    EXPECT_EQ(field_of(R"({"dimension": 4, "periods": {"2": "1"}})"), "periods.2");
    EXPECT_EQ(field_of(R"({"dimension": 4, "periods": {"2": ["1", 2]}})"), "periods.2[1]");
    EXPECT_EQ(field_of(R"({"dimension": 4, "periods": {"2": ["1", "x/2"]}})"), "periods.2[1]");
    EXPECT_EQ(field_of(R"({"dimension": 4, "classes": {"a": {"degree": 2}}})"), "classes.a.degree");
    EXPECT_EQ(field_of(R"({"dimension": 4, "classes": {"a": {"degree": 1, "value": 5}}})"), "classes.a.value");
    EXPECT_EQ(field_of(R"({"dimension": 4, "periods": {"2": ["1"]}})"), "<accepted>");
}

TEST(Descriptor, IrrationalPeriodRefusedWithReason) {
    try {
        parse_manifold_descriptor(json::parse(R"({"dimension": 2, "periods": {"2": ["irrational:sqrt2"]}})"));
        FAIL() << "irrational period accepted";
    } catch (const DescriptorError& e) {
        EXPECT_EQ(e.field(), "periods.2[0]");
        EXPECT_NE(std::string(e.what()).find("rational"), std::string::npos);
    }
}

TEST(Descriptor, ProductLatticeFromParsedPeriods) {
    const auto d = parse_manifold_descriptor(
        json::parse(R"({"dimension": 6, "periods": {"2": ["1/2"], "4": ["1/3"], "6": ["1/5"]}})"));
    // k = 3 on CP^3 x M: pi^3/6, (1/2) pi^2/2, (1/3) pi, 1/5
    const Lattice l = product_cpn_lattice(3, 3, d);
    EXPECT_EQ(*l.at(3, 0), Rational(1, 6));
    EXPECT_EQ(*l.at(2, 0), Rational(1, 4));
    EXPECT_EQ(*l.at(1, 0), Rational(1, 3));
    EXPECT_EQ(*l.at(0, 0), Rational(1, 5));
}
