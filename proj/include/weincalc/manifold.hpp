#pragma once

#include "weincalc/morphism.hpp"
#include "weincalc/serialize.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace weincalc {

/// Descriptor validation failure pinned to a JSON field path, e.g. "periods.4[1]".
class DescriptorError : public std::invalid_argument {
public:
    DescriptorError(std::string field, const std::string& message)
        : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
    [[nodiscard]] const std::string& field() const { return field_; }

private:
    std::string field_;
};

struct NamedClass {
    unsigned degree = 0; // odd homotopy degree 2k - 1
    PiGradedValue value;
};

/// Closed symplectic manifold (M, omega) of dimension 2m, known only through
/// the invariants the product computation needs. Periods are rational numbers
/// (P_2j(M) is a subgroup of Q).
struct ManifoldDescriptor {
    unsigned dimension = 0;
    std::set<unsigned> trivial_odd_homotopy;
    std::map<unsigned, std::vector<Rational>> periods; // degree 2j -> generators
    std::map<std::string, NamedClass> classes;

    [[nodiscard]] unsigned half_dimension() const { return dimension / 2; }

    /// P_{2k}(M) as pi-exponent-0 generators; empty when no periods are listed.
    [[nodiscard]] Lattice period_lattice(unsigned k) const {
        Lattice out;
        if (auto it = periods.find(2 * k); it != periods.end())
            for (const auto& p : it->second) out.add({p, 0, 0});
        return out;
    }
};

/// Generators of P_{2k}(CP^n x M): pi^k/k! and, for 1 <= j <= k, P_{2j}(M) * pi^{k-j}/(k-j)!.
inline Lattice product_cpn_lattice(unsigned n, unsigned k, const ManifoldDescriptor& m) {
    if (k < 1 || k > n)
        throw std::invalid_argument("product_cpn_lattice: k must satisfy 1 <= k <= n (k=" + std::to_string(k) +
                                    ", n=" + std::to_string(n) + ")");
    if (k > m.half_dimension())
        throw std::invalid_argument("product_cpn_lattice: k=" + std::to_string(k) + " exceeds half the dimension of M (" +
                                    std::to_string(m.half_dimension()) + ")");
    Lattice out = cpn_lattice(k);
    for (unsigned j = 1; j <= k; ++j) {
        auto it = m.periods.find(2 * j);
        if (it == m.periods.end()) continue;
        const Rational scale(1, factorial(k - j));
        for (const auto& p : it->second)
            if (!p.is_zero()) out.add({p * scale, k - j, 0});
    }
    return out;
}

/// Parses
///   {"dimension": 4, "trivial_odd_homotopy": [1, 3],
///    "periods": {"2": ["1"], "4": ["1/2"]},
///    "classes": {"name": {"degree": 3, "value": <value json>}}}
/// Only "dimension" is required. Throws DescriptorError naming the offending field.
inline ManifoldDescriptor parse_manifold_descriptor(const nlohmann::json& j) {
    if (!j.is_object()) throw DescriptorError("$", "descriptor must be a JSON object");
    ManifoldDescriptor d;

    if (!j.contains("dimension")) throw DescriptorError("dimension", "missing");
    const auto& dim = j["dimension"];
    if (!dim.is_number_integer() || dim.get<long long>() <= 0 || dim.get<long long>() % 2 != 0)
        throw DescriptorError("dimension", "must be an even positive integer, got " + dim.dump());
    d.dimension = dim.get<unsigned>();

    if (j.contains("trivial_odd_homotopy")) {
        const auto& t = j["trivial_odd_homotopy"];
        if (!t.is_array()) throw DescriptorError("trivial_odd_homotopy", "must be an array of odd positive integers");
        for (std::size_t i = 0; i < t.size(); ++i) {
            const std::string field = "trivial_odd_homotopy[" + std::to_string(i) + "]";
            if (!t[i].is_number_integer() || t[i].get<long long>() <= 0 || t[i].get<long long>() % 2 == 0)
                throw DescriptorError(field, "must be an odd positive integer, got " + t[i].dump());
            d.trivial_odd_homotopy.insert(t[i].get<unsigned>());
        }
    }

    if (j.contains("periods")) {
        const auto& p = j["periods"];
        if (!p.is_object()) throw DescriptorError("periods", "must be an object keyed by even degree");
        for (const auto& [key, list] : p.items()) {
            const std::string field = "periods." + key;
            unsigned degree = 0;
            try {
                std::size_t used = 0;
                const long long v = std::stoll(key, &used);
                if (used != key.size() || v <= 0 || v % 2 != 0) throw std::invalid_argument(key);
                degree = static_cast<unsigned>(v);
            } catch (const std::exception&) {
                throw DescriptorError(field, "degree key must be an even positive integer");
            }
            if (degree / 2 > d.half_dimension())
                throw DescriptorError(field, "degree exceeds the dimension " + std::to_string(d.dimension));
            if (!list.is_array()) throw DescriptorError(field, "must be an array of rational strings");
            auto& out = d.periods[degree];
            for (std::size_t i = 0; i < list.size(); ++i) {
                const std::string entry_field = field + "[" + std::to_string(i) + "]";
                if (!list[i].is_string()) throw DescriptorError(entry_field, "must be a rational string \"p/q\"");
                const auto text = list[i].get<std::string>();
                if (text.rfind("irrational", 0) == 0)
                    throw DescriptorError(entry_field, "'" + text + "' is marked irrational; the product computation "
                                                       "requires every period of M to be rational (P_2j(M) in Q)");
                try {
                    out.push_back(Rational::parse(text));
                } catch (const std::exception& e) {
                    throw DescriptorError(entry_field, std::string("not a rational number: ") + e.what());
                }
            }
        }
    }

    if (j.contains("classes")) {
        const auto& c = j["classes"];
        if (!c.is_object()) throw DescriptorError("classes", "must be an object keyed by class name");
        for (const auto& [name, body] : c.items()) {
            const std::string field = "classes." + name;
            if (!body.is_object()) throw DescriptorError(field, "must be an object with \"degree\" and \"value\"");
            if (!body.contains("degree") || !body["degree"].is_number_integer() || body["degree"].get<long long>() <= 0 ||
                body["degree"].get<long long>() % 2 == 0)
                throw DescriptorError(field + ".degree", "must be an odd positive integer");
            NamedClass nc;
            nc.degree = body["degree"].get<unsigned>();
            if (body.contains("value")) {
                try {
                    nc.value = serial::value_from_json(body["value"]);
                } catch (const std::exception& e) {
                    throw DescriptorError(field + ".value", e.what());
                }
            }
            d.classes.emplace(name, std::move(nc));
        }
    }
    return d;
}

} // namespace weincalc
