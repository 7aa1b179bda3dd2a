#pragma once

#include "weincalc/lattice.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace weincalc::serial {

using nlohmann::json;

inline json poly_to_json(const PolyQ& p) {
    json out = json::array();
    for (const auto& [e, c] : p.terms()) out.push_back(json::array({e, c.to_string()}));
    return out;
}

inline PolyQ poly_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("polynomial must be an array of [exp, \"p/q\"] pairs");
    PolyQ p;
    for (const auto& term : j) {
        if (!term.is_array() || term.size() != 2 || !term[0].is_number_unsigned() || !term[1].is_string())
            throw std::invalid_argument("polynomial term must be [nonnegative exp, \"p/q\"]: " + term.dump());
        p.add_term(term[0].get<unsigned>(), Rational::parse(term[1].get<std::string>()));
    }
    return p;
}

/// [{"pi_exp": a, "num": [[e, "p/q"], ...], "den": [[e, "p/q"], ...]}, ...]
inline json value_to_json(const PiGradedValue& v) {
    json out = json::array();
    for (const auto& [a, f] : v.components())
        out.push_back({{"pi_exp", a}, {"num", poly_to_json(f.num())}, {"den", poly_to_json(f.den())}});
    return out;
}

inline PiGradedValue value_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("value must be an array of components");
    PiGradedValue v;
    for (const auto& comp : j) {
        if (!comp.is_object() || !comp.contains("pi_exp") || !comp["pi_exp"].is_number_unsigned())
            throw std::invalid_argument("value component needs a nonnegative integer \"pi_exp\": " + comp.dump());
        const unsigned a = comp["pi_exp"].get<unsigned>();
        PolyQ num = comp.contains("num") ? poly_from_json(comp["num"]) : PolyQ{};
        PolyQ den = comp.contains("den") ? poly_from_json(comp["den"]) : PolyQ(1);
        PiGradedValue part = PiGradedValue::term(a, RatFuncQ::reduce(num, den));
        v += part;
    }
    return v;
}

/// [{"coeff": "p/q", "pi_exp": a, "x_exp": b}, ...]
inline json lattice_to_json(const Lattice& l) {
    json out = json::array();
    for (const auto& g : l.generators())
        out.push_back({{"coeff", g.coeff.to_string()}, {"pi_exp", g.pi_exp}, {"x_exp", g.x_exp}});
    return out;
}

inline Lattice lattice_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("lattice must be an array of generators");
    Lattice l;
    for (const auto& g : j) {
        if (!g.is_object() || !g.contains("coeff") || !g["coeff"].is_string())
            throw std::invalid_argument("lattice generator needs a string \"coeff\": " + g.dump());
        const unsigned a = g.value("pi_exp", 0U);
        const unsigned b = g.value("x_exp", 0U);
        l.add({Rational::parse(g["coeff"].get<std::string>()), a, b});
    }
    return l;
}

inline json order_to_json(const OrderResult& r) {
    json out = {{"kind", r.is_finite() ? "finite" : "infinite"}};
    if (r.is_finite()) out["order"] = r.order().str();
    if (const auto& w = r.witness()) {
        json wj = {{"pi_exp", w->pi_exp}, {"reason", w->reason}};
        if (w->x_exp) wj["x_exp"] = *w->x_exp;
        out["witness"] = wj;
    }
    return out;
}

} // namespace weincalc::serial
