#pragma once

// JSON serialization of the library's domain objects: exact rationals travel
// as "p/q" strings (never floats), component models and glued sheaves follow
// the documented input schemas, divisors are emitted place by place with a
// total-degree field.

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "limitwp/curvemodel.hpp"
#include "limitwp/nodalglue.hpp"
#include "limitwp/ramification.hpp"

namespace limitwp::jsonio {

using json = nlohmann::json;
using curvemodel::ComponentModel;
using curvemodel::MarkedPoint;
using curvemodel::PlaceDivisor;

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string rat_str(const Rat& x) { return x.get_str(); }

inline Rat parse_rat(const json& j, const std::string& where) {
    try {
        if (j.is_number_integer()) return Rat(j.get<long>());
        if (j.is_string()) {
            Rat x;
            if (x.set_str(j.get<std::string>(), 10) != 0 || x.get_den() == 0)
                throw SchemaError(where + ": malformed rational '" + j.get<std::string>() + "'");
            x.canonicalize();
            return x;
        }
    } catch (const std::invalid_argument&) {
    }
    throw SchemaError(where + ": expected a rational as \"p/q\" string or integer");
}

inline long parse_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) throw SchemaError(where + ": expected an integer");
    return j.get<long>();
}

inline const json& field(const json& j, const std::string& key) {
    if (!j.is_object() || !j.contains(key)) throw SchemaError("missing field '" + key + "'");
    return j.at(key);
}

inline json poly_json(const Poly& p) {
    json a = json::array();
    for (long k = 0; k <= p.degree(); ++k) a.push_back(rat_str(p[k]));
    return a;
}

inline Poly parse_poly(const json& j, const std::string& where) {
    if (!j.is_array()) throw SchemaError(where + ": expected a coefficient array");
    std::vector<Rat> c;
    for (const auto& e : j) c.push_back(parse_rat(e, where));
    return Poly(std::move(c));
}

inline json component_json(const ComponentModel& m) {
    json j;
    j["kind"] = m.is_rational() ? "rational" : "hyperelliptic";
    if (!m.is_rational()) j["f"] = poly_json(m.f());
    json marked = json::array();
    for (const auto& p : m.marked()) {
        if (m.is_rational())
            marked.push_back(json::array({rat_str(p.a)}));
        else
            marked.push_back(json::array({rat_str(p.a), rat_str(p.b)}));
    }
    j["marked"] = marked;
    return j;
}

inline ComponentModel parse_component(const json& j) {
    std::string kind = field(j, "kind").get<std::string>();
    const json& marked = field(j, "marked");
    if (!marked.is_array()) throw SchemaError("'marked' must be an array");
    if (kind == "rational") {
        std::vector<Rat> xs;
        for (const auto& e : marked)
            xs.push_back(parse_rat(e.is_array() ? e.at(0) : e, "marked"));
        return ComponentModel::rational_line(xs);
    }
    if (kind != "hyperelliptic") throw SchemaError("unknown component kind '" + kind + "'");
    Poly f = parse_poly(field(j, "f"), "f");
    std::vector<MarkedPoint> pts;
    for (const auto& e : marked) {
        if (!e.is_array() || e.size() != 2)
            throw SchemaError("hyperelliptic marked points need [x, y] pairs");
        pts.push_back({parse_rat(e.at(0), "marked"), parse_rat(e.at(1), "marked")});
    }
    return ComponentModel::hyperelliptic(f, pts);
}

// Divisor twist on a component: either an integer n (meaning n times the
// node divisor) or {"delta": n, "infinity": k, "points": [{"x","y","mult"}]}.
inline PlaceDivisor parse_twist(const json& j, const ComponentModel& m) {
    if (j.is_number_integer()) return j.get<long>() * curvemodel::delta_divisor(m);
    if (!j.is_object()) throw SchemaError("twist must be an integer or an object");
    PlaceDivisor d;
    if (j.contains("delta")) d = parse_int(j.at("delta"), "delta") * curvemodel::delta_divisor(m);
    if (j.contains("infinity")) d.at_infinity += parse_int(j.at("infinity"), "infinity");
    if (j.contains("points"))
        for (const auto& e : j.at("points")) {
            MarkedPoint p{parse_rat(field(e, "x"), "x"),
                          m.is_rational() ? Rat(0) : parse_rat(field(e, "y"), "y")};
            d.add_point(p, parse_int(field(e, "mult"), "mult"));
        }
    d.prune();
    return d;
}

inline json divisor_json(const PlaceDivisor& d) {
    json entries = json::array();
    for (const auto& [p, mult] : d.points)
        entries.push_back({{"place", {{"x", rat_str(p.a)}, {"y", rat_str(p.b)}}},
                           {"mult", mult},
                           {"degree", 1}});
    for (const auto& e : d.irr)
        entries.push_back({{"place",
                            {{"minpoly", poly_json(e.minpoly)},
                             {"branch", e.ramified ? "ramified" : "pair"}}},
                           {"mult", e.mult},
                           {"degree", e.mult * e.minpoly.degree()}});
    if (d.at_infinity != 0)
        entries.push_back({{"place", "infinity"}, {"mult", d.at_infinity}, {"degree", 1}});
    return {{"entries", entries}, {"total_degree", d.degree()}};
}

inline json limit_divisor_json(const ramification::LimitDivisor& d) {
    return {{"comp1", divisor_json(d.comp1)},
            {"comp2", divisor_json(d.comp2)},
            {"node_mult", d.node_mult},
            {"total_degree", d.total_degree()}};
}

inline nodalglue::GluedSheaf parse_sheaf(const json& j, const nodalglue::NodalCurve& c) {
    nodalglue::GluedSheaf s;
    s.side1 = parse_twist(field(j, "side1"), c.comp(1));
    s.side2 = parse_twist(field(j, "side2"), c.comp(2));
    for (const auto& e : field(j, "glue")) s.glue.push_back(parse_rat(e, "glue"));
    return s;
}

inline std::vector<Rat> parse_rat_vector(const json& j, const std::string& where) {
    if (!j.is_array()) throw SchemaError(where + ": expected an array");
    std::vector<Rat> out;
    for (const auto& e : j) out.push_back(parse_rat(e, where));
    return out;
}

}  // namespace limitwp::jsonio
