#pragma once

// JSON round-trip for grid functions. Cyclotomic values serialize as
// exact rational-coefficient vectors, complex values as [re, im] pairs,
// so a cyclotomic grid survives the trip bit for bit.

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "grid.hpp"
#include "varieties.hpp"

namespace fflab {

namespace detail {

inline nlohmann::ordered_json value_to_json(const CycloValue& v) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : v.coeffs()) arr.push_back(rational_str(c));
    return arr;
}

inline nlohmann::ordered_json value_to_json(const std::complex<double>& v) {
    return nlohmann::ordered_json::array({v.real(), v.imag()});
}

inline void value_from_json(const nlohmann::ordered_json& j, int p, CycloValue& out) {
    std::vector<std::pair<long, Rational>> terms;
    for (std::size_t k = 0; k < j.size(); ++k) {
        Rational c = parse_rational(j[k].get<std::string>());
        if (c != 0) terms.emplace_back(static_cast<long>(k), c);
    }
    out = CycloValue::from_exponent_coeffs(p, terms);
}

inline void value_from_json(const nlohmann::ordered_json& j, int, std::complex<double>& out) {
    out = {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace detail

template <class T>
nlohmann::ordered_json grid_to_json(const GridFunction<T>& g) {
    nlohmann::ordered_json j;
    j["field"] = {{"p", g.field()->p()}, {"ell", g.field()->ell()}, {"modulus", g.field()->modulus()}};
    j["n"] = g.n();
    j["measure"] = measure_name(g.measure());
    j["backend"] = std::is_same_v<T, CycloValue> ? "cyclo" : "complex";
    if (g.variety()) {
        j["variety"] = {{"kind", variety_name(g.variety()->kind)}, {"d", g.variety()->d}};
    }
    nlohmann::ordered_json vals = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < g.size(); ++i) vals.push_back(detail::value_to_json(g[i]));
    j["values"] = std::move(vals);
    return j;
}

inline VarietyPtr variety_from_json(const nlohmann::ordered_json& j, const FieldPtr& f) {
    std::string kind = j.at("kind").get<std::string>();
    int d = j.at("d").get<int>();
    if (kind == "flat_disk") return flat_disk(f, d);
    if (kind == "paraboloid") return paraboloid(f, d);
    if (kind == "subspace_h") return subspace_h(f, d);
    throw std::invalid_argument("unknown variety kind: " + kind);
}

template <class T>
GridFunction<T> grid_from_json(const nlohmann::ordered_json& j) {
    const auto& fj = j.at("field");
    std::vector<int> modulus = fj.at("modulus").get<std::vector<int>>();
    FieldPtr f = Field::make(fj.at("p").get<int>(), fj.at("ell").get<int>(), modulus);
    int n = j.at("n").get<int>();
    std::string mname = j.at("measure").get<std::string>();
    Measure mu = mname == "counting"     ? Measure::Counting
                 : mname == "normalized" ? Measure::Normalized
                                         : Measure::Surface;
    VarietyPtr v;
    if (j.contains("variety")) v = variety_from_json(j.at("variety"), f);
    GridFunction<T> g(f, n, mu, mu == Measure::Surface ? v : nullptr);
    const auto& vals = j.at("values");
    if (vals.size() != g.size()) throw std::invalid_argument("grid_from_json: value count mismatch");
    for (std::size_t i = 0; i < g.size(); ++i) detail::value_from_json(vals[i], f->p(), g[i]);
    return g;
}

}  // namespace fflab
