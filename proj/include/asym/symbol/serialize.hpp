#pragma once

// JSON form of expansions: {"anchor", "step", "tail", "terms": [{"degree", "coeff"} ...]}.
// Rationals are strings "p/q"; complex rationals are a string or a [re, im] pair.

#include "asym/symbol/polyhom.hpp"

#include <json.hpp>

namespace asym::symbol {

using json = nlohmann::json;

Rational rational_from_json(const json& j);
json rational_to_json(const Rational& q);
QComplex qcomplex_from_json(const json& j);
json qcomplex_to_json(const QComplex& z);

template <class C>
C coeff_from_json(const json& j);
template <>
inline QComplex coeff_from_json<QComplex>(const json& j) {
    return qcomplex_from_json(j);
}
template <>
inline Rational coeff_from_json<Rational>(const json& j) {
    return rational_from_json(j);
}
template <>
inline DirPair<QComplex> coeff_from_json<DirPair<QComplex>>(const json& j) {
    if (!j.is_object() || !j.contains("plus") || !j.contains("minus"))
        throw ConfigError("direction coefficient needs 'plus' and 'minus'");
    return {qcomplex_from_json(j.at("plus")), qcomplex_from_json(j.at("minus"))};
}

inline json coeff_to_json(const QComplex& z) { return qcomplex_to_json(z); }
inline json coeff_to_json(const Rational& q) { return rational_to_json(q); }
inline json coeff_to_json(const DirPair<QComplex>& p) {
    return json{{"plus", qcomplex_to_json(p.plus)}, {"minus", qcomplex_to_json(p.minus)}};
}

inline json degree_to_json(const Rational& d) { return rational_to_json(d); }
inline json degree_to_json(const QComplex& d) { return qcomplex_to_json(d); }
template <class D>
D degree_from_json(const json& j);
template <>
inline Rational degree_from_json<Rational>(const json& j) {
    return rational_from_json(j);
}
template <>
inline QComplex degree_from_json<QComplex>(const json& j) {
    return qcomplex_from_json(j);
}

template <class C, class D>
json expansion_to_json(const PolyhomExpansion<C, D>& a) {
    json terms = json::array();
    for (std::size_t j = 0; j < a.depth(); ++j)
        terms.push_back(json{{"degree", degree_to_json(a.degree(j))}, {"coeff", coeff_to_json(a.terms[j])}});
    return json{{"anchor", degree_to_json(a.anchor)},
                {"step", rational_to_json(a.step)},
                {"tail", a.tail == Tail::zero ? "zero" : "unknown"},
                {"terms", terms}};
}

/// Terms may be listed in any order and with gaps; each degree must sit on the grading.
template <class C, class D>
PolyhomExpansion<C, D> expansion_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("expansion must be an object");
    if (!j.contains("anchor")) throw ConfigError("expansion: missing 'anchor'");
    D anchor = degree_from_json<D>(j.at("anchor"));
    Rational step = j.contains("step") ? rational_from_json(j.at("step")) : Rational(1);
    if (sgn(step) <= 0) throw ConfigError("expansion: 'step' must be positive");
    PolyhomExpansion<C, D> r(anchor, step);
    if (j.contains("tail")) {
        std::string t = j.at("tail").get<std::string>();
        if (t == "zero")
            r.tail = Tail::zero;
        else if (t == "unknown")
            r.tail = Tail::unknown;
        else
            throw ConfigError("expansion: tail must be 'zero' or 'unknown'");
    }
    if (j.contains("terms")) {
        for (const auto& term : j.at("terms")) {
            D deg = degree_from_json<D>(term.at("degree"));
            long k;
            try {
                k = grading_offset(anchor, deg, step);
            } catch (const Error& e) {
                throw ConfigError(std::string("expansion term: ") + e.what());
            }
            if (k < 0) throw ConfigError("expansion term degree above the anchor");
            auto idx = static_cast<std::size_t>(k);
            if (r.terms.size() <= idx) r.terms.resize(idx + 1);
            r.terms[idx] += coeff_from_json<C>(term.at("coeff"));
        }
    }
    return r;
}

}  // namespace asym::symbol
