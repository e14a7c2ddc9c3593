#include "asym/symbol/serialize.hpp"

namespace asym::symbol {

Rational rational_from_json(const json& j) {
    try {
        if (j.is_string()) return parse_rational(j.get<std::string>());
        if (j.is_number_integer()) return Rational(j.get<long>());
    } catch (const ParseError& e) {
        throw ConfigError(e.what());
    }
    throw ConfigError("expected a rational string \"p/q\" or an integer, got " + j.dump());
}

json rational_to_json(const Rational& q) { return q.get_str(); }

QComplex qcomplex_from_json(const json& j) {
    if (j.is_array()) {
        if (j.size() != 2) throw ConfigError("complex value must be [re, im]");
        return {rational_from_json(j[0]), rational_from_json(j[1])};
    }
    return QComplex(rational_from_json(j));
}

json qcomplex_to_json(const QComplex& z) {
    if (z.is_real()) return rational_to_json(z.re);
    return json::array({rational_to_json(z.re), rational_to_json(z.im)});
}

}  // namespace asym::symbol
