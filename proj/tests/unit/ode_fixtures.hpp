#pragma once

#include "asym/ode/halfline.hpp"

#include <random>

namespace fixtures {

using asym::QComplex;
using asym::Rational;
using asym::ode::CoeffExpansion;
using asym::ode::HalfLineOperator;

/// L = D_t^m + sum_r a_r D_t^{m-r}; table[r-1] lists a_{r,0}, a_{r,1}, ...
inline HalfLineOperator make_op(int m, const Rational& lstar, const std::vector<std::vector<QComplex>>& table) {
    HalfLineOperator op;
    op.m = m;
    op.lstar = lstar;
    for (int r = 1; r <= m; ++r) {
        CoeffExpansion a(Rational(lstar * r), Rational(lstar + 1));
        if (static_cast<std::size_t>(r - 1) < table.size()) a.terms = table[static_cast<std::size_t>(r - 1)];
        op.coeffs.push_back(a.trim());
    }
    return op;
}

inline HalfLineOperator airy() { return make_op(2, Rational(1, 2), {{}, {QComplex(-1)}}); }

inline QComplex rnd_q(std::mt19937_64& rng, int range = 5) {
    std::uniform_int_distribution<long> num(-range, range), den(1, 4);
    return {asym::q(num(rng), den(rng)), asym::q(num(rng), den(rng))};
}

inline Rational rnd_lstar(std::mt19937_64& rng) {
    static const Rational choices[] = {Rational(0), Rational(1, 2), Rational(1), Rational(3, 2)};
    return choices[std::uniform_int_distribution<int>(0, 3)(rng)];
}

/// Random operator of order m with random exact coefficients (3 terms each).
inline HalfLineOperator random_op(std::mt19937_64& rng, int m) {
    std::vector<std::vector<QComplex>> table;
    for (int r = 1; r <= m; ++r) table.push_back({rnd_q(rng), rnd_q(rng), rnd_q(rng)});
    return make_op(m, rnd_lstar(rng), table);
}

/// Operator whose l0 has the given roots; lower coefficients random (real in a_{r,1} so Delta stays real-ish).
inline HalfLineOperator op_with_roots(std::mt19937_64& rng, const std::vector<Rational>& roots, const Rational& lstar) {
    const int m = static_cast<int>(roots.size());
    std::vector<QComplex> poly{QComplex(1)};  // highest first: tau^m + p1 tau^{m-1} + ...
    for (const auto& r : roots) {
        std::vector<QComplex> next(poly.size() + 1);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i] += poly[i];
            next[i + 1] -= poly[i] * QComplex(r);
        }
        poly = next;
    }
    std::vector<std::vector<QComplex>> table;
    for (int r = 1; r <= m; ++r) table.push_back({poly[static_cast<std::size_t>(r)], rnd_q(rng, 3), rnd_q(rng, 3)});
    return make_op(m, lstar, table);
}

}  // namespace fixtures
