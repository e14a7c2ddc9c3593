#pragma once

// Classical symbols on the circle: sum_j p_{m-j}(x, dir) |xi|^{m-j}, one exact trig
// fraction per direction and degree.

#include "asym/circle/trig.hpp"
#include "asym/symbol/polyhom.hpp"

#include <vector>

namespace asym::circle {

using symbol::Dir;
using symbol::DirPair;
using symbol::Tail;

inline bool coeff_is_zero(const TrigFraction& f) { return f.is_zero(); }

using Component = DirPair<TrigFraction>;
using CircleSymbol = symbol::PolyhomExpansion<Component, Rational>;

/// Finite symbol of order m from trig-poly components, top degree first.
CircleSymbol make_symbol(const Rational& order, const std::vector<DirPair<TrigPoly>>& components);
/// a(x) xi^d for a nonnegative integer d, i.e. plus = a, minus = (-1)^d a.
CircleSymbol polynomial_symbol(const TrigPoly& a, long d);
CircleSymbol identity_symbol();

cplx eval_component(const CircleSymbol& p, std::size_t j, double x, Dir dir);

/// Whether component j glues across xi = 0 into a(x) xi^d (d a nonnegative integer).
bool is_polynomial_component(const CircleSymbol& p, std::size_t j);

struct EllipticReport {
    bool elliptic = false;
    double margin = 0.0;  // min over x, dir of |p_m(x, dir)|
    double argmin_x = 0.0;
    Dir argmin_dir = Dir::plus;
};

EllipticReport is_elliptic(const CircleSymbol& p, int grid = 4096);

/// Components 0..depth-1 of the composed symbol, exactly.
CircleSymbol compose_symbols(const CircleSymbol& p, const CircleSymbol& q, std::size_t depth);

/// Components of a - b through `depth` (used for recomposition checks).
bool components_equal(const CircleSymbol& a, const CircleSymbol& b, std::size_t depth);

/// sup over a uniform x grid of |component j|, both directions.
double component_sup(const CircleSymbol& p, std::size_t j, int grid = 512);
double component_sup(const Component& c, int grid = 512);

}  // namespace asym::circle
