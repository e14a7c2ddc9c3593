#pragma once

// Right parametrix of an elliptic circle symbol, built order by order through the
// generic engine with T^j = multiplication by the principal symbol.

#include "asym/circle/symbol.hpp"
#include "asym/core/scheme.hpp"

#include <memory>

namespace asym::circle {

class CircleProblem {
public:
    using element_type = CircleSymbol;
    using target_type = CircleSymbol;
    using symbol_type = Component;
    using target_symbol_type = Component;

    /// Throws HypothesisViolation unless p is elliptic.
    explicit CircleProblem(CircleSymbol p, int levels = 16, int norm_grid = 256);

    [[nodiscard]] const CircleSymbol& symbol() const { return p_; }
    [[nodiscard]] const EllipticReport& ellipticity() const { return ell_; }

    [[nodiscard]] int levels() const { return levels_; }
    [[nodiscard]] target_type apply(const element_type& u) const;
    [[nodiscard]] Component symbol_of(int j, const element_type& u) const { return u.coeff(static_cast<std::size_t>(j)); }
    [[nodiscard]] Component target_symbol_of(int j, const target_type& g) const {
        return g.coeff(static_cast<std::size_t>(j));
    }
    [[nodiscard]] Component transport(int, const Component& s) const;
    [[nodiscard]] Component transport_solve(int, const Component& ts) const;
    [[nodiscard]] element_type extend(int j, const Component& s) const;

    /// Infinite if a component below l is present, else the sum of component sups from l on.
    [[nodiscard]] double level_norm(int l, const element_type& u) const;
    /// Infinite if a component below l is present, else the sup of component l.
    [[nodiscard]] double target_level_norm(int l, const target_type& g) const;
    [[nodiscard]] double target_symbol_norm(int, const Component& ts) const;

    [[nodiscard]] element_type zero_element() const { return {Rational(-p_.anchor), Rational(1)}; }
    [[nodiscard]] target_type zero_target() const { return {Rational(0), Rational(1)}; }
    [[nodiscard]] element_type add(const element_type& a, const element_type& b) const { return symbol::phg_add(a, b); }
    [[nodiscard]] target_type add_target(const target_type& a, const target_type& b) const {
        return symbol::phg_add(a, b);
    }
    [[nodiscard]] target_type negate_target(const target_type& g) const { return symbol::phg_neg(g); }
    [[nodiscard]] Component negate_symbol(const Component& s) const { return -s; }

private:
    CircleSymbol p_;
    EllipticReport ell_;
    DirPair<std::shared_ptr<const TrigPoly>> principal_;  // p_m per direction, as the shared denominator
    int levels_;
    int norm_grid_;
};

struct ParametrixResult {
    CircleSymbol q;                                          // J components, tail unknown
    std::vector<core::ExpansionTerm<CircleSymbol>> terms;    // u_j from the engine
    CircleSymbol residual;                                   // sigma(P Q) - 1 through the problem depth
    std::vector<double> residual_norms;                      // target_level_norm rows 0..J
    int achieved_level = 0;
};

/// q with compose(p, q) = 1 through order -(J-1). Throws HypothesisViolation if p is not elliptic.
ParametrixResult build_parametrix(const CircleSymbol& p, int J);
CircleSymbol parametrix(const CircleSymbol& p, int J);

}  // namespace asym::circle
