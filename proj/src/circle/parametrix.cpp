#include "asym/circle/parametrix.hpp"

#include <limits>
#include <sstream>

namespace asym::circle {

CircleProblem::CircleProblem(CircleSymbol p, int levels, int norm_grid)
    : p_(std::move(p)), levels_(levels), norm_grid_(norm_grid) {
    if (p_.depth() == 0) throw HypothesisViolation("parametrix: zero symbol");
    ell_ = is_elliptic(p_);
    if (!ell_.elliptic) {
        std::ostringstream os;
        os << "symbol is not elliptic: principal part vanishes near x = " << ell_.argmin_x << " ("
           << (ell_.argmin_dir == Dir::plus ? "+" : "-") << " direction, margin " << ell_.margin << ")";
        throw HypothesisViolation(os.str());
    }
    for (Dir d : {Dir::plus, Dir::minus}) {
        const TrigFraction& pm = p_.terms[0][d];
        if (pm.power() != 0) throw Error("parametrix: principal symbol must be a trigonometric polynomial");
        principal_[d] = std::make_shared<const TrigPoly>(pm.num());
    }
}

CircleSymbol CircleProblem::apply(const CircleSymbol& u) const {
    std::size_t depth = static_cast<std::size_t>(levels_) + 1;
    depth = std::min(depth, u.known_limit());
    return compose_symbols(p_, u, depth);
}

Component CircleProblem::transport(int, const Component& s) const { return s * p_.terms[0]; }

Component CircleProblem::transport_solve(int, const Component& ts) const {
    return {ts.plus.divided_by(principal_.plus), ts.minus.divided_by(principal_.minus)};
}

CircleSymbol CircleProblem::extend(int j, const Component& s) const {
    CircleSymbol e = zero_element();
    e.terms.assign(static_cast<std::size_t>(j + 1), Component{});
    e.terms[static_cast<std::size_t>(j)] = s;
    return e.trim();
}

double CircleProblem::level_norm(int l, const CircleSymbol& u) const {
    double acc = 0.0;
    for (std::size_t k = 0; k < u.depth(); ++k) {
        if (coeff_is_zero(u.terms[k])) continue;
        if (static_cast<int>(k) < l) return std::numeric_limits<double>::infinity();
        acc += component_sup(u.terms[k], norm_grid_);
    }
    return acc;
}

double CircleProblem::target_level_norm(int l, const CircleSymbol& g) const {
    for (std::size_t k = 0; k < g.depth() && static_cast<int>(k) < l; ++k)
        if (!coeff_is_zero(g.terms[k])) return std::numeric_limits<double>::infinity();
    if (static_cast<std::size_t>(l) >= g.known_limit()) return std::numeric_limits<double>::quiet_NaN();
    return component_sup(g.coeff(static_cast<std::size_t>(l)), norm_grid_);
}

double CircleProblem::target_symbol_norm(int, const Component& ts) const {
    if (coeff_is_zero(ts)) return 0.0;
    return std::max(component_sup(ts, norm_grid_), std::numeric_limits<double>::min());
}

ParametrixResult build_parametrix(const CircleSymbol& p, int J) {
    CircleProblem problem(p, std::max(J, 1) + 1);
    auto order = core::solve_to_order(problem, identity_symbol(), J);
    ParametrixResult r;
    r.q = problem.zero_element();
    for (const auto& t : order.terms) r.q = problem.add(r.q, t.element);
    r.q.terms.resize(static_cast<std::size_t>(J));
    r.q.tail = Tail::unknown;
    r.terms = std::move(order.terms);
    r.residual = std::move(order.residual);
    for (int l = 0; l <= J; ++l) r.residual_norms.push_back(problem.target_level_norm(l, r.residual));
    r.achieved_level = core::achieved_level(problem, r.residual, J);
    return r;
}

CircleSymbol parametrix(const CircleSymbol& p, int J) { return build_parametrix(p, J).q; }

}  // namespace asym::circle
