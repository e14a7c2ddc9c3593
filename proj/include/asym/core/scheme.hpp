#pragma once

// Order-by-order solver over an abstract filtered problem: inductive construction of
// the terms, cutoff summation of the series, and the optional smoothing correction.
// Element and symbol representations belong to the instantiation; the engine only
// moves values through the maps the problem supplies.

#include "asym/core/errors.hpp"

#include <cmath>
#include <concepts>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace asym::core {

template <class P>
concept FilteredProblem = requires(const P& p, int j, const typename P::element_type& u,
                                   const typename P::target_type& g, const typename P::symbol_type& s,
                                   const typename P::target_symbol_type& ts) {
    typename P::element_type;
    typename P::target_type;
    typename P::symbol_type;
    typename P::target_symbol_type;
    { p.levels() } -> std::convertible_to<int>;
    { p.apply(u) } -> std::convertible_to<typename P::target_type>;
    { p.symbol_of(j, u) } -> std::convertible_to<typename P::symbol_type>;
    { p.target_symbol_of(j, g) } -> std::convertible_to<typename P::target_symbol_type>;
    { p.transport_solve(j, ts) } -> std::convertible_to<typename P::symbol_type>;
    { p.extend(j, s) } -> std::convertible_to<typename P::element_type>;
    { p.level_norm(j, u) } -> std::convertible_to<double>;
    { p.target_level_norm(j, g) } -> std::convertible_to<double>;
    { p.target_symbol_norm(j, ts) } -> std::convertible_to<double>;
    { p.zero_element() } -> std::convertible_to<typename P::element_type>;
    { p.zero_target() } -> std::convertible_to<typename P::target_type>;
    { p.add(u, u) } -> std::convertible_to<typename P::element_type>;
    { p.add_target(g, g) } -> std::convertible_to<typename P::target_type>;
    { p.negate_target(g) } -> std::convertible_to<typename P::target_type>;
    { p.negate_symbol(ts) } -> std::convertible_to<typename P::target_symbol_type>;
};

/// Forward transport map T^j, when the instantiation can evaluate it.
template <class P>
concept HasTransport = FilteredProblem<P> && requires(const P& p, int j, const typename P::symbol_type& s) {
    { p.transport(j, s) } -> std::convertible_to<typename P::target_symbol_type>;
};

/// Instantiations whose terms must be realized as functions before they can be summed.
template <class P>
concept HasSummationLayer = FilteredProblem<P> && requires(const P& p, int j, double c,
                                                           const typename P::element_type& u,
                                                           const typename P::target_type& g,
                                                           const typename P::realized_type& r,
                                                           const typename P::realized_target_type& rg) {
    typename P::realized_type;
    typename P::realized_target_type;
    { p.realize(u) } -> std::convertible_to<typename P::realized_type>;
    { p.cutoff_apply(c, r) } -> std::convertible_to<typename P::realized_type>;
    { p.realized_norm(j, r) } -> std::convertible_to<double>;
    { p.realized_zero() } -> std::convertible_to<typename P::realized_type>;
    { p.realized_add(r, r) } -> std::convertible_to<typename P::realized_type>;
    { p.apply_realized(r) } -> std::convertible_to<typename P::realized_target_type>;
    { p.realize_target(g) } -> std::convertible_to<typename P::realized_target_type>;
    { p.realized_target_sub(rg, rg) } -> std::convertible_to<typename P::realized_target_type>;
    { p.realized_target_norm(j, rg) } -> std::convertible_to<double>;
};

/// Step-3 solver on the residual class: returns v with L v = -g.
template <class P>
concept HasResidualSolver = HasSummationLayer<P> && requires(const P& p, const typename P::realized_target_type& g) {
    { p.residual_solve(g) } -> std::convertible_to<typename P::realized_type>;
};

template <class E>
struct ExpansionTerm {
    int level = 0;
    E element;
    std::vector<double> level_norms;  // level_norm(l, element) for l = 0..level
};

template <class E, class G>
struct OrderResult {
    std::vector<ExpansionTerm<E>> terms;
    G residual;
};

template <FilteredProblem P>
OrderResult<typename P::element_type, typename P::target_type> solve_to_order(
    const P& problem, const typename P::target_type& f, int J,
    const std::optional<typename P::element_type>& seed = std::nullopt) {
    using E = typename P::element_type;
    if (J < 0) throw LevelOverflow("order must be nonnegative");
    if (J > problem.levels())
        throw LevelOverflow("order " + std::to_string(J) + " exceeds supported depth " + std::to_string(problem.levels()));

    auto make_term = [&](int j, E u) {
        ExpansionTerm<E> t{j, std::move(u), {}};
        for (int l = 0; l <= j; ++l) t.level_norms.push_back(problem.level_norm(l, t.element));
        return t;
    };

    OrderResult<E, typename P::target_type> out{{}, problem.negate_target(f)};
    if (J == 0) return out;

    E u0 = seed ? *seed : problem.extend(0, problem.transport_solve(0, problem.target_symbol_of(0, f)));
    typename P::target_type g = problem.add_target(problem.apply(u0), problem.negate_target(f));
    if (seed && problem.target_symbol_norm(0, problem.target_symbol_of(0, g)) != 0.0)
        throw TransportError(0, "seed does not annihilate the level-0 symbol of the data");
    out.terms.push_back(make_term(0, std::move(u0)));

    for (int j = 1; j < J; ++j) {
        auto rhs = problem.negate_symbol(problem.target_symbol_of(j, g));
        E uj = problem.extend(j, problem.transport_solve(j, rhs));
        g = problem.add_target(g, problem.apply(uj));
        out.terms.push_back(make_term(j, std::move(uj)));
    }
    out.residual = std::move(g);
    return out;
}

/// Largest l <= cap such that the residual's target symbols vanish at all levels below l.
template <FilteredProblem P>
int achieved_level(const P& problem, const typename P::target_type& g, int cap) {
    int l = 0;
    while (l < cap && problem.target_symbol_norm(l, problem.target_symbol_of(l, g)) == 0.0) ++l;
    return l;
}

struct CutoffSchedule {
    std::vector<double> cutoffs;
    std::function<double(int)> tail_budget = [](int j) { return std::ldexp(1.0, -j); };
};

struct TailEntry {
    int level;     // J
    double norm;   // level_norm(J-1, sum_{j>=J} scaled terms)
    double bound;  // sum_{j>=J} tail_budget(j)
};

template <class E>
struct SummationResult {
    E sum;
    CutoffSchedule schedule;
    std::vector<double> term_norms;  // level_norm(j-1, chi(c_j) u_j), j >= 1
    std::vector<TailEntry> tails;
};

struct SummationOptions {
    double max_scale = 1e12;
};

/// Sum of chi(c_j) u_j. Without a schedule, c_0 = 1 and each c_j (kept nondecreasing)
/// doubles until the scaled term's level-(j-1) seminorm is within budget.
template <class E, class CutoffApply, class LevelNorm, class Add>
SummationResult<E> asymptotic_sum(const std::vector<E>& terms, const E& zero, CutoffApply&& cutoff_apply,
                                  LevelNorm&& level_norm, Add&& add, std::optional<CutoffSchedule> schedule = std::nullopt,
                                  const SummationOptions& opts = {}) {
    SummationResult<E> out{zero, schedule.value_or(CutoffSchedule{}), {}, {}};
    const std::size_t n = terms.size();
    const bool given = schedule.has_value() && !schedule->cutoffs.empty();
    if (given && schedule->cutoffs.size() < n) throw Error("cutoff schedule shorter than the term list");

    std::vector<E> scaled;
    scaled.reserve(n);
    if (!given) out.schedule.cutoffs.clear();
    double c = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (given) {
            c = schedule->cutoffs[j];
            if (c < 1.0 || (j > 0 && c < schedule->cutoffs[j - 1])) throw Error("cutoff schedule must be >= 1 and nondecreasing");
            scaled.push_back(cutoff_apply(c, terms[j]));
        } else if (j == 0) {
            scaled.push_back(cutoff_apply(c, terms[0]));
            out.schedule.cutoffs.push_back(c);
        } else {
            const int jj = static_cast<int>(j);
            const double budget = out.schedule.tail_budget(jj);
            E candidate = cutoff_apply(c, terms[j]);
            double nrm = level_norm(jj - 1, candidate);
            while (nrm > budget) {
                c *= 2.0;
                if (c > opts.max_scale) throw BudgetUnreachable(jj, nrm, c);
                candidate = cutoff_apply(c, terms[j]);
                nrm = level_norm(jj - 1, candidate);
            }
            scaled.push_back(std::move(candidate));
            out.schedule.cutoffs.push_back(c);
        }
        if (j > 0) out.term_norms.push_back(level_norm(static_cast<int>(j) - 1, scaled.back()));
    }

    // Tails from the back so each partial sum is built once.
    std::vector<TailEntry> tails;
    E tail = zero;
    double bound = 0.0;
    for (std::size_t J = n; J >= 1; --J) {
        tail = add(tail, scaled[J - 1]);
        bound += out.schedule.tail_budget(static_cast<int>(J - 1));
        if (J - 1 >= 1) {
            const int level = static_cast<int>(J - 1);
            tails.push_back({level, level_norm(level - 1, tail), bound});
        }
    }
    out.tails.assign(tails.rbegin(), tails.rend());
    out.sum = std::move(tail);
    return out;
}

template <class S>
struct SolveReport {
    S solution;
    std::vector<double> residual_norms;  // target level norm l = 0..J of L u - f
    int achieved_level = 0;              // symbolic levels cleared by the construction
    bool corrected = false;              // Step-3 correction applied
    std::optional<CutoffSchedule> schedule;
    std::vector<TailEntry> tails;
};

template <FilteredProblem P>
struct SolutionTypeOf {
    using type = typename P::element_type;
};
template <HasSummationLayer P>
struct SolutionTypeOf<P> {
    using type = typename P::realized_type;
};

template <FilteredProblem P>
SolveReport<typename SolutionTypeOf<P>::type> solve(const P& problem, const typename P::target_type& f, int J,
                                                    const std::optional<typename P::element_type>& seed = std::nullopt,
                                                    const SummationOptions& opts = {}) {
    auto order = solve_to_order(problem, f, J, seed);
    const int achieved = achieved_level(problem, order.residual, J);

    if constexpr (HasSummationLayer<P>) {
        using R = typename P::realized_type;
        std::vector<R> realized;
        realized.reserve(order.terms.size());
        for (const auto& t : order.terms) realized.push_back(problem.realize(t.element));
        auto summed = asymptotic_sum(
            realized, problem.realized_zero(), [&](double c, const R& r) { return problem.cutoff_apply(c, r); },
            [&](int l, const R& r) { return problem.realized_norm(l, r); },
            [&](const R& a, const R& b) { return problem.realized_add(a, b); }, std::nullopt, opts);

        const auto f_real = problem.realize_target(f);
        R u = summed.sum;
        bool corrected = false;
        if constexpr (HasResidualSolver<P>) {
            auto g = problem.realized_target_sub(problem.apply_realized(u), f_real);
            u = problem.realized_add(u, problem.residual_solve(g));
            corrected = true;
        }
        auto res = problem.realized_target_sub(problem.apply_realized(u), f_real);
        SolveReport<R> rep{u, {}, achieved, corrected, summed.schedule, summed.tails};
        for (int l = 0; l <= J; ++l) rep.residual_norms.push_back(problem.realized_target_norm(l, res));
        return rep;
    } else {
        typename P::element_type u = problem.zero_element();
        for (const auto& t : order.terms) u = problem.add(u, t.element);
        SolveReport<typename P::element_type> rep{u, {}, achieved, false, std::nullopt, {}};
        for (int l = 0; l <= J; ++l) rep.residual_norms.push_back(problem.target_level_norm(l, order.residual));
        return rep;
    }
}

/// Lemma-style right inverse of the target symbol map: s~ -> L extend(j, T^{-1} s~).
template <FilteredProblem P>
auto induced_splitting(const P& problem, int j) {
    if (j < 0 || j > problem.levels()) throw LevelOverflow("induced_splitting: level out of range");
    return [&problem, j](const typename P::target_symbol_type& ts) {
        return problem.apply(problem.extend(j, problem.transport_solve(j, ts)));
    };
}

/// Residual norms after each prefix of terms: row l is the target norm of L(u_0+...+u_{l-1}) - f.
template <FilteredProblem P>
std::vector<double> descent_table(const P& problem, const typename P::target_type& f,
                                  const std::vector<ExpansionTerm<typename P::element_type>>& terms, int norm_level = 0) {
    std::vector<double> rows;
    typename P::target_type g = problem.negate_target(f);
    rows.push_back(problem.target_level_norm(norm_level, g));
    for (const auto& t : terms) {
        g = problem.add_target(g, problem.apply(t.element));
        rows.push_back(problem.target_level_norm(norm_level, g));
    }
    return rows;
}

}  // namespace asym::core
