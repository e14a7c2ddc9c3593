#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "asym/core/scheme.hpp"
#include "asym/ode/problem.hpp"
#include "asym/symbol/excision.hpp"
#include "ode_fixtures.hpp"

#include <cmath>

using namespace asym;
using namespace asym::ode;
using fixtures::airy;
using fixtures::make_op;

namespace {

/// Grid samples standing in for functions on [1, 1e12]; level l seminorm is sup |u| t^l.
struct Sampled {
    std::vector<double> t, v;
};

Sampled sampled_power(double amp, int decay) {
    Sampled s;
    for (int i = 0; i < 1200; ++i) {
        double t = std::pow(10.0, 12.0 * i / 1199.0);
        s.t.push_back(t);
        s.v.push_back(amp * std::pow(t, -decay));
    }
    return s;
}

}  // namespace

TEST_CASE("ODE instantiation reproduces build_fundamental exactly") {
    OdeProblem<QComplex> prob(airy(), QComplex(1));
    static_assert(core::FilteredProblem<OdeProblem<QComplex>>);
    static_assert(core::HasResidualSolver<OdeProblem<QComplex>>);
    const int J = 6;
    auto res = core::solve_to_order(prob, prob.zero_target(), J, prob.seed());
    auto direct = build_fundamental(airy(), QComplex(1), J);
    REQUIRE(res.terms.size() == static_cast<std::size_t>(J));
    for (int j = 0; j < J; ++j) {
        CHECK(res.terms[static_cast<std::size_t>(j)].level == j);
        CHECK(prob.symbol_of(j, res.terms[static_cast<std::size_t>(j)].element) ==
              direct.amplitude.terms[static_cast<std::size_t>(j)]);
        for (double n : res.terms[static_cast<std::size_t>(j)].level_norms) CHECK(std::isfinite(n));
    }
    // filtration descent after every prefix
    auto g = prob.negate_target(prob.zero_target());
    for (int j = 0; j < J; ++j) {
        g = prob.add_target(g, prob.apply(res.terms[static_cast<std::size_t>(j)].element));
        for (int l = 0; l <= j; ++l) CHECK(prob.target_symbol_of(l, g).is_zero());
    }
    CHECK(core::achieved_level(prob, res.residual, J) == J);
    CHECK_FALSE(prob.target_symbol_of(J, res.residual).is_zero());

    auto again = core::solve_to_order(prob, prob.zero_target(), J, prob.seed());
    for (int j = 0; j < J; ++j)
        CHECK(again.terms[static_cast<std::size_t>(j)].element == res.terms[static_cast<std::size_t>(j)].element);
}

TEST_CASE("constant-coefficient instantiation has zero higher terms") {
    auto op = make_op(1, Rational(0), {{QComplex(-2)}});
    OdeProblem<QComplex> prob(op, QComplex(2));
    auto res = core::solve_to_order(prob, prob.zero_target(), 5, prob.seed());
    for (std::size_t j = 1; j < res.terms.size(); ++j) CHECK(res.terms[j].element.is_zero());
    CHECK(res.residual.is_zero());
}

TEST_CASE("engine errors") {
    OdeProblem<QComplex> prob(airy(), QComplex(1));
    CHECK_THROWS_AS(core::solve_to_order(prob, prob.zero_target(), 3), TransportError);
    CHECK_THROWS_AS(core::solve_to_order(prob, prob.zero_target(), prob.levels() + 1, prob.seed()), LevelOverflow);
    auto bad_seed = prob.extend(0, QComplex(1));
    bad_seed = prob.add(bad_seed, prob.extend(1, QComplex(3)));
    // a seed with a wrong level-1 coefficient still clears level 0
    CHECK_NOTHROW(core::solve_to_order(prob, prob.zero_target(), 2, bad_seed));
    auto zero_res = core::solve_to_order(prob, prob.zero_target(), 0);
    CHECK(zero_res.terms.empty());
    CHECK(zero_res.residual.is_zero());
}

TEST_CASE("induced splitting on the ODE instantiation") {
    OdeProblem<QComplex> prob(airy(), QComplex(1));
    for (int j = 1; j <= 4; ++j) {
        auto split = core::induced_splitting(prob, j);
        QComplex s(q(3, 7), q(-2, 5));
        auto out = split(s);
        CHECK(prob.target_symbol_of(j, out) == s);
        for (int l = 0; l < j; ++l) CHECK(prob.target_symbol_of(l, out).is_zero());
        CHECK(prob.transport(j, prob.transport_solve(j, s)) == s);
        CHECK(prob.symbol_of(j, prob.extend(j, s)) == s);
    }
}

TEST_CASE("asymptotic_sum: trivial sequences") {
    auto zero = sampled_power(0.0, 0);
    auto cutoff = [](double c, const Sampled& u) {
        Sampled r = u;
        for (std::size_t i = 0; i < r.t.size(); ++i) r.v[i] *= symbol::excision_profile(r.t[i] / c);
        return r;
    };
    auto norm = [](int l, const Sampled& u) {
        double m = 0;
        for (std::size_t i = 0; i < u.t.size(); ++i) m = std::max(m, std::abs(u.v[i]) * std::pow(u.t[i], l));
        return m;
    };
    auto add = [](const Sampled& a, const Sampled& b) {
        Sampled r = a;
        for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] += b.v[i];
        return r;
    };
    std::vector<Sampled> zeros(5, zero);
    auto z = core::asymptotic_sum(zeros, zero, cutoff, norm, add);
    for (double v : z.sum.v) CHECK(v == 0.0);

    std::vector<Sampled> one{sampled_power(3.0, 1)};
    auto s1 = core::asymptotic_sum(one, zero, cutoff, norm, add);
    CHECK(s1.schedule.cutoffs == std::vector<double>{1.0});
    auto direct = cutoff(1.0, one[0]);
    CHECK(s1.sum.v == direct.v);
}

TEST_CASE("asymptotic_sum: prescribed seminorms certify tails to level 8") {
    auto zero = sampled_power(0.0, 0);
    auto cutoff = [](double c, const Sampled& u) {
        Sampled r = u;
        for (std::size_t i = 0; i < r.t.size(); ++i) r.v[i] *= symbol::excision_profile(r.t[i] / c);
        return r;
    };
    auto norm = [](int l, const Sampled& u) {
        double m = 0;
        for (std::size_t i = 0; i < u.t.size(); ++i) m = std::max(m, std::abs(u.v[i]) * std::pow(u.t[i], l));
        return m;
    };
    auto add = [](const Sampled& a, const Sampled& b) {
        Sampled r = a;
        for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] += b.v[i];
        return r;
    };
    std::vector<Sampled> terms;
    for (int j = 0; j <= 9; ++j) terms.push_back(sampled_power(std::pow(5.0, j), j));
    auto res = core::asymptotic_sum(terms, zero, cutoff, norm, add);
    for (std::size_t j = 1; j < res.schedule.cutoffs.size(); ++j) CHECK(res.schedule.cutoffs[j] >= res.schedule.cutoffs[j - 1]);
    CHECK(res.schedule.cutoffs.back() > 1e3);
    REQUIRE(res.tails.size() >= 8);
    for (const auto& tail : res.tails) {
        CHECK(tail.norm <= tail.bound);
        CHECK(tail.bound <= std::ldexp(1.0, -tail.level + 1));
    }

    core::SummationOptions tight;
    tight.max_scale = 16.0;
    CHECK_THROWS_AS(core::asymptotic_sum(terms, zero, cutoff, norm, add, std::nullopt, tight), BudgetUnreachable);
}

TEST_CASE("full solve on the Airy branch with Step-3 correction") {
    OdeProblemConfig cfg;
    cfg.window_points = 81;
    cfg.norm_points = 200;
    OdeProblem<QComplex> prob(airy(), QComplex(1), cfg);
    const int J = 6;
    auto rep = core::solve(prob, prob.zero_target(), J, prob.seed());
    CHECK(rep.corrected);
    CHECK(rep.achieved_level == J);
    REQUIRE(rep.residual_norms.size() == static_cast<std::size_t>(J + 1));
    for (const auto& tail : rep.tails) CHECK(tail.norm <= tail.bound);

    auto sol = to_numeric(build_fundamental(airy(), QComplex(1), J));
    // independent oracle: homogeneous equation integrated inward from t = 400 with series data
    OdeSolutionTable oracle(
        airy(), [](double) { return cplx{}; }, 400.0, 20.0, series_state(airy(), sol, J, 400.0));
    double worst = 0;
    for (double t = 20; t <= 100; t += 2) {
        cplx u = rep.solution.value(t), o = oracle.state(t)[0];
        worst = std::max(worst, std::abs(u - o) / std::abs(o));
    }
    CHECK(worst <= 1e-8);
    CHECK(rep.residual_norms[0] <= 1e-8);
}

TEST_CASE("descent table decreases for the ODE instantiation") {
    OdeProblem<QComplex> prob(airy(), QComplex(1));
    auto res = core::solve_to_order(prob, prob.zero_target(), 5, prob.seed());
    auto rows = core::descent_table(prob, prob.zero_target(), res.terms);
    REQUIRE(rows.size() == 6);
    for (std::size_t i = 2; i < rows.size(); ++i) CHECK(rows[i] < rows[i - 1]);
}
