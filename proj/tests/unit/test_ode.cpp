#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "asym/core/errors.hpp"
#include "asym/ode/halfline.hpp"
#include "asym/ode/problem.hpp"
#include "ode_fixtures.hpp"

using namespace asym;
using namespace asym::ode;
using fixtures::airy;
using fixtures::make_op;

namespace {

QPoly l0_poly(const HalfLineOperator& op) { return char_data(op).l0; }

QComplex l1_at(const HalfLineOperator& op, const QComplex& mu) { return char_data(op).l1(mu); }

}  // namespace

TEST_CASE("char_data examples") {
    auto first = make_op(1, Rational(0), {{QComplex(Rational(-3, 2))}});
    auto cd = char_data(first);
    REQUIRE(cd.l0.c.size() == 2);
    CHECK(cd.l0.c[0] == QComplex(Rational(-3, 2)));
    CHECK(cd.l0.c[1] == QComplex(1));
    CHECK(cd.l1.c[0].is_zero());
    REQUIRE(cd.roots.size() == 1);
    CHECK(cd.roots[0].exact == Rational(3, 2));

    auto a = char_data(airy());
    CHECK(a.l0.c[0] == QComplex(-1));
    CHECK(a.l0.c[1].is_zero());
    CHECK(a.l0.c[2] == QComplex(1));
    REQUIRE(a.roots.size() == 2);
    CHECK(a.roots[0].exact == Rational(-1));
    CHECK(a.roots[1].exact == Rational(1));
    CHECK(a.roots[0].simple);
    for (const auto& c : a.l1.c) CHECK(c.is_zero());
}

TEST_CASE("random cubic from prescribed roots") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int c = 0; c < 50; ++c) {
        // irrational-ish roots: well separated doubles turned into exact rationals with big denominators
        std::vector<Rational> roots;
        double base = u(rng);
        for (int i = 0; i < 3; ++i) roots.emplace_back(Rational(base + 1.7 * i) + Rational(1, 7919));
        auto op = fixtures::op_with_roots(rng, roots, Rational(1, 2));
        auto cd = char_data(op);
        REQUIRE(cd.roots.size() == 3);
        for (int i = 0; i < 3; ++i) {
            CHECK(std::abs(cd.roots[static_cast<std::size_t>(i)].value.real() - roots[static_cast<std::size_t>(i)].get_d()) <=
                  1e-12 * (1 + std::abs(roots[static_cast<std::size_t>(i)].get_d())));
            CHECK(cd.roots[static_cast<std::size_t>(i)].real);
            CHECK(cd.roots[static_cast<std::size_t>(i)].simple);
        }
    }
}

TEST_CASE("delta_exponent examples") {
    auto first = make_op(1, Rational(0), {{QComplex(-2)}});
    CHECK(delta_exponent(first, QComplex(2)).is_zero());
    CHECK(delta_exponent(airy(), QComplex(1)) == QComplex(Rational(-1, 4)));
    CHECK(delta_exponent(airy(), QComplex(-1)) == QComplex(Rational(-1, 4)));
    auto dbl = make_op(2, Rational(0), {{QComplex(-2)}, {QComplex(1)}});  // (tau-1)^2
    CHECK_THROWS_AS(delta_exponent(dbl, QComplex(1)), HypothesisViolation);
}

TEST_CASE("conjugate_expand leading coefficients on random operators") {
    std::mt19937_64 rng(29);
    for (int c = 0; c < 200; ++c) {
        int m = std::uniform_int_distribution<int>(1, 4)(rng);
        auto op = fixtures::random_op(rng, m);
        QComplex mu(q(std::uniform_int_distribution<long>(-5, 5)(rng), 3));
        QComplex delta = fixtures::rnd_q(rng);
        auto e = conjugate_expand(op, mu, delta, 3);
        QPoly l0 = l0_poly(op), d1 = l0.derivative(), d2 = d1.derivative();
        CHECK(e[0] == l0(mu));
        QComplex bracket = delta * d1(mu) + QComplex(op.lstar) * mu * d2(mu) * QComplex(Rational(1, 2)) +
                           QComplex::i() * l1_at(op, mu);
        CHECK(e[1] == -(QComplex::i() * bracket));
        // grading closure
        Amplitude<QComplex> mono(delta, op.step(), {QComplex(1)});
        auto full = apply_conjugated(op, mu, mono);
        CHECK(full.anchor == symbol::degree_shift(delta, Rational(-op.lstar * m)));
        CHECK(full.step == op.step());
    }
}

TEST_CASE("conjugate_expand of D_t") {
    auto dt = make_op(1, Rational(0), {{}});
    auto e = conjugate_expand(dt, QComplex(Rational(7, 3)), QComplex(0), 4);
    CHECK(e[0] == QComplex(Rational(7, 3)));
    for (int k = 1; k <= 4; ++k) CHECK(e[static_cast<std::size_t>(k)].is_zero());
}

TEST_CASE("build_fundamental: constant coefficients") {
    auto first = make_op(1, Rational(0), {{QComplex(-3)}});
    auto sol = build_fundamental(first, QComplex(3), 5);
    CHECK(sol.amplitude.terms[0] == QComplex(1));
    for (std::size_t j = 1; j < sol.amplitude.depth(); ++j) CHECK(sol.amplitude.terms[j].is_zero());
    auto num = to_numeric(sol);
    CHECK(std::abs(evaluate_solution(num, first, 10.0, 5) - std::exp(cplx(0, 30.0))) <= 1e-12);
}

TEST_CASE("build_fundamental: Airy coefficients against the hand recurrence") {
    auto sol = build_fundamental(airy(), QComplex(1), 4);
    REQUIRE(sol.amplitude.depth() == 4);
    CHECK(sol.delta == QComplex(Rational(-1, 4)));
    // c_{j+1} = c_j (1/4 + 3j/2)(5/4 + 3j/2) / (3 i (j+1)), from substituting the ansatz into u'' + t u = 0
    QComplex c(1);
    for (int j = 0; j < 3; ++j) {
        Rational a = Rational(1, 4) + q(3 * j, 2), b = Rational(5, 4) + q(3 * j, 2);
        c = c * QComplex(Rational(a * b)) / (QComplex(Rational(0), Rational(3 * (j + 1))));
        CHECK(sol.amplitude.terms[static_cast<std::size_t>(j + 1)] == c);
    }
    CHECK(sol.amplitude.terms[1] == QComplex(Rational(0), Rational(-5, 48)));
    CHECK(sol.amplitude.terms[2] == QComplex(Rational(-385, 4608)));
    CHECK(sol.amplitude.terms[3] == QComplex(Rational(0), Rational(85085, 663552)));
}

TEST_CASE("defect cancellation for random exact operators") {
    std::mt19937_64 rng(31);
    for (int c = 0; c < 40; ++c) {
        int m = std::uniform_int_distribution<int>(1, 3)(rng);
        std::vector<Rational> roots;
        const int den = std::uniform_int_distribution<int>(1, 3)(rng);
        for (int i = 0; i < m; ++i) roots.push_back(q(2 * i - m, den));
        auto op = fixtures::op_with_roots(rng, roots, fixtures::rnd_lstar(rng));
        const int J = 4;
        for (const auto& mu : roots) {
            auto sol = build_fundamental(op, QComplex(mu), J);
            auto finite = sol.amplitude;
            finite.tail = Tail::zero;
            auto defect = apply_conjugated(op, QComplex(mu), finite);
            for (int k = 0; k <= J; ++k) CHECK(defect.coeff(static_cast<std::size_t>(k)).is_zero());
        }
    }
}

TEST_CASE("fundamental_system ordering and rejections") {
    std::mt19937_64 rng(37);
    auto op3 = fixtures::op_with_roots(rng, {Rational(2), Rational(-1), Rational(1)}, Rational(1));
    auto sys = fundamental_system(op3, 3);
    REQUIRE(sys.size() == 3);
    CHECK(sys[0].root.exact == Rational(-1));
    CHECK(sys[1].root.exact == Rational(1));
    CHECK(sys[2].root.exact == Rational(2));

    auto airy_sys = fundamental_system(airy(), 4);
    REQUIRE(airy_sys.size() == 2);
    for (const auto& b : airy_sys) CHECK(b.exact->delta == QComplex(Rational(-1, 4)));

    auto flat = make_op(2, Rational(0), {{}, {QComplex(-1)}});  // D_t^2 - 1
    auto fs = fundamental_system(flat, 3);
    for (const auto& b : fs) {
        CHECK(b.exact->delta.is_zero());
    }

    auto complex_roots = make_op(2, Rational(0), {{}, {QComplex(1)}});  // tau^2 + 1
    CHECK_THROWS_AS(fundamental_system(complex_roots, 3), HypothesisViolation);
    auto dbl = make_op(2, Rational(0), {{QComplex(-2)}, {QComplex(1)}});
    CHECK_THROWS_AS(fundamental_system(dbl, 3), HypothesisViolation);
}

TEST_CASE("Airy realization: truncation remainders") {
    auto sol = to_numeric(build_fundamental(airy(), QComplex(1), 8));
    double cmax = 0;
    for (const auto& c : sol.amplitude.terms) cmax = std::max(cmax, std::abs(c));
    symbol::ExcisionCutoff chi(1.0);
    auto d45 = std::abs(symbol::phg_realize(sol.amplitude, chi, 50.0, 5) - symbol::phg_realize(sol.amplitude, chi, 50.0, 4));
    CHECK(d45 <= std::pow(50.0, -0.25 - 4 * 1.5) * cmax);
    auto op = airy();
    auto d67 = std::abs(evaluate_solution(sol, op, 25.0, 7) - evaluate_solution(sol, op, 25.0, 6));
    CHECK(d67 <= std::pow(25.0, -0.25 - 9.0) * cmax);
    CHECK_THROWS_AS(evaluate_solution(sol, op, 0.5, 6), Error);
}

TEST_CASE("Airy series residual and integration oracle") {
    auto op = airy();
    auto sol = to_numeric(build_fundamental(airy(), QComplex(1), 6));
    HalfLineFunction u = realize_phased(sol.mu, sol.delta, 1.5, sol.amplitude.terms);
    HalfLineFunction Lu = apply_operator(op, u);
    for (double t = 20; t <= 100; t += 2.5) {
        CHECK(std::abs(series_residual(op, sol, 6, t)) <= 1e-6 * std::abs(u.value(t)));
        CHECK(std::abs(Lu.value(t)) <= 1e-6 * std::abs(u.value(t)));
    }

    auto rows = validate_against_integration(op, sol, 6, 20.0, 100.0, 81);
    double worst = 0;
    for (const auto& r : rows) worst = std::max(worst, r.relative_error);
    CHECK(worst <= 1e-6);
}

TEST_CASE("residual decays with J at fixed t") {
    auto op = airy();
    auto sol = to_numeric(build_fundamental(airy(), QComplex(1), 8));
    const double t = 40.0;
    double prev = 1e300;
    for (int J = 1; J <= 7; ++J) {
        double r = std::abs(series_residual(op, sol, J, t));
        CHECK(r < prev);
        if (J >= 2) CHECK(std::log(r) - std::log(prev) <= -1.5 * std::log(t) + 3.0);
        prev = r;
    }
}

TEST_CASE("Airy Wronskian is bounded away from zero") {
    auto sys = fundamental_system(airy(), 6);
    std::vector<FundSolution<cplx>> sols;
    for (const auto& b : sys) sols.push_back(b.numeric);
    cplx w = wronskian(airy(), sols, 6, 50.0);
    CHECK(std::abs(w - cplx(0, 2)) <= 1e-6);
}

TEST_CASE("numeric branch for irrational roots") {
    // tau^2 - 2: roots +-sqrt(2), no rational reconstruction
    auto op = make_op(2, Rational(1, 2), {{}, {QComplex(-2), QComplex(1)}});
    auto sys = fundamental_system(op, 4);
    REQUIRE(sys.size() == 2);
    CHECK_FALSE(sys[0].exact.has_value());
    CHECK(std::abs(sys[1].numeric.mu - std::sqrt(2.0)) <= 1e-14);
    auto rows = validate_against_integration(op, sys[1].numeric, 4, 30.0, 60.0, 11);
    for (const auto& r : rows) CHECK(r.relative_error <= 1e-5);
}
