#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "asym/symbol/polyhom.hpp"
#include "asym/symbol/serialize.hpp"

#include <random>

using namespace asym;
using namespace asym::symbol;

using QExp = PolyhomExpansion<QComplex, Rational>;
using DExp = PolyhomExpansion<DirPair<QComplex>, Rational>;

namespace {

QComplex rnd_q(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-6, 6), den(1, 4);
    return {q(num(rng), den(rng)), q(num(rng), den(rng))};
}

/// Anchor on the lattice 1/2 + Z*step so any two are commensurable.
QExp rnd_exp(std::mt19937_64& rng, const Rational& step) {
    std::uniform_int_distribution<int> off(-2, 2), len(0, 4);
    QExp e(Rational(1, 2) + step * off(rng), step);
    int n = len(rng);
    for (int i = 0; i < n; ++i) e.terms.push_back(rnd_q(rng));
    return e.trim();
}

DExp rnd_dexp(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> off(-2, 2), len(0, 4);
    DExp e(Rational(off(rng)), Rational(1));
    int n = len(rng);
    for (int i = 0; i < n; ++i) e.terms.push_back({rnd_q(rng), rnd_q(rng)});
    return e.trim();
}

bool same_value(const QExp& a, const QExp& b) { return phg_sub(a, b).is_zero() && a.tail == b.tail; }

}  // namespace

TEST_CASE("phg_add examples") {
    const Rational d(-1, 4), s(3, 2);
    QExp a(d, s, {QComplex(2), QComplex(Rational(1, 3))});
    QExp zero(d, s);
    CHECK(phg_add(a, zero) == a);

    QExp t0(d, s, {QComplex(1)});
    QExp t1(Rational(d - s), s, {QComplex(1)});
    QExp sum = phg_add(t0, t1);
    REQUIRE(sum.depth() == 2);
    CHECK(sum.anchor == d);
    CHECK(sum.terms[0] == QComplex(1));
    CHECK(sum.terms[1] == QComplex(1));
    CHECK(sum.tail == Tail::zero);

    QExp neg(d, s, {QComplex(-1)});
    CHECK(phg_add(t0, neg).is_zero());

    QExp off(Rational(1, 3), s, {QComplex(1)});
    CHECK_THROWS_AS(phg_add(t0, off), Error);
}

TEST_CASE("phg_add stops at the common known depth of truncations") {
    const Rational s(1);
    QExp a(Rational(0), s, {QComplex(1), QComplex(2), QComplex(3)}, Tail::unknown);
    QExp b(Rational(-1), s, {QComplex(5)}, Tail::unknown);
    QExp r = phg_add(a, b);
    CHECK(r.tail == Tail::unknown);
    REQUIRE(r.depth() == 2);
    CHECK(r.terms[1] == QComplex(7));
}

TEST_CASE("phg_mul examples") {
    const Rational s(3, 2);
    QExp a(Rational(1, 5), s, {QComplex(2), QComplex(-1)});
    QExp one(Rational(0), s, {QComplex(1)});
    CHECK(phg_mul(a, one, 10) == a);

    QExp tl(Rational(1, 2), s, {QComplex(1)});
    QExp td(Rational(-7, 3), s, {QComplex(1)});
    CHECK(phg_mul(tl, td, 4).anchor == Rational(1, 2) + Rational(-7, 3));

    // (2 + 3x)(5 - x) with x = t^{-s}, depth 2 -> 10 + 13x
    QExp p(Rational(0), s, {QComplex(2), QComplex(3)});
    QExp q(Rational(0), s, {QComplex(5), QComplex(-1)});
    QExp pq = phg_mul(p, q, 2);
    REQUIRE(pq.depth() == 2);
    CHECK(pq.terms[0] == QComplex(10));
    CHECK(pq.terms[1] == QComplex(13));
    CHECK(pq.tail == Tail::unknown);
    QExp full = phg_mul(p, q, 10);
    REQUIRE(full.depth() == 3);
    CHECK(full.terms[2] == QComplex(-3));
    CHECK(full.tail == Tail::zero);
}

TEST_CASE("graded ring laws on random exact expansions") {
    std::mt19937_64 rng(7);
    const Rational s(3, 2);
    const std::size_t big = 64;
    for (int c = 0; c < 200; ++c) {
        QExp a = rnd_exp(rng, s), b = rnd_exp(rng, s), e = rnd_exp(rng, s);
        CHECK(same_value(phg_add(a, b), phg_add(b, a)));
        CHECK(same_value(phg_add(phg_add(a, b), e), phg_add(a, phg_add(b, e))));
        CHECK(same_value(phg_mul(a, b, big), phg_mul(b, a, big)));
        CHECK(same_value(phg_mul(phg_mul(a, b, big), e, big), phg_mul(a, phg_mul(b, e, big), big)));
        // distributivity: anchors of a*b and a*e may differ, compare the difference
        QExp lhs = phg_mul(a, phg_add(b, e), big);
        QExp rhs = phg_add(phg_mul(a, b, big), phg_mul(a, e, big));
        CHECK(phg_sub(lhs, rhs).is_zero());
        // fixed-depth associativity
        const std::size_t d = 3;
        QExp x = phg_mul(phg_mul(a, b, d), e, d), y = phg_mul(a, phg_mul(b, e, d), d);
        for (std::size_t k = 0; k < d; ++k) CHECK(x.coeff(k) == y.coeff(k));
    }
}

TEST_CASE("excision cutoff support and monotonicity") {
    ExcisionCutoff chi(3.0);
    CHECK(chi(0.5) == 0.0);
    CHECK(chi(3.0) == 0.0);
    CHECK(chi(6.0) == 1.0);
    CHECK(chi(100.0) == 1.0);
    double prev = 0.0;
    for (int i = 0; i <= 200; ++i) {
        double v = chi(3.0 + 3.0 * i / 200.0);
        CHECK(v >= prev);
        prev = v;
    }
    CHECK(excision_profile(1.5) == doctest::Approx(0.5));
}

TEST_CASE("phg_realize examples") {
    QExp one(Rational(0), Rational(1), {QComplex(1)});
    ExcisionCutoff chi(2.0);
    CHECK(phg_realize(one, chi, 1.0, 1) == std::complex<double>(0.0));
    CHECK(phg_realize(one, chi, 2.0, 1) == std::complex<double>(0.0));
    CHECK(phg_realize(one, chi, 4.0, 1) == std::complex<double>(1.0));
    CHECK_THROWS_AS(phg_realize(one, chi, 0.0, 1), Error);
    CHECK_THROWS_AS(phg_realize(one, chi, -1.0, 1), Error);
}

TEST_CASE("homogeneity of realized terms") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> pt(2.0, 9.0);
    for (int c = 0; c < 200; ++c) {
        QExp e = rnd_exp(rng, Rational(1, 2));
        for (std::size_t j = 0; j < e.depth(); ++j) {
            QExp term(e.degree(j), e.step, {e.terms[j]});
            double x = pt(rng);
            auto base = phg_realize(term, ExcisionCutoff(1.0), x, 1);
            for (double lam : {2.0, 5.0, 10.0}) {
                auto scaled = phg_realize(term, ExcisionCutoff(1.0), lam * x, 1);
                auto expect = base * std::pow(lam, e.degree(j).get_d());
                CHECK(std::abs(scaled - expect) <= 1e-12 * std::max(1e-300, std::abs(expect)));
            }
        }
    }
}

TEST_CASE("truncation consistency") {
    std::mt19937_64 rng(13);
    for (int c = 0; c < 200; ++c) {
        QExp e = rnd_exp(rng, Rational(1));
        for (std::size_t d = 0; d < e.depth(); ++d) {
            for (double x : {2.5, 7.0, 30.0}) {
                auto lo = phg_realize(e, ExcisionCutoff(1.0), x, d);
                auto hi = phg_realize(e, ExcisionCutoff(1.0), x, d + 1);
                double bound = std::abs(e.terms[d].to_complex()) * std::pow(x, e.degree(d).get_d());
                // rounding in the two partial sums
                double slack = 0.0;
                for (std::size_t k = 0; k <= d; ++k)
                    slack += std::abs(e.terms[k].to_complex()) * std::pow(x, e.degree(k).get_d());
                CHECK(std::abs(hi - lo) <= bound * (1 + 1e-12) + 1e-14 * slack);
            }
        }
    }
}

TEST_CASE("dir_reflect examples and laws") {
    DExp even(Rational(0), Rational(1), {{QComplex(3), QComplex(3)}});
    CHECK(dir_reflect(even) == even);
    DExp odd(Rational(0), Rational(1), {{QComplex(1), QComplex(-1)}});
    DExp r = dir_reflect(odd);
    CHECK(r.terms[0].plus == QComplex(-1));
    CHECK(r.terms[0].minus == QComplex(1));

    std::mt19937_64 rng(17);
    for (int c = 0; c < 200; ++c) {
        DExp a = rnd_dexp(rng), b = rnd_dexp(rng);
        CHECK(dir_reflect(dir_reflect(a)) == a);
        CHECK(dir_reflect(phg_mul(a, b, 3)) == phg_mul(dir_reflect(a), dir_reflect(b), 3));
        CHECK(dir_reflect(phg_add(a, b)) == phg_add(dir_reflect(a), dir_reflect(b)));
    }
}

TEST_CASE("directional realization picks the side") {
    DExp e(Rational(1), Rational(1), {{QComplex(2), QComplex(-5)}});
    CHECK(phg_realize(e, ExcisionCutoff(1.0), 3.0, 1, Dir::plus).real() == doctest::Approx(6.0));
    CHECK(phg_realize(e, ExcisionCutoff(1.0), 3.0, 1, Dir::minus).real() == doctest::Approx(-15.0));
}

TEST_CASE("json round trip") {
    std::mt19937_64 rng(19);
    for (int c = 0; c < 50; ++c) {
        QExp e = rnd_exp(rng, Rational(3, 2));
        auto j = expansion_to_json(e);
        QExp back = expansion_from_json<QComplex, Rational>(j);
        CHECK(back == e);
        CHECK(expansion_to_json(back) == j);
    }
    auto bad = json::parse(R"({"anchor": "1/2", "step": "1", "terms": [{"degree": "1/3", "coeff": "1"}]})");
    CHECK_THROWS_AS((expansion_from_json<QComplex, Rational>(bad)), ConfigError);
}

TEST_CASE("rational parsing") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-7/2") == Rational(-7, 2));
    CHECK(parse_rational("1.25") == Rational(5, 4));
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
    CHECK_THROWS_AS(parse_rational("1//2"), ParseError);
    CHECK(parse_qcomplex("1/2,-3") == QComplex(Rational(1, 2), Rational(-3)));
}
