// Runs the nine acceptance checks and prints one PASS/FAIL line each.

#include "../unit/circle_fixtures.hpp"
#include "../unit/ode_fixtures.hpp"

#include "asym/core/scheme.hpp"
#include "asym/ode/problem.hpp"
#include "asym/symbol/excision.hpp"
#include "asym/wave/evaluate.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace asym;
using wave::cplx;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail << "failed: " << what << "; ";
        pass = pass && ok;
    }
};

struct Criterion {
    int id;
    const char* name;
    double budget_s;  // <= 0: no runtime limit
    std::function<void(Outcome&)> body;
};

// --- 1 -----------------------------------------------------------------------

void symbolic_fidelity(Outcome& out) {
    using namespace asym::ode;
    std::mt19937_64 rng(101);
    int checked = 0;
    for (int c = 0; c < 50; ++c) {
        const int m = std::uniform_int_distribution<int>(1, 4)(rng);
        const HalfLineOperator op = fixtures::random_op(rng, m);
        const QComplex mu(q(std::uniform_int_distribution<long>(-5, 5)(rng), 3));
        const QComplex delta = fixtures::rnd_q(rng);
        const auto e = conjugate_expand(op, mu, delta, 2);
        const auto cd = char_data(op);
        const QPoly d1 = cd.l0.derivative(), d2 = d1.derivative();
        const QComplex e1 = -(QComplex::i() * (delta * d1(mu) + QComplex(op.lstar) * mu * d2(mu) * QComplex(q(1, 2)) +
                                               QComplex::i() * cd.l1(mu)));
        out.require(e[0] == cd.l0(mu), "e0 at case " + std::to_string(c));
        out.require(e[1] == e1, "e1 at case " + std::to_string(c));
        ++checked;
    }
    out.detail << checked << " operators, exact e0 and e1";
}

// --- 2 -----------------------------------------------------------------------

void airy_oracle(Outcome& out) {
    using namespace asym::ode;
    const auto op = fixtures::airy();
    const auto exact = build_fundamental(op, QComplex(1), 6);
    out.require(exact.delta == QComplex(q(-1, 4)), "Delta = -1/4");
    const auto sol = to_numeric(exact);
    const auto rows = validate_against_integration(op, sol, 6, 20.0, 100.0, 81);
    double worst = 0.0;
    for (const auto& r : rows) worst = std::max(worst, r.relative_error);
    out.require(worst <= 1e-6, "relative error");
    out.detail << "max relative error " << worst << " on [20, 100]";
}

// --- 3 -----------------------------------------------------------------------

void circle_exactness(Outcome& out) {
    using namespace fx;
    const CircleSymbol p = sin_symbol();
    const auto res = build_parametrix(p, 4);
    const CircleSymbol rc = compose_symbols(p, res.q, 4);
    out.require(components_equal(rc, identity_symbol(), 4), "recomposition through order -3");
    QuantizedAction act;
    const auto probe = remainder_probe(p, res.q, 4, {16, 32, 64, 128, 256}, act);
    out.require(probe.slope <= -4.0 + 0.3, "remainder slope");
    out.detail << "orders 0..-3 exact, slope " << probe.slope;
}

// --- 4 -----------------------------------------------------------------------

void eikonal(Outcome& out) {
    using namespace asym::wave;
    const auto op = time_speed(1, {1.0, 0.5}, 1.0);
    double worst = 0.0;
    for (Branch b : {Branch::plus, Branch::minus})
        for (double t : {0.1, 0.25, 0.5, 0.75, 1.0})
            for (double x : {-2.0, -0.5, 0.0, 0.7, 1.5})
                for (double xi : {-4.0, -1.0, 0.5, 2.0, 8.0}) {
                    const double exact = x * xi + sign(b) * (t + t * t / 4.0) * std::abs(xi);
                    worst = std::max(worst, std::abs(ray_phase(op, b, t, {x}, {xi}) - exact));
                }
    const auto cone = light_cone(op, 1.0);
    double rerr = 0.0;
    for (double r : cone.radii) rerr = std::max(rerr, std::abs(r - 1.25));
    out.require(worst <= 1e-8, "phase error");
    out.require(rerr <= 1e-8, "cone radius");
    out.detail << "phase error " << worst << ", cone radius error " << rerr;
}

// --- 5 -----------------------------------------------------------------------

void parity(Outcome& out) {
    using namespace asym::wave;
    const auto sol = build_green(time_speed(1, {1.0, 0.5}, 1.0), 4);
    const auto rep = check_parity(sol, 4);
    out.require(rep.defects.size() == 4 && rep.max() <= 1e-10, "clean defects");
    auto bad = sol;
    bad.minus.scale_order(1, -1.0);
    const auto rb = check_parity(bad, 4);
    out.require(rb.defects.at(1) >= 1.0, "corrupted d_1");
    out.detail << "max d_j " << rep.max() << ", corrupted d_1 " << rb.defects.at(1);
}

// --- 6 -----------------------------------------------------------------------

void jumps(Outcome& out) {
    using namespace asym::wave;
    for (double c : {1.0, 2.0}) {
        const auto est = jump_across_cone(build_green(constant_speed(1, c, 1.0), 2), 1.0);
        const double expect = c == 1.0 ? 0.5 : 0.25;
        out.require(std::abs(std::abs(est.jump) - expect) <= 1e-3, "jump for c = " + std::to_string(c));
        out.detail << "c=" << c << " jump " << std::abs(est.jump) << " ";
    }
}

// --- 7 -----------------------------------------------------------------------

/// q_n = -(1/p_m) [sigma(P(q_0+...+q_{n-1}))]_n, computed without the engine.
fx::CircleSymbol direct_parametrix(const fx::CircleSymbol& p, int J) {
    using namespace fx;
    auto dp = std::make_shared<const TrigPoly>(p.terms[0].plus.num());
    auto dm = std::make_shared<const TrigPoly>(p.terms[0].minus.num());
    CircleSymbol qs(Rational(-p.anchor), Rational(1));
    for (int n = 0; n < J; ++n) {
        Component rhs = n == 0 ? Component{TrigFraction(QComplex(1)), TrigFraction(QComplex(1))}
                               : -compose_symbols(p, qs, static_cast<std::size_t>(n + 1)).coeff(static_cast<std::size_t>(n));
        qs.terms.push_back({rhs.plus.divided_by(dp), rhs.minus.divided_by(dm)});
    }
    return qs;
}

void scheme_genericity(Outcome& out) {
    using namespace asym::ode;
    const int J = 6;
    OdeProblem<QComplex> prob(fixtures::airy(), QComplex(1));
    const auto res = core::solve_to_order(prob, prob.zero_target(), J, prob.seed());
    const auto direct = build_fundamental(fixtures::airy(), QComplex(1), J);
    out.require(res.terms.size() == static_cast<std::size_t>(J), "ODE term count");
    for (int j = 0; j < J && j < static_cast<int>(res.terms.size()); ++j)
        out.require(prob.symbol_of(j, res.terms[static_cast<std::size_t>(j)].element) ==
                        direct.amplitude.terms[static_cast<std::size_t>(j)],
                    "ODE coefficient " + std::to_string(j));

    std::mt19937_64 rng(7);
    int cases = 0;
    for (int c = 0; c < 21; ++c) {
        const fx::CircleSymbol p = c == 0 ? fx::sin_symbol() : fx::rnd_elliptic(rng, 0.5);
        out.require(fx::components_equal(fx::parametrix(p, 4), direct_parametrix(p, 4), 4),
                    "circle parametrix case " + std::to_string(c));
        ++cases;
    }
    out.detail << "ODE J=" << J << " exact, " << cases << " circle parametrices exact";
}

// --- 8 -----------------------------------------------------------------------

struct Sampled {
    std::vector<double> t, v;
};

Sampled sampled_power(double amp, int decay) {
    Sampled s;
    for (int i = 0; i < 1200; ++i) {
        const double t = std::pow(10.0, 12.0 * i / 1199.0);
        s.t.push_back(t);
        s.v.push_back(amp * std::pow(t, -decay));
    }
    return s;
}

void summation(Outcome& out) {
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
    const auto res = core::asymptotic_sum(terms, sampled_power(0.0, 0), cutoff, norm, add);
    int certified = 0;
    for (const auto& tail : res.tails) {
        if (tail.level > 8) continue;
        out.require(tail.norm <= std::ldexp(1.0, -tail.level + 1), "tail at level " + std::to_string(tail.level));
        ++certified;
    }
    out.require(certified >= 8, "levels 1..8 present");
    out.detail << certified << " levels certified";
}

// --- 9 -----------------------------------------------------------------------

using QExp = symbol::PolyhomExpansion<QComplex, Rational>;

QExp rnd_exp(std::mt19937_64& rng, const Rational& step) {
    std::uniform_int_distribution<int> off(-2, 2), len(0, 4);
    QExp e(q(1, 2) + step * off(rng), step);
    const int n = len(rng);
    for (int i = 0; i < n; ++i) e.terms.push_back(fixtures::rnd_q(rng, 6));
    return e.trim();
}

void properties(Outcome& out) {
    using namespace asym::symbol;
    std::mt19937_64 rng(2718);
    int fails = 0;
    auto same = [](const QExp& a, const QExp& b) { return phg_sub(a, b).is_zero() && a.tail == b.tail; };

    // graded algebra
    const Rational s(3, 2);
    for (int c = 0; c < 200; ++c) {
        const QExp a = rnd_exp(rng, s), b = rnd_exp(rng, s), e = rnd_exp(rng, s);
        const std::size_t big = 64;
        bool ok = same(phg_add(a, b), phg_add(b, a)) && same(phg_add(phg_add(a, b), e), phg_add(a, phg_add(b, e))) &&
                  same(phg_mul(a, b, big), phg_mul(b, a, big)) &&
                  same(phg_mul(phg_mul(a, b, big), e, big), phg_mul(a, phg_mul(b, e, big), big)) &&
                  phg_sub(phg_mul(a, phg_add(b, e), big), phg_add(phg_mul(a, b, big), phg_mul(a, e, big))).is_zero();
        fails += !ok;
    }
    out.require(fails == 0, "graded algebra laws");
    out.detail << "algebra " << 200 - fails << "/200";

    // Vandermonde recomposition
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::uniform_int_distribution<int> M(1, 5);
    double vworst = 0.0;
    for (int c = 0; c < 200; ++c) {
        const int m = M(rng);
        std::vector<cplx> roots, data;
        for (int h = 0; h < m; ++h) roots.push_back(-2.0 + h + 0.3 * U(rng));
        for (int h = 0; h < m; ++h) data.push_back({U(rng), U(rng)});
        vworst = std::max(vworst, wave::vandermonde_residual(roots, wave::vandermonde_init(roots, data), data));
    }
    out.require(vworst <= 1e-12, "Vandermonde residual");
    out.detail << ", vandermonde " << vworst;

    // homogeneity of realized symbol terms and of wave amplitudes
    std::uniform_real_distribution<double> X(2.0, 9.0), L(0.1, 10.0), T(0.0, 1.0);
    double hworst = 0.0;
    const auto green = wave::build_green(wave::time_speed(1, {1.0, 0.5}, 1.0), 4);
    for (int c = 0; c < 200; ++c) {
        const QExp e = rnd_exp(rng, q(1, 2));
        for (std::size_t j = 0; j < e.depth(); ++j) {
            const QExp term(e.degree(j), e.step, {e.terms[j]});
            const double x = X(rng), lam = L(rng) + 1.0;
            const cplx base = phg_realize(term, ExcisionCutoff(1.0), x, 1);
            const cplx scaled = phg_realize(term, ExcisionCutoff(1.0), lam * x, 1);
            const cplx expect = base * std::pow(lam, e.degree(j).get_d());
            hworst = std::max(hworst, std::abs(scaled - expect) / std::max(1e-300, std::abs(expect)));
        }
        const double lam = L(rng), t = T(rng), xi = (c % 2 ? -1.0 : 1.0) * L(rng);
        for (wave::Branch b : {wave::Branch::plus, wave::Branch::minus})
            for (int j = 0; j < 4; ++j) {
                const cplx lhs = green.amplitude(b).eval(j, t, {lam * xi});
                const cplx rhs = std::pow(lam, -1 - j) * green.amplitude(b).eval(j, t, {xi});
                hworst = std::max(hworst, std::abs(lhs - rhs) / std::max(1e-300, std::abs(rhs)));
            }
    }
    out.require(hworst <= 1e-12, "homogeneity");
    out.detail << ", homogeneity " << hworst;

    // parity: reflection is an involution, and transport keeps parity-respecting data parity-respecting
    using DExp = PolyhomExpansion<DirPair<QComplex>, Rational>;
    int pfails = 0;
    double pworst = 0.0;
    std::uniform_real_distribution<double> P(0.0, 0.5);
    std::uniform_int_distribution<int> Mu(-3, 1), len(0, 4), off(-2, 2);
    for (int c = 0; c < 200; ++c) {
        DExp a(Rational(off(rng)), Rational(1));
        const int n = len(rng);
        for (int i = 0; i < n; ++i) a.terms.push_back({fixtures::rnd_q(rng), fixtures::rnd_q(rng)});
        pfails += !(dir_reflect(dir_reflect(a)) == a);

        const auto op = wave::time_speed(1, {1.0 + P(rng), P(rng), 0.5 * P(rng)}, 1.0);
        wave::CauchyData data;
        const long mb = Mu(rng);
        data.mu_bar = Rational(mb);
        auto parity_fn = [](cplx z, long d) {
            return [z, d](const wave::Vec& w) { return w[0] > 0 ? z : (d % 2 == 0 ? z : -z); };
        };
        for (int j = 0; j < 3; ++j) {
            data.g0.push_back(parity_fn({U(rng), U(rng)}, mb - j));
            data.g1.push_back(parity_fn({U(rng), U(rng)}, mb + 1 - j));
        }
        pworst = std::max(pworst, wave::check_parity(wave::build_conormal(op, data, 3), 3).max());
    }
    out.require(pfails == 0, "reflection involution");
    out.require(pworst <= 1e-10, "transported parity");
    out.detail << ", parity " << pworst;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "symbolic fidelity of conjugate_expand", 5.0, symbolic_fidelity},
        {2, "Airy branch vs numerical integration", 10.0, airy_oracle},
        {3, "circle parametrix exactness and remainder slope", 30.0, circle_exactness},
        {4, "eikonal phases and light cone for c = 1 + t/2", 0.0, eikonal},
        {5, "transmission parity of the Green construction", 0.0, parity},
        {6, "d'Alembert jump across the cone", 60.0, jumps},
        {7, "scheme genericity", 0.0, scheme_genericity},
        {8, "asymptotic summation tails", 0.0, summation},
        {9, "property suites (200 cases each)", 0.0, properties},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome out;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.body(out);
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail << "exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget_s > 0.0 && secs > c.budget_s) {
            out.pass = false;
            out.detail << "; over the " << c.budget_s << " s budget";
        }
        failed += !out.pass;
        std::printf("criterion %d: %s  %s  [%.2f s]  %s\n", c.id, out.pass ? "PASS" : "FAIL", c.name, secs,
                    out.detail.str().c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
