#include "asym/ode/halfline.hpp"

#include "asym/core/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace asym::ode {

namespace {

template <class K>
K imag_unit() {
    return Field<K>::imag_unit();
}

template <class K>
K rational_k(const Rational& q) {
    return Field<K>::from_rational(q);
}

/// a_r converted to the amplitude field, anchors carried as K.
template <class K>
Amplitude<K> coeff_as(const HalfLineOperator& op, int r) {
    const CoeffExpansion& a = op.coeffs[static_cast<std::size_t>(r - 1)];
    Amplitude<K> out(rational_k<K>(a.anchor), a.step, {}, a.tail);
    out.terms.reserve(a.depth());
    for (const auto& c : a.terms) out.terms.push_back(from_q<K>(c));
    return out;
}

/// One application of D_t to e^{i mu T} sum_k f_k t^{gamma - k s}:
/// new anchor gamma + l*, new coefficient k is mu f_k + (D_t sign) * i * (gamma - (k-1)s) f_{k-1}.
template <class K>
Amplitude<K> dt_conjugated(const HalfLineOperator& op, const K& mu, const Amplitude<K>& f) {
    const Rational s = op.step();
    Amplitude<K> out(symbol::degree_shift(f.anchor, Rational(-op.lstar)), s, {}, f.tail);
    if (f.depth() == 0) return out;
    const std::size_t n = f.tail == Tail::zero ? f.depth() + 1 : f.depth();
    out.terms.resize(n);
    const K di = imag_unit<K>() * from_q<K>(QComplex(kDtSign));
    for (std::size_t k = 0; k < n; ++k) {
        K v{};
        if (k < f.depth()) v = mu * f.terms[k];
        if (k >= 1) {
            K gamma = f.degree(k - 1);
            v += di * gamma * f.terms[k - 1];
        }
        out.terms[k] = std::move(v);
    }
    return out.trim();
}

}  // namespace

QComplex HalfLineOperator::a(int r, int k) const {
    if (r < 1 || r > m) return {};
    return coeffs[static_cast<std::size_t>(r - 1)].coeff(static_cast<std::size_t>(k));
}

void HalfLineOperator::validate() const {
    if (m < 1) throw HypothesisViolation("operator order m must be positive");
    if (!(lstar > -1)) throw HypothesisViolation("l* must exceed -1");
    if (static_cast<int>(coeffs.size()) != m) throw HypothesisViolation("expected one coefficient expansion per r = 1..m");
    for (int r = 1; r <= m; ++r) {
        const auto& a = coeffs[static_cast<std::size_t>(r - 1)];
        if (a.anchor != Rational(lstar * r))
            throw HypothesisViolation("coefficient a_" + std::to_string(r) + " must be anchored at r*l*");
        if (a.step != step()) throw HypothesisViolation("coefficient a_" + std::to_string(r) + " must have step l*+1");
        if (a.tail != Tail::zero) throw HypothesisViolation("operator coefficients must be finite expansions");
    }
}

QComplex QPoly::operator()(const QComplex& x) const {
    QComplex acc;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

cplx QPoly::operator()(cplx x) const {
    cplx acc{};
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + it->to_complex();
    return acc;
}

QPoly QPoly::derivative() const {
    QPoly d;
    for (std::size_t k = 1; k < c.size(); ++k) d.c.push_back(c[k] * QComplex(static_cast<long>(k)));
    if (d.c.empty()) d.c.emplace_back();
    return d;
}

namespace {

/// Best rational approximations of x with bounded denominator (continued fractions).
std::vector<Rational> convergents(double x, long max_den) {
    std::vector<Rational> out;
    mpz_class h0 = 1, h1 = 0, k0 = 0, k1 = 1;
    double r = x;
    for (int it = 0; it < 40; ++it) {
        double a = std::floor(r);
        if (std::abs(a) > 1e15) break;
        mpz_class ai(a);
        mpz_class h2 = ai * h0 + h1;
        mpz_class k2 = ai * k0 + k1;
        if (k2 > max_den) break;
        out.emplace_back(h2, k2);
        out.back().canonicalize();
        h1 = h0;
        h0 = h2;
        k1 = k0;
        k0 = k2;
        double frac = r - a;
        if (std::abs(frac) < 1e-14) break;
        r = 1.0 / frac;
    }
    return out;
}

cplx newton_polish(const QPoly& p, const QPoly& dp, cplx x) {
    for (int it = 0; it < 50; ++it) {
        cplx d = dp(x);
        if (d == cplx{}) break;
        cplx step = p(x) / d;
        x -= step;
        if (std::abs(step) <= 1e-16 * (1.0 + std::abs(x))) break;
    }
    return x;
}

}  // namespace

CharData char_data(const HalfLineOperator& op, double tol) {
    op.validate();
    CharData cd;
    const int m = op.m;
    cd.l0.c.assign(static_cast<std::size_t>(m + 1), QComplex{});
    cd.l1.c.assign(static_cast<std::size_t>(m), QComplex{});
    cd.l0.c[static_cast<std::size_t>(m)] = QComplex(1);
    for (int r = 1; r <= m; ++r) {
        cd.l0.c[static_cast<std::size_t>(m - r)] += op.a(r, 0);
        cd.l1.c[static_cast<std::size_t>(m - r)] += op.a(r, 1);
    }

    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(m, m);
    for (int i = 1; i < m; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < m; ++i) comp(i, m - 1) = -cd.l0.c[static_cast<std::size_t>(i)].to_complex();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
    if (solver.info() != Eigen::Success) throw NumericalFailure("companion eigenvalue iteration did not converge");

    const QPoly d0 = cd.l0.derivative();
    for (int i = 0; i < m; ++i) {
        RootInfo ri;
        ri.value = newton_polish(cd.l0, d0, solver.eigenvalues()(i));
        ri.residual = std::abs(cd.l0(ri.value));
        if (ri.residual > 1e-6 * (1.0 + std::pow(std::abs(ri.value), m)))
            throw NumericalFailure("root polishing failed to converge");
        ri.real = std::abs(ri.value.imag()) <= tol * (1.0 + std::abs(ri.value));
        if (ri.real) {
            for (const Rational& q : convergents(ri.value.real(), 1000000)) {
                if (cd.l0(QComplex(q)).is_zero()) {
                    ri.exact = q;
                    ri.value = {q.get_d(), 0.0};
                    break;
                }
            }
        }
        if (ri.exact) {
            ri.slope = std::abs(d0(QComplex(*ri.exact)).to_complex());
            ri.simple = !d0(QComplex(*ri.exact)).is_zero();
        } else {
            ri.slope = std::abs(d0(ri.value));
            ri.simple = ri.slope > tol * (1.0 + std::pow(std::abs(ri.value), m - 1));
        }
        cd.roots.push_back(ri);
    }
    std::sort(cd.roots.begin(), cd.roots.end(), [](const RootInfo& a, const RootInfo& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    return cd;
}

namespace {

QPoly l0_of(const HalfLineOperator& op) {
    QPoly p;
    p.c.assign(static_cast<std::size_t>(op.m + 1), QComplex{});
    p.c[static_cast<std::size_t>(op.m)] = QComplex(1);
    for (int r = 1; r <= op.m; ++r) p.c[static_cast<std::size_t>(op.m - r)] += op.a(r, 0);
    return p;
}

QPoly l1_of(const HalfLineOperator& op) {
    QPoly p;
    p.c.assign(static_cast<std::size_t>(op.m), QComplex{});
    for (int r = 1; r <= op.m; ++r) p.c[static_cast<std::size_t>(op.m - r)] += op.a(r, 1);
    return p;
}

}  // namespace

QComplex delta_exponent(const HalfLineOperator& op, const QComplex& mu) {
    QPoly l0 = l0_of(op), l1 = l1_of(op);
    QPoly d1 = l0.derivative(), d2 = d1.derivative();
    QComplex slope = d1(mu);
    if (slope.is_zero()) throw HypothesisViolation("mu is a multiple root of l0");
    QComplex num = QComplex(op.lstar) * mu * d2(mu) * QComplex(Rational(1, 2)) + QComplex::i() * l1(mu);
    return -(num / slope);
}

cplx delta_exponent(const HalfLineOperator& op, cplx mu) {
    QPoly l0 = l0_of(op), l1 = l1_of(op);
    QPoly d1 = l0.derivative(), d2 = d1.derivative();
    cplx slope = d1(mu);
    if (std::abs(slope) == 0.0) throw HypothesisViolation("mu is a multiple root of l0");
    cplx num = op.lstar.get_d() * mu * d2(mu) * 0.5 + cplx(0, 1) * l1(mu);
    return -num / slope;
}

template <class K>
Amplitude<K> apply_conjugated(const HalfLineOperator& op, const K& mu, const Amplitude<K>& c) {
    std::vector<Amplitude<K>> w;  // w[q] = D_t^q applied, conjugated
    w.reserve(static_cast<std::size_t>(op.m + 1));
    w.push_back(c);
    for (int q = 0; q < op.m; ++q) w.push_back(dt_conjugated(op, mu, w.back()));
    const K top_anchor = symbol::degree_shift(c.anchor, Rational(-op.lstar * op.m));
    Amplitude<K> acc(top_anchor, op.step(), {}, Tail::zero);
    acc = symbol::phg_add(acc, w[static_cast<std::size_t>(op.m)]);
    const std::size_t unlimited = std::numeric_limits<std::size_t>::max();
    for (int r = 1; r <= op.m; ++r) {
        Amplitude<K> ar = coeff_as<K>(op, r);
        if (ar.is_zero()) continue;
        acc = symbol::phg_add(acc, symbol::phg_mul(ar, w[static_cast<std::size_t>(op.m - r)], unlimited));
    }
    // keep the anchor even when leading terms cancel
    if (acc.anchor != top_anchor) acc = acc.reanchored(top_anchor);
    return acc;
}

template <class K>
std::vector<K> conjugate_expand(const HalfLineOperator& op, const K& mu, const K& delta, int N) {
    Amplitude<K> mono(delta, op.step(), {Field<K>::one()}, Tail::zero);
    Amplitude<K> e = apply_conjugated(op, mu, mono);
    std::vector<K> out(static_cast<std::size_t>(N + 1));
    for (int k = 0; k <= N; ++k) out[static_cast<std::size_t>(k)] = e.coeff(static_cast<std::size_t>(k));
    return out;
}

template <class K>
FundSolution<K> build_fundamental(const HalfLineOperator& op, const K& mu, int J) {
    op.validate();
    if (J < 1) throw LevelOverflow("build_fundamental needs at least one term");
    const K delta = [&] {
        if constexpr (std::is_same_v<K, QComplex>)
            return delta_exponent(op, mu);
        else
            return delta_exponent(op, cplx(mu));
    }();
    const QPoly d0 = l0_of(op).derivative();
    const K slope = [&] {
        if constexpr (std::is_same_v<K, QComplex>)
            return d0(mu);
        else
            return d0(cplx(mu));
    }();
    if (Field<K>::is_zero(slope)) throw HypothesisViolation("mu is a multiple root of l0");

    Amplitude<K> c(delta, op.step(), {Field<K>::one()}, Tail::zero);
    Amplitude<K> g = apply_conjugated(op, mu, c);
    for (int j = 1; j < J; ++j) {
        const K divisor = imag_unit<K>() * rational_k<K>(Rational(op.step() * j)) * slope;
        K cj = -(g.coeff(static_cast<std::size_t>(j + 1)) / divisor);
        Amplitude<K> term(delta, op.step(), {}, Tail::zero);
        term.terms.assign(static_cast<std::size_t>(j + 1), K{});
        term.terms[static_cast<std::size_t>(j)] = cj;
        c.terms.resize(static_cast<std::size_t>(j + 1));
        c.terms[static_cast<std::size_t>(j)] = cj;
        g = symbol::phg_add(g, apply_conjugated(op, mu, term));
    }
    c.tail = Tail::unknown;
    return {mu, delta, c};
}

std::vector<FundamentalBranch> fundamental_system(const HalfLineOperator& op, int J) {
    CharData cd = char_data(op);
    std::vector<FundamentalBranch> out;
    for (const auto& r : cd.roots) {
        if (!r.real) throw HypothesisViolation("l0 has a non-real root " + std::to_string(r.value.real()) + "+" +
                                               std::to_string(r.value.imag()) + "i");
        if (!r.simple) throw HypothesisViolation("l0 has a multiple root near " + std::to_string(r.value.real()));
    }
    for (const auto& r : cd.roots) {
        FundamentalBranch b{r, std::nullopt, {}};
        if (r.exact) {
            b.exact = build_fundamental<QComplex>(op, QComplex(*r.exact), J);
            b.numeric = to_numeric(*b.exact);
        } else {
            b.numeric = build_fundamental<cplx>(op, cplx(r.value.real(), 0.0), J);
        }
        out.push_back(std::move(b));
    }
    return out;
}

FundSolution<cplx> to_numeric(const FundSolution<QComplex>& s) {
    FundSolution<cplx> n{s.mu.to_complex(), s.delta.to_complex(), {}};
    n.amplitude = Amplitude<cplx>(s.delta.to_complex(), s.amplitude.step, {}, s.amplitude.tail);
    for (const auto& c : s.amplitude.terms) n.amplitude.terms.push_back(c.to_complex());
    return n;
}

cplx evaluate_solution(const FundSolution<cplx>& sol, const HalfLineOperator& op, double t, int J,
                       const symbol::ExcisionCutoff& cutoff) {
    if (t < cutoff.scale) throw Error("evaluate_solution: t below the excision scale");
    const double s = op.step().get_d();
    const double T = std::pow(t, s) / s;
    const cplx phase = std::exp(cplx(0, 1) * sol.mu * T);
    return phase * symbol::phg_realize(sol.amplitude, cutoff, t, static_cast<std::size_t>(J));
}

template Amplitude<QComplex> apply_conjugated(const HalfLineOperator&, const QComplex&, const Amplitude<QComplex>&);
template Amplitude<cplx> apply_conjugated(const HalfLineOperator&, const cplx&, const Amplitude<cplx>&);
template std::vector<QComplex> conjugate_expand(const HalfLineOperator&, const QComplex&, const QComplex&, int);
template std::vector<cplx> conjugate_expand(const HalfLineOperator&, const cplx&, const cplx&, int);
template FundSolution<QComplex> build_fundamental(const HalfLineOperator&, const QComplex&, int);
template FundSolution<cplx> build_fundamental(const HalfLineOperator&, const cplx&, int);

}  // namespace asym::ode
