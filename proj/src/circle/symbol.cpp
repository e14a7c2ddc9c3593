#include "asym/circle/symbol.hpp"

#include "asym/core/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace asym::circle {

CircleSymbol make_symbol(const Rational& order, const std::vector<DirPair<TrigPoly>>& components) {
    CircleSymbol s(order, Rational(1));
    for (const auto& c : components) s.terms.push_back({TrigFraction(c.plus), TrigFraction(c.minus)});
    return s.trim();
}

CircleSymbol polynomial_symbol(const TrigPoly& a, long d) {
    if (d < 0) throw Error("polynomial_symbol: degree must be nonnegative");
    return make_symbol(Rational(d), {{a, d % 2 ? -a : a}});
}

CircleSymbol identity_symbol() { return polynomial_symbol(TrigPoly(QComplex(1)), 0); }

cplx eval_component(const CircleSymbol& p, std::size_t j, double x, Dir dir) { return p.coeff(j)[dir](x); }

bool is_polynomial_component(const CircleSymbol& p, std::size_t j) {
    Rational d = p.degree(j);
    if (!is_integer(d) || sgn(d) < 0) return false;
    const Component c = p.coeff(j);
    return to_long(d) % 2 ? c.minus == -c.plus : c.minus == c.plus;
}

EllipticReport is_elliptic(const CircleSymbol& p, int grid) {
    EllipticReport r;
    r.margin = std::numeric_limits<double>::infinity();
    const Component c = p.coeff(0);
    for (Dir dir : {Dir::plus, Dir::minus}) {
        for (int i = 0; i < grid; ++i) {
            const double x = 2.0 * std::numbers::pi * i / grid;
            const double v = std::abs(c[dir](x));
            if (v < r.margin) {
                r.margin = v;
                r.argmin_x = x;
                r.argmin_dir = dir;
            }
        }
    }
    r.elliptic = r.margin > 1e-12;
    return r;
}

namespace {

/// d (d-1) ... (d-k+1)
Rational falling(const Rational& d, long k) {
    Rational r(1);
    for (long i = 0; i < k; ++i) r *= d - i;
    return r;
}

/// Every nonzero component of p is a finite polynomial in xi on each side, so the
/// composition series stops.
bool finite_in_xi(const CircleSymbol& p) {
    if (p.tail != Tail::zero) return false;
    for (std::size_t i = 0; i < p.depth(); ++i) {
        if (coeff_is_zero(p.terms[i])) continue;
        Rational d = p.degree(i);
        if (!is_integer(d) || sgn(d) < 0) return false;
    }
    return true;
}

}  // namespace

CircleSymbol compose_symbols(const CircleSymbol& p, const CircleSymbol& q, std::size_t depth) {
    if (p.step != 1 || q.step != 1) throw Error("compose_symbols: circle symbols have unit step");
    const std::size_t known = std::min(p.known_limit(), q.known_limit());
    if (depth > known)
        throw LevelOverflow("compose_symbols: depth " + std::to_string(depth) + " exceeds the known components (" +
                            std::to_string(known) + ")");

    // D_x^k q_j for k < depth.
    std::vector<std::vector<Component>> dq(std::min(depth, q.depth()));
    for (std::size_t j = 0; j < dq.size(); ++j) {
        Component cur = q.terms[j];
        for (std::size_t k = 0; j + k < depth; ++k) {
            dq[j].push_back(cur);
            cur = {cur.plus.derivative() * TrigFraction(QComplex(0, -1)),
                   cur.minus.derivative() * TrigFraction(QComplex(0, -1))};
        }
    }

    CircleSymbol r(p.anchor + q.anchor, Rational(1));
    r.terms.resize(depth);
    Rational kfact(1);
    for (std::size_t k = 0; k < depth; ++k) {
        if (k > 0) kfact *= static_cast<long>(k);
        for (std::size_t i = 0; i + k < depth && i < p.depth(); ++i) {
            const Component& pi = p.terms[i];
            if (coeff_is_zero(pi)) continue;
            Rational f = falling(p.degree(i), static_cast<long>(k)) / kfact;
            if (sgn(f) == 0) continue;
            const TrigFraction fp{QComplex(f)};
            const TrigFraction fm{QComplex(k % 2 ? Rational(-f) : f)};
            for (std::size_t j = 0; i + k + j < depth && j < dq.size(); ++j) {
                const Component& dqj = dq[j][k];
                if (coeff_is_zero(dqj)) continue;
                Component& out = r.terms[i + j + k];
                out.plus += fp * pi.plus * dqj.plus;
                out.minus += fm * pi.minus * dqj.minus;
            }
        }
    }
    bool complete = finite_in_xi(p) && q.tail == Tail::zero;
    if (complete && p.depth() > 0) {
        // Highest possible index: (i + deg p_i) + (q.depth - 1) = anchor(p) + q.depth - 1.
        long top = to_long(p.anchor) + static_cast<long>(q.depth()) - 1;
        complete = top < static_cast<long>(depth);
    }
    r.tail = complete ? Tail::zero : Tail::unknown;
    return r.trim();
}

bool components_equal(const CircleSymbol& a, const CircleSymbol& b, std::size_t depth) {
    long off = symbol::grading_offset(a.anchor, b.anchor, Rational(1));
    for (std::size_t j = 0; j < depth; ++j) {
        // compare at common degree a.degree(j)
        Component cb{};
        long jb = static_cast<long>(j) - off;
        if (jb >= 0) cb = b.coeff(static_cast<std::size_t>(jb));
        if (!(a.coeff(j) == cb)) return false;
    }
    return true;
}

double component_sup(const Component& c, int grid) {
    double best = 0.0;
    if (coeff_is_zero(c)) return 0.0;
    for (int i = 0; i < grid; ++i) {
        const double x = 2.0 * std::numbers::pi * i / grid;
        best = std::max({best, std::abs(c.plus(x)), std::abs(c.minus(x))});
    }
    return best;
}

double component_sup(const CircleSymbol& p, std::size_t j, int grid) { return component_sup(p.coeff(j), grid); }

}  // namespace asym::circle
