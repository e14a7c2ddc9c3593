#pragma once

// Graded expansions sum_j b_j s^{anchor - j*step} with exact exponent bookkeeping.
// Coefficients are any ring value whose default construction is zero; per-direction
// data is expressed with DirPair.

#include "asym/core/errors.hpp"
#include "asym/rational.hpp"
#include "asym/symbol/excision.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

namespace asym::symbol {

enum class Dir { plus, minus };

inline int dir_sign(Dir d) { return d == Dir::plus ? 1 : -1; }

/// Coefficient for the + and - half-lines of a one-dimensional frequency variable.
template <class C>
struct DirPair {
    C plus{};
    C minus{};

    const C& operator[](Dir d) const { return d == Dir::plus ? plus : minus; }
    C& operator[](Dir d) { return d == Dir::plus ? plus : minus; }

    DirPair& operator+=(const DirPair& o) {
        plus += o.plus;
        minus += o.minus;
        return *this;
    }
    DirPair& operator-=(const DirPair& o) {
        plus -= o.plus;
        minus -= o.minus;
        return *this;
    }
    friend DirPair operator+(DirPair a, const DirPair& b) { return a += b; }
    friend DirPair operator-(DirPair a, const DirPair& b) { return a -= b; }
    friend DirPair operator-(const DirPair& a) { return {-a.plus, -a.minus}; }
    friend DirPair operator*(const DirPair& a, const DirPair& b) { return {a.plus * b.plus, a.minus * b.minus}; }
    friend bool operator==(const DirPair& a, const DirPair& b) { return a.plus == b.plus && a.minus == b.minus; }
};

inline bool coeff_is_zero(const QComplex& z) { return z.is_zero(); }
inline bool coeff_is_zero(const std::complex<double>& z) { return z == std::complex<double>{}; }
inline bool coeff_is_zero(const Rational& q) { return sgn(q) == 0; }
template <class C>
bool coeff_is_zero(const DirPair<C>& p) {
    return coeff_is_zero(p.plus) && coeff_is_zero(p.minus);
}

/// `zero`: the stored terms are the whole expansion. `unknown`: the stored terms are a truncation.
enum class Tail { zero, unknown };

inline Rational degree_shift(const Rational& anchor, const Rational& by) { return anchor - by; }
inline QComplex degree_shift(const QComplex& anchor, const Rational& by) { return {Rational(anchor.re - by), anchor.im}; }
inline std::complex<double> degree_value(const Rational& d) { return {d.get_d(), 0.0}; }
inline std::complex<double> degree_value(const QComplex& d) { return d.to_complex(); }
inline std::complex<double> degree_shift(const std::complex<double>& anchor, const Rational& by) {
    return anchor - by.get_d();
}
inline std::complex<double> degree_value(const std::complex<double>& d) { return d; }

/// Number of steps k with a = b + k*step; error when the gradings are incommensurable.
inline long grading_offset(const Rational& a, const Rational& b, const Rational& step) {
    Rational k = (a - b) / step;
    if (!is_integer(k)) throw Error("incommensurable grading: anchors differ by a non-integer number of steps");
    return to_long(k);
}
inline long grading_offset(const QComplex& a, const QComplex& b, const Rational& step) {
    if (a.im != b.im) throw Error("incommensurable grading: anchors differ in imaginary part");
    return grading_offset(a.re, b.re, step);
}
/// Floating anchors: the offset must be an integer number of steps up to rounding.
inline long grading_offset(const std::complex<double>& a, const std::complex<double>& b, const Rational& step) {
    std::complex<double> k = (a - b) / step.get_d();
    double r = std::round(k.real());
    double scale = 1.0 + std::abs(a) + std::abs(b);
    if (std::abs(k.imag()) > 1e-9 * scale || std::abs(k.real() - r) > 1e-9 * scale)
        throw Error("incommensurable grading: floating anchors are not on a common lattice");
    return static_cast<long>(r);
}

template <class Coeff, class Degree = Rational>
struct PolyhomExpansion {
    Degree anchor{};
    Rational step{1};
    std::vector<Coeff> terms;
    Tail tail = Tail::zero;

    PolyhomExpansion() = default;
    PolyhomExpansion(Degree a, Rational s, std::vector<Coeff> t = {}, Tail tl = Tail::zero)
        : anchor(std::move(a)), step(std::move(s)), terms(std::move(t)), tail(tl) {
        if (sgn(step) <= 0) throw Error("expansion step must be positive");
    }

    [[nodiscard]] std::size_t depth() const { return terms.size(); }
    [[nodiscard]] Degree degree(std::size_t j) const { return degree_shift(anchor, Rational(step * static_cast<long>(j))); }
    /// Coefficient j; zero beyond the stored terms (only meaningful when tail is zero).
    [[nodiscard]] Coeff coeff(std::size_t j) const { return j < terms.size() ? terms[j] : Coeff{}; }
    /// Terms with index below this are known exactly.
    [[nodiscard]] std::size_t known_limit() const {
        return tail == Tail::zero ? std::numeric_limits<std::size_t>::max() : terms.size();
    }
    [[nodiscard]] bool is_zero() const {
        return tail == Tail::zero && std::all_of(terms.begin(), terms.end(), [](const Coeff& c) { return coeff_is_zero(c); });
    }
    /// Drops trailing zero terms of a finite expansion.
    PolyhomExpansion& trim() {
        if (tail == Tail::zero)
            while (!terms.empty() && coeff_is_zero(terms.back())) terms.pop_back();
        return *this;
    }
    /// Keeps the first d terms; the result is a truncation unless nothing nonzero was dropped.
    [[nodiscard]] PolyhomExpansion truncated(std::size_t d) const {
        PolyhomExpansion r = *this;
        if (r.terms.size() > d) {
            bool dropped_nonzero = std::any_of(r.terms.begin() + static_cast<long>(d), r.terms.end(),
                                               [](const Coeff& c) { return !coeff_is_zero(c); });
            r.terms.resize(d);
            if (dropped_nonzero) r.tail = Tail::unknown;
        }
        return r;
    }
    /// Same expansion written from a higher anchor (prepends zero terms).
    [[nodiscard]] PolyhomExpansion reanchored(const Degree& new_anchor) const {
        long k = grading_offset(new_anchor, anchor, step);
        if (k < 0) throw Error("reanchor below the leading degree");
        PolyhomExpansion r(new_anchor, step, {}, tail);
        r.terms.assign(static_cast<std::size_t>(k), Coeff{});
        r.terms.insert(r.terms.end(), terms.begin(), terms.end());
        return r;
    }

    friend bool operator==(const PolyhomExpansion& a, const PolyhomExpansion& b) {
        return a.anchor == b.anchor && a.step == b.step && a.terms == b.terms && a.tail == b.tail;
    }
};

/// Termwise sum aligned by degree. Finite expansions add exactly; when either side is a
/// truncation the result stops where both sides are still known.
template <class C, class D>
PolyhomExpansion<C, D> phg_add(const PolyhomExpansion<C, D>& a, const PolyhomExpansion<C, D>& b) {
    if (a.step != b.step) throw Error("phg_add: steps differ");
    long off = grading_offset(a.anchor, b.anchor, a.step);
    const PolyhomExpansion<C, D>& hi = off >= 0 ? a : b;
    const PolyhomExpansion<C, D>& lo = off >= 0 ? b : a;
    auto shift = static_cast<std::size_t>(off >= 0 ? off : -off);

    std::size_t hi_known = hi.known_limit();
    std::size_t lo_known = lo.known_limit();
    if (lo_known != std::numeric_limits<std::size_t>::max()) lo_known += shift;
    std::size_t known = std::min(hi_known, lo_known);
    std::size_t full = std::max(hi.depth(), lo.depth() + shift);
    std::size_t n = std::min(known, full);

    PolyhomExpansion<C, D> r(hi.anchor, a.step);
    r.terms.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        C v = j < hi.depth() ? hi.terms[j] : C{};
        if (j >= shift && j - shift < lo.depth()) v += lo.terms[j - shift];
        r.terms[j] = std::move(v);
    }
    r.tail = (a.tail == Tail::zero && b.tail == Tail::zero) ? Tail::zero : Tail::unknown;
    return r.trim();
}

template <class C, class D>
PolyhomExpansion<C, D> phg_neg(const PolyhomExpansion<C, D>& a) {
    PolyhomExpansion<C, D> r = a;
    for (auto& c : r.terms) c = -c;
    return r;
}

template <class C, class D>
PolyhomExpansion<C, D> phg_sub(const PolyhomExpansion<C, D>& a, const PolyhomExpansion<C, D>& b) {
    return phg_add(a, phg_neg(b));
}

template <class C, class D>
PolyhomExpansion<C, D> phg_scale(const PolyhomExpansion<C, D>& a, const C& s) {
    PolyhomExpansion<C, D> r = a;
    for (auto& c : r.terms) c = c * s;
    return r.trim();
}

/// Cauchy product by degree, keeping at most `depth` terms.
template <class C, class D>
PolyhomExpansion<C, D> phg_mul(const PolyhomExpansion<C, D>& a, const PolyhomExpansion<C, D>& b, std::size_t depth) {
    if (a.step != b.step) throw Error("phg_mul: steps differ");
    PolyhomExpansion<C, D> r(a.anchor + b.anchor, a.step);
    if (a.is_zero() || b.is_zero()) return r;
    std::size_t known = std::min(a.known_limit(), b.known_limit());
    std::size_t full = a.depth() + b.depth() - 1;
    std::size_t n = std::min({depth, known, full});
    r.terms.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        C acc{};
        std::size_t i0 = k >= b.depth() ? k - b.depth() + 1 : 0;
        for (std::size_t i = i0; i <= k && i < a.depth(); ++i) acc += a.terms[i] * b.terms[k - i];
        r.terms[k] = std::move(acc);
    }
    bool exact = a.tail == Tail::zero && b.tail == Tail::zero && n == full;
    if (!exact) {
        // A finite product that was cut short is still exact if everything dropped is zero.
        r.tail = Tail::unknown;
        if (a.tail == Tail::zero && b.tail == Tail::zero) {
            bool rest_zero = true;
            for (std::size_t k = n; k < full && rest_zero; ++k) {
                C acc{};
                std::size_t i0 = k >= b.depth() ? k - b.depth() + 1 : 0;
                for (std::size_t i = i0; i <= k && i < a.depth(); ++i) acc += a.terms[i] * b.terms[k - i];
                rest_zero = coeff_is_zero(acc);
            }
            if (rest_zero) r.tail = Tail::zero;
        }
    }
    return r.trim();
}

/// Swaps the + and - coefficients: the pullback under s -> -s of homogeneous terms.
template <class C, class D>
PolyhomExpansion<DirPair<C>, D> dir_reflect(const PolyhomExpansion<DirPair<C>, D>& a) {
    PolyhomExpansion<DirPair<C>, D> r = a;
    for (auto& c : r.terms) std::swap(c.plus, c.minus);
    return r;
}

namespace detail {
template <class C>
std::complex<double> as_complex(const C& c) {
    return Field<C>::to_complex(c);
}
}  // namespace detail

/// chi(point/scale) * sum_{j<depth} b_j point^{deg_j}.
template <class C, class D>
std::complex<double> phg_realize(const PolyhomExpansion<C, D>& a, const ExcisionCutoff& cutoff, double point,
                                 std::size_t depth) {
    if (!(point > 0.0)) throw Error("phg_realize: evaluation point must be positive");
    if (depth > a.depth() && a.tail == Tail::unknown) throw Error("phg_realize: depth exceeds stored terms");
    double chi = cutoff(point);
    if (chi == 0.0) return {};
    double lp = std::log(point);
    std::complex<double> sum{};
    std::size_t n = std::min(depth, a.depth());
    for (std::size_t j = 0; j < n; ++j) sum += detail::as_complex(a.terms[j]) * std::exp(degree_value(a.degree(j)) * lp);
    return chi * sum;
}

/// Realization on the half-line of direction `dir`, at |s| = point.
template <class C, class D>
std::complex<double> phg_realize(const PolyhomExpansion<DirPair<C>, D>& a, const ExcisionCutoff& cutoff, double point,
                                 std::size_t depth, Dir dir) {
    PolyhomExpansion<C, D> side(a.anchor, a.step, {}, a.tail);
    side.terms.reserve(a.depth());
    for (const auto& c : a.terms) side.terms.push_back(c[dir]);
    return phg_realize(side, cutoff, point, depth);
}

}  // namespace asym::symbol
