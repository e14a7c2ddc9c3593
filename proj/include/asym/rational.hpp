#pragma once

// Exact scalar arithmetic: GMP rationals and complex rationals over Q(i).

#include <gmpxx.h>

#include <complex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace asym {

using Rational = mpq_class;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Canonical n/d (the two-argument mpq constructor does not reduce).
inline Rational q(long n, long d) {
    Rational r(n, d);
    r.canonicalize();
    return r;
}

/// Parses "p", "p/q", "-p/q" or a finite decimal such as "1.25" (read exactly).
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
double to_double(const Rational& q);
bool is_integer(const Rational& q);
/// Throws std::domain_error when q is not an integer.
long to_long(const Rational& q);

/// Element of Q(i). Value type; every operation is exact.
struct QComplex {
    Rational re{0};
    Rational im{0};

    QComplex() = default;
    QComplex(long r) : re(r) {}  // NOLINT(google-explicit-constructor)
    QComplex(Rational r) : re(std::move(r)) { re.canonicalize(); }  // NOLINT(google-explicit-constructor)
    QComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {
        re.canonicalize();
        im.canonicalize();
    }

    static QComplex i() { return {Rational(0), Rational(1)}; }

    [[nodiscard]] bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    [[nodiscard]] bool is_real() const { return sgn(im) == 0; }
    [[nodiscard]] QComplex conj() const { return {re, -im}; }
    [[nodiscard]] Rational norm2() const { return Rational(re * re + im * im); }
    [[nodiscard]] std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

    QComplex& operator+=(const QComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    QComplex& operator-=(const QComplex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    QComplex& operator*=(const QComplex& o) {
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    QComplex& operator/=(const QComplex& o);

    friend QComplex operator+(QComplex a, const QComplex& b) { return a += b; }
    friend QComplex operator-(QComplex a, const QComplex& b) { return a -= b; }
    friend QComplex operator*(QComplex a, const QComplex& b) { return a *= b; }
    friend QComplex operator/(QComplex a, const QComplex& b) { return a /= b; }
    friend QComplex operator-(const QComplex& a) { return {Rational(-a.re), Rational(-a.im)}; }
    friend bool operator==(const QComplex& a, const QComplex& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const QComplex& a, const QComplex& b) { return !(a == b); }
};

/// Accepts a rational string (real) or "re,im" with rational parts.
QComplex parse_qcomplex(std::string_view text);
std::string to_string(const QComplex& z);
std::ostream& operator<<(std::ostream& os, const QComplex& z);

QComplex pow(const QComplex& z, unsigned n);

/// Compile-time description of a coefficient field used by templated algorithms.
template <class C>
struct Field;

template <>
struct Field<QComplex> {
    static constexpr bool exact = true;
    static QComplex zero() { return {}; }
    static QComplex one() { return QComplex(1); }
    static QComplex imag_unit() { return QComplex::i(); }
    static QComplex from_rational(const Rational& q) { return QComplex(q); }
    static QComplex from_long(long v) { return QComplex(v); }
    static bool is_zero(const QComplex& z) { return z.is_zero(); }
    static std::complex<double> to_complex(const QComplex& z) { return z.to_complex(); }
};

template <>
struct Field<std::complex<double>> {
    static constexpr bool exact = false;
    static std::complex<double> zero() { return {0.0, 0.0}; }
    static std::complex<double> one() { return {1.0, 0.0}; }
    static std::complex<double> imag_unit() { return {0.0, 1.0}; }
    static std::complex<double> from_rational(const Rational& q) { return {q.get_d(), 0.0}; }
    static std::complex<double> from_long(long v) { return {static_cast<double>(v), 0.0}; }
    static bool is_zero(const std::complex<double>& z) { return z == std::complex<double>{}; }
    static std::complex<double> to_complex(const std::complex<double>& z) { return z; }
};

template <class C>
concept CoefficientField = requires { Field<C>::exact; };

}  // namespace asym
