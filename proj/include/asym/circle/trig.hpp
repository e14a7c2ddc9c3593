#pragma once

// Exact trigonometric polynomials sum_n c_n e^{inx} over Q(i), and quotients N / D^k
// sharing one denominator D per frequency direction.

#include "asym/rational.hpp"

#include <complex>
#include <map>
#include <memory>
#include <vector>

namespace asym::circle {

using cplx = std::complex<double>;

class TrigPoly {
public:
    TrigPoly() = default;
    TrigPoly(QComplex c) {  // NOLINT(google-explicit-constructor)
        if (!c.is_zero()) c_[0] = std::move(c);
    }
    static TrigPoly mode(long n, QComplex c = QComplex(1));
    static TrigPoly sin_x();
    static TrigPoly cos_x();

    [[nodiscard]] const std::map<long, QComplex>& coeffs() const { return c_; }
    [[nodiscard]] bool is_zero() const { return c_.empty(); }
    [[nodiscard]] QComplex at(long n) const;
    [[nodiscard]] long max_mode() const;
    [[nodiscard]] cplx operator()(double x) const;
    /// d/dx.
    [[nodiscard]] TrigPoly derivative() const;

    TrigPoly& operator+=(const TrigPoly& o);
    TrigPoly& operator-=(const TrigPoly& o);
    friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
    friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
    friend TrigPoly operator-(const TrigPoly& a);
    friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);
    friend TrigPoly operator*(const TrigPoly& a, const QComplex& s);
    friend bool operator==(const TrigPoly& a, const TrigPoly& b) { return a.c_ == b.c_; }

private:
    void set(long n, QComplex v);
    std::map<long, QComplex> c_;
};

TrigPoly pow(const TrigPoly& p, unsigned k);

/// N / D^k. D is shared between fractions of one direction; k = 0 fractions carry no D.
class TrigFraction {
public:
    TrigFraction() = default;
    TrigFraction(TrigPoly n) : num_(std::move(n)) {}  // NOLINT(google-explicit-constructor)
    TrigFraction(QComplex c) : num_(TrigPoly(std::move(c))) {}  // NOLINT(google-explicit-constructor)
    TrigFraction(TrigPoly n, std::shared_ptr<const TrigPoly> d, unsigned k);

    [[nodiscard]] const TrigPoly& num() const { return num_; }
    [[nodiscard]] unsigned power() const { return k_; }
    [[nodiscard]] const std::shared_ptr<const TrigPoly>& den() const { return den_; }
    [[nodiscard]] bool is_zero() const { return num_.is_zero(); }
    [[nodiscard]] cplx operator()(double x) const;
    /// d/dx: (N' D - k N D') / D^{k+1}.
    [[nodiscard]] TrigFraction derivative() const;
    /// this / D, with D the supplied shared denominator.
    [[nodiscard]] TrigFraction divided_by(const std::shared_ptr<const TrigPoly>& d) const;

    TrigFraction& operator+=(const TrigFraction& o);
    TrigFraction& operator-=(const TrigFraction& o);
    friend TrigFraction operator+(TrigFraction a, const TrigFraction& b) { return a += b; }
    friend TrigFraction operator-(TrigFraction a, const TrigFraction& b) { return a -= b; }
    friend TrigFraction operator-(const TrigFraction& a);
    friend TrigFraction operator*(const TrigFraction& a, const TrigFraction& b);
    /// Equal as functions.
    friend bool operator==(const TrigFraction& a, const TrigFraction& b);

private:
    static std::shared_ptr<const TrigPoly> common_den(const TrigFraction& a, const TrigFraction& b);
    [[nodiscard]] TrigPoly lifted(unsigned k) const;  // numerator over D^k, k >= k_

    TrigPoly num_;
    std::shared_ptr<const TrigPoly> den_;
    unsigned k_ = 0;
};

}  // namespace asym::circle
