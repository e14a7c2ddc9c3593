#pragma once

// Truncated Taylor series in one real variable: c[k] = f^(k)(t0) / k!.
// Enough calculus to differentiate realized expansion terms to a fixed order.

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace asym::numerics {

using cplx = std::complex<double>;

class Jet {
public:
    Jet() = default;
    explicit Jet(std::size_t order, cplx value = {}) : c_(order + 1) { c_[0] = value; }
    static Jet variable(std::size_t order, double t0) {
        Jet j(order, t0);
        if (order >= 1) j.c_[1] = 1.0;
        return j;
    }

    [[nodiscard]] std::size_t order() const { return c_.size() - 1; }
    [[nodiscard]] cplx value() const { return c_[0]; }
    /// k-th derivative (not the Taylor coefficient).
    [[nodiscard]] cplx derivative(std::size_t k) const;
    cplx& operator[](std::size_t k) { return c_[k]; }
    const cplx& operator[](std::size_t k) const { return c_[k]; }

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(cplx s);
    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator-(Jet a) { return a *= -1.0; }
    friend Jet operator*(Jet a, cplx s) { return a *= s; }
    friend Jet operator*(cplx s, Jet a) { return a *= s; }
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator/(const Jet& a, const Jet& b);

private:
    std::vector<cplx> c_{cplx{}};
};

Jet exp(const Jet& a);
Jet log(const Jet& a);
/// a^p through exp(p log a); a must not vanish at the base point.
Jet pow(const Jet& a, cplx p);
Jet reciprocal(const Jet& a);

}  // namespace asym::numerics
