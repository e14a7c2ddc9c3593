#pragma once

// The wave family D_t^2 - c(t,x)^2 |D_x|^2 with D_t = -i d/dt: q1 = 0, q2 = -c^2 |xi|^2.

#include <complex>
#include <string>
#include <vector>

namespace asym::wave {

using cplx = std::complex<double>;
using Vec = std::vector<double>;

enum class Variant { constant, time_dependent, space_time };

std::string to_string(Variant v);
Variant parse_variant(const std::string& s);

enum class Branch { plus = 1, minus = -1 };

inline double sign(Branch b) { return b == Branch::plus ? 1.0 : -1.0; }
inline Branch opposite(Branch b) { return b == Branch::plus ? Branch::minus : Branch::plus; }

/// c(t, x) = sum_k a_k t^k + sum_d sum_{k>=1} s_{d,k} x_d^k.
struct SoundSpeed {
    std::vector<double> time_coeffs{1.0};
    std::vector<std::vector<double>> space_coeffs;  // per dimension, s_{d,1}, s_{d,2}, ...

    [[nodiscard]] bool depends_on_x() const;
    [[nodiscard]] bool depends_on_t() const;
    [[nodiscard]] double operator()(double t, const Vec& x) const;
    [[nodiscard]] double dt(double t, const Vec& x) const;
    [[nodiscard]] Vec grad(double t, const Vec& x) const;
    /// Diagonal of the x-Hessian (the x part is separable).
    [[nodiscard]] Vec hess_diag(double t, const Vec& x) const;
    /// int_0^t c; only for x-independent speeds.
    [[nodiscard]] double integral(double t) const;
    /// c as a function of t alone (x-independent speeds).
    [[nodiscard]] double at(double t) const;
    [[nodiscard]] double dt_at(double t) const;
};

struct HyperbolicOp2 {
    int n = 1;
    Variant variant = Variant::constant;
    SoundSpeed c;
    double horizon = 1.0;  // T
    double kappa = 0.0;    // q2 <= -kappa |xi|^2 on the validation samples

    /// Checks variant consistency, c >= 1 - tol and strict hyperbolicity on samples; sets kappa.
    void validate(double x_extent = 4.0, int samples = 41, double tol = 1e-12);

    [[nodiscard]] double q1(double, const Vec&, const Vec&) const { return 0.0; }
    [[nodiscard]] double q2(double t, const Vec& x, const Vec& xi) const;
};

HyperbolicOp2 constant_speed(int n, double c, double horizon);
/// c(t) = sum_k coeffs[k] t^k.
HyperbolicOp2 time_speed(int n, std::vector<double> coeffs, double horizon);

double norm(const Vec& v);

struct CharRoots {
    HyperbolicOp2 op;
    double gap = 0.0;  // lower bound of |mu+ - mu-| / |xi| on samples

    /// -q1/2 +- sqrt(q1^2 - 4 q2)/2
    [[nodiscard]] double mu(Branch b, double t, const Vec& x, const Vec& xi) const;
    [[nodiscard]] Vec mu_xi(Branch b, double t, const Vec& x, const Vec& xi) const;
    [[nodiscard]] Vec mu_x(Branch b, double t, const Vec& x, const Vec& xi) const;
    [[nodiscard]] double mu_t(Branch b, double t, const Vec& x, const Vec& xi) const;
};

/// Throws HypothesisViolation if the discriminant is not positive at a sample.
CharRoots char_roots(const HyperbolicOp2& op, double x_extent = 4.0, int samples = 21);

}  // namespace asym::wave
