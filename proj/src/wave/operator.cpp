#include "asym/wave/operator.hpp"

#include "asym/core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace asym::wave {

std::string to_string(Variant v) {
    switch (v) {
        case Variant::constant: return "constant";
        case Variant::time_dependent: return "time_dependent";
        case Variant::space_time: return "space_time";
    }
    return "?";
}

Variant parse_variant(const std::string& s) {
    if (s == "constant") return Variant::constant;
    if (s == "time_dependent") return Variant::time_dependent;
    if (s == "space_time") return Variant::space_time;
    throw ConfigError("unknown variant '" + s + "' (constant, time_dependent, space_time)");
}

namespace {

double poly(const std::vector<double>& a, double t) {
    double r = 0.0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) r = r * t + *it;
    return r;
}

double dpoly(const std::vector<double>& a, double t) {
    double r = 0.0;
    for (std::size_t k = a.size(); k-- > 1;) r = r * t + static_cast<double>(k) * a[k];
    return r;
}

/// sum_{k>=1} s_k x^k, with s stored from k = 1
double space_poly(const std::vector<double>& s, double x) { return x * poly(s, x); }
double space_dpoly(const std::vector<double>& s, double x) {
    double r = 0.0;
    for (std::size_t k = s.size(); k-- > 0;) r = r * x + static_cast<double>(k + 1) * s[k];
    return r;
}
double space_d2poly(const std::vector<double>& s, double x) {
    double r = 0.0;
    for (std::size_t k = s.size(); k-- > 1;) r = r * x + static_cast<double>((k + 1) * k) * s[k];
    return r;
}

}  // namespace

bool SoundSpeed::depends_on_x() const {
    for (const auto& s : space_coeffs)
        for (double v : s)
            if (v != 0.0) return true;
    return false;
}

bool SoundSpeed::depends_on_t() const {
    for (std::size_t k = 1; k < time_coeffs.size(); ++k)
        if (time_coeffs[k] != 0.0) return true;
    return false;
}

double SoundSpeed::operator()(double t, const Vec& x) const {
    double v = poly(time_coeffs, t);
    for (std::size_t d = 0; d < space_coeffs.size() && d < x.size(); ++d) v += space_poly(space_coeffs[d], x[d]);
    return v;
}

double SoundSpeed::dt(double t, const Vec&) const { return dpoly(time_coeffs, t); }

Vec SoundSpeed::grad(double, const Vec& x) const {
    Vec g(x.size(), 0.0);
    for (std::size_t d = 0; d < space_coeffs.size() && d < x.size(); ++d) g[d] = space_dpoly(space_coeffs[d], x[d]);
    return g;
}

Vec SoundSpeed::hess_diag(double, const Vec& x) const {
    Vec h(x.size(), 0.0);
    for (std::size_t d = 0; d < space_coeffs.size() && d < x.size(); ++d) h[d] = space_d2poly(space_coeffs[d], x[d]);
    return h;
}

double SoundSpeed::integral(double t) const {
    if (depends_on_x()) throw Error("SoundSpeed::integral: speed depends on x");
    double r = 0.0;
    for (std::size_t k = time_coeffs.size(); k-- > 0;) r = r * t + time_coeffs[k] / static_cast<double>(k + 1);
    return r * t;
}

double SoundSpeed::at(double t) const {
    if (depends_on_x()) throw Error("SoundSpeed::at: speed depends on x");
    return poly(time_coeffs, t);
}

double SoundSpeed::dt_at(double t) const { return dpoly(time_coeffs, t); }

double norm(const Vec& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

void HyperbolicOp2::validate(double x_extent, int samples, double tol) {
    if (n < 1) throw ConfigError("dimension must be positive");
    if (!(horizon > 0.0)) throw ConfigError("horizon T must be positive");
    if (c.time_coeffs.empty()) throw ConfigError("sound speed needs at least one time coefficient");
    if (static_cast<int>(c.space_coeffs.size()) > n) throw ConfigError("more space coefficient rows than dimensions");
    switch (variant) {
        case Variant::constant:
            if (c.depends_on_t() || c.depends_on_x()) throw ConfigError("variant 'constant' but c varies");
            break;
        case Variant::time_dependent:
            if (c.depends_on_x()) throw ConfigError("variant 'time_dependent' but c depends on x");
            break;
        case Variant::space_time: break;
    }
    double cmin = std::numeric_limits<double>::infinity();
    const int xs = c.depends_on_x() ? samples : 1;
    for (int i = 0; i < samples; ++i) {
        const double t = horizon * i / std::max(1, samples - 1);
        for (int j = 0; j < xs; ++j) {
            Vec x(static_cast<std::size_t>(n), xs == 1 ? 0.0 : -x_extent + 2.0 * x_extent * j / (xs - 1));
            cmin = std::min(cmin, c(t, x));
        }
    }
    if (cmin < 1.0 - tol)
        throw HypothesisViolation("sound speed drops below 1 on the sample grid (min " + std::to_string(cmin) + ")");
    kappa = cmin * cmin;
}

double HyperbolicOp2::q2(double t, const Vec& x, const Vec& xi) const {
    const double s = c(t, x) * norm(xi);
    return -s * s;
}

HyperbolicOp2 constant_speed(int n, double c, double horizon) {
    HyperbolicOp2 op;
    op.n = n;
    op.variant = Variant::constant;
    op.c.time_coeffs = {c};
    op.horizon = horizon;
    op.validate();
    return op;
}

HyperbolicOp2 time_speed(int n, std::vector<double> coeffs, double horizon) {
    HyperbolicOp2 op;
    op.n = n;
    op.variant = Variant::time_dependent;
    op.c.time_coeffs = std::move(coeffs);
    op.horizon = horizon;
    op.validate();
    return op;
}

double CharRoots::mu(Branch b, double t, const Vec& x, const Vec& xi) const {
    const double q1 = op.q1(t, x, xi), q2 = op.q2(t, x, xi);
    const double disc = q1 * q1 - 4.0 * q2;
    if (disc < 0.0) throw HypothesisViolation("negative discriminant: hyperbolicity violated");
    return -0.5 * q1 + sign(b) * 0.5 * std::sqrt(disc);
}

Vec CharRoots::mu_xi(Branch b, double t, const Vec& x, const Vec& xi) const {
    const double r = norm(xi);
    if (r == 0.0) throw NumericalFailure("frequency vanished");
    const double s = sign(b) * op.c(t, x) / r;
    Vec g(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) g[i] = s * xi[i];
    return g;
}

Vec CharRoots::mu_x(Branch b, double t, const Vec& x, const Vec& xi) const {
    Vec g = op.c.grad(t, x);
    const double s = sign(b) * norm(xi);
    for (double& v : g) v *= s;
    return g;
}

double CharRoots::mu_t(Branch b, double t, const Vec& x, const Vec& xi) const {
    return sign(b) * op.c.dt(t, x) * norm(xi);
}

CharRoots char_roots(const HyperbolicOp2& op, double x_extent, int samples) {
    CharRoots r{op, std::numeric_limits<double>::infinity()};
    const int xs = op.c.depends_on_x() ? samples : 1;
    for (int i = 0; i < samples; ++i) {
        const double t = op.horizon * i / std::max(1, samples - 1);
        for (int j = 0; j < xs; ++j) {
            Vec x(static_cast<std::size_t>(op.n), xs == 1 ? 0.0 : -x_extent + 2.0 * x_extent * j / (xs - 1));
            Vec xi(static_cast<std::size_t>(op.n), 0.0);
            xi[0] = 1.0;
            const double q1 = op.q1(t, x, xi), q2 = op.q2(t, x, xi);
            const double disc = q1 * q1 - 4.0 * q2;
            if (!(disc > 0.0))
                throw HypothesisViolation("discriminant not positive at t = " + std::to_string(t) +
                                          ": roots collide (hyperbolicity violated)");
            r.gap = std::min(r.gap, std::sqrt(disc));
        }
    }
    return r;
}

}  // namespace asym::wave
