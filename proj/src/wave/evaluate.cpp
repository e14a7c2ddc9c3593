#include "asym/wave/evaluate.hpp"

#include "asym/core/errors.hpp"
#include "asym/symbol/excision.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gsl/gsl_sf_expint.h>

#include <cmath>
#include <numbers>

namespace asym::wave {

namespace {

constexpr cplx I(0.0, 1.0);

cplx window_part(int d, double k, const QuadratureConfig& cfg) {
    using boost::math::quadrature::gauss_kronrod;
    const symbol::ExcisionCutoff chi(cfg.excision_scale);
    const double s = cfg.excision_scale;
    auto w = [&](double r) { return chi(r) * std::pow(r, d); };
    double err_re = 0.0, err_im = 0.0;
    const double re = gauss_kronrod<double, 61>::integrate([&](double r) { return w(r) * std::cos(k * r); }, s, 2.0 * s,
                                                          cfg.max_depth, cfg.tol, &err_re);
    const double im = gauss_kronrod<double, 61>::integrate([&](double r) { return w(r) * std::sin(k * r); }, s, 2.0 * s,
                                                          cfg.max_depth, cfg.tol, &err_im);
    const double scale = std::max(1.0, std::abs(re) + std::abs(im));
    if (err_re + err_im > 1e3 * cfg.tol * scale)
        throw NumericalFailure("radial quadrature did not converge (k = " + std::to_string(k) + ")");
    return {re, im};
}

/// int_a^inf e^{ikr} r^d dr
cplx tail_part(int d, double k, double a) {
    const cplx e = std::exp(I * (k * a));
    if (d >= 0) {
        if (k == 0.0) throw NumericalFailure("tail integral of a nonnegative power diverges at k = 0");
        const cplx ik = I * k;
        cplx A = -e / ik;
        for (int q = 1; q <= d; ++q) A = -std::pow(a, q) * e / ik - (static_cast<double>(q) / ik) * A;
        return A;
    }
    const int p = -d;
    if (k == 0.0) {
        if (p == 1) throw NumericalFailure("tail integral of 1/r diverges at k = 0");
        return std::pow(a, 1 - p) / static_cast<double>(p - 1);
    }
    const double ka = std::abs(k) * a;
    const double sg = k > 0.0 ? 1.0 : -1.0;
    cplx T(-gsl_sf_Ci(ka), sg * (std::numbers::pi / 2.0 - gsl_sf_Si(ka)));
    for (int q = 2; q <= p; ++q) T = (std::pow(a, 1 - q) * e + I * k * T) / static_cast<double>(q - 1);
    return T;
}

int used_orders(const ConormalSolution& sol, const QuadratureConfig& cfg) {
    const int J = sol.plus.depth();
    return cfg.max_order < 0 ? J : std::min(J, cfg.max_order);
}

int integer_degree(const Rational& q) {
    if (!is_integer(q)) throw ConfigError("evaluation supports integer amplitude degrees only");
    return static_cast<int>(to_long(q));
}

/// Basis after the constant: e log e, e, e^2, e^3 log e, e^3, e^4, ... (log terms at odd powers
/// come from the continuous amplitude orders of degree <= -2).
double basis(std::size_t i, double e) {
    std::size_t m = 1, idx = 0;
    while (true) {
        if (m % 2 == 1) {
            if (idx == i) return std::pow(e, static_cast<double>(m)) * std::log(e);
            ++idx;
        }
        if (idx == i) return std::pow(e, static_cast<double>(m));
        ++idx;
        ++m;
    }
}

/// Constant term of the interpolant through samples first..end-1.
cplx extrapolate_to_zero(const std::vector<double>& e, const std::vector<cplx>& d, std::size_t first) {
    const auto n = static_cast<Eigen::Index>(e.size() - first);
    Eigen::MatrixXcd A(n, n);
    Eigen::VectorXcd b(n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const double er = e[first + static_cast<std::size_t>(r)];
        A(r, 0) = 1.0;
        for (Eigen::Index c = 1; c < n; ++c) A(r, c) = basis(static_cast<std::size_t>(c - 1), er);
        b(r) = d[first + static_cast<std::size_t>(r)];
    }
    return A.colPivHouseholderQr().solve(b)(0);
}

}  // namespace

void QuadratureConfig::validate() const {
    if (!(excision_scale > 0.0)) throw ConfigError("excision scale must be positive");
    if (!(tol > 0.0)) throw ConfigError("quadrature tolerance must be positive");
}

cplx radial_integral(int d, double k, const QuadratureConfig& cfg) {
    cfg.validate();
    return window_part(d, k, cfg) + tail_part(d, k, 2.0 * cfg.excision_scale);
}

cplx evaluate_solution(const ConormalSolution& sol, double t, const Vec& x, const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(t > 0.0) || t > sol.op.horizon * (1.0 + 1e-12)) throw ConfigError("evaluation time outside (0, T]");
    if (sol.op.c.depends_on_x()) throw HypothesisViolation("evaluation needs an x-independent speed");
    if (static_cast<int>(x.size()) != sol.op.n) throw ConfigError("point dimension does not match the operator");
    const double C = sol.op.c.integral(t);
    const int J = used_orders(sol, cfg);
    const int mbar = integer_degree(sol.plus.mu_bar);
    cplx u{};
    if (sol.op.n == 1) {
        for (Branch b : {Branch::plus, Branch::minus}) {
            const auto& A = sol.amplitude(b);
            for (std::size_t dir = 0; dir < A.directions.size(); ++dir) {
                const double w = A.directions[dir][0];
                const double k = x[0] * w + sign(b) * C;
                for (int j = 0; j < J; ++j) {
                    const cplx a = A.alpha(j, dir, t);
                    if (a != cplx{}) u += a * radial_integral(mbar - j, k, cfg);
                }
            }
        }
        return u / (2.0 * std::numbers::pi);
    }
    if (sol.op.n != 3) throw HypothesisViolation("pointwise evaluation is available for n = 1 and radial n = 3 only");
    const double rho = norm(x);
    if (rho == 0.0) throw ConfigError("radial evaluation at the origin is not supported");
    for (Branch b : {Branch::plus, Branch::minus}) {
        const auto& A = sol.amplitude(b);
        for (int j = 0; j < J; ++j) {
            const cplx a = A.alpha(j, 0, t);
            for (std::size_t dir = 1; dir < A.directions.size(); ++dir)
                if (std::abs(A.alpha(j, dir, t) - a) > 1e-12 * std::max(1.0, std::abs(a)))
                    throw HypothesisViolation("n = 3 evaluation needs direction-independent amplitudes");
            if (a == cplx{}) continue;
            const int d = mbar - j;
            const double bc = sign(b) * C;
            u += a * (radial_integral(d + 1, bc + rho, cfg) - radial_integral(d + 1, bc - rho, cfg)) / (2.0 * I);
        }
    }
    return u / (2.0 * std::numbers::pi * std::numbers::pi * rho);
}

JumpEstimate jump_across_cone(const ConormalSolution& sol, double t, const JumpConfig& jc, const QuadratureConfig& cfg) {
    if (sol.op.n != 1) throw HypothesisViolation("jump_across_cone is implemented for n = 1");
    if (jc.levels < 2 || !(jc.eps0 > 0.0)) throw ConfigError("jump schedule needs eps0 > 0 and at least two levels");
    JumpEstimate est;
    est.t = t;
    const LightCone cone = light_cone(sol.op, t, 2);
    est.cone = cone.radii.at(0);
    const auto L = static_cast<std::size_t>(jc.levels);
    std::vector<double> scaled;  // eps_k / eps0
    double eps = jc.eps0;
    for (std::size_t k = 0; k < L; ++k, eps *= 0.5) {
        est.raw.push_back(evaluate_solution(sol, t, {est.cone + eps}, cfg) - evaluate_solution(sol, t, {est.cone - eps}, cfg));
        scaled.push_back(eps / jc.eps0);
    }
    est.jump = extrapolate_to_zero(scaled, est.raw, 0);
    est.error = std::abs(est.jump - extrapolate_to_zero(scaled, est.raw, 1));
    if (est.error > jc.tol * std::max(1.0, std::abs(est.jump)))
        throw NumericalFailure("cone jump extrapolation did not settle (last change " + std::to_string(est.error) + ")");
    return est;
}

}  // namespace asym::wave
