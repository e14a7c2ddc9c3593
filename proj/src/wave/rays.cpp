#include "asym/wave/rays.hpp"

#include "asym/core/errors.hpp"

#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace asym::wave {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::vector<double>;

double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void check_grid(const std::vector<double>& grid, double horizon) {
    if (grid.empty() || grid.front() != 0.0) throw ConfigError("time grid must start at 0");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw ConfigError("time grid must be increasing");
    if (grid.back() > horizon * (1.0 + 1e-12)) throw ConfigError("time grid exceeds the horizon T");
}

std::vector<double> uniform_grid(double T, int n) {
    std::vector<double> g;
    for (int i = 0; i < n; ++i) g.push_back(T * i / (n - 1));
    return g;
}

}  // namespace

Ray trace_bicharacteristic(const HyperbolicOp2& op, const Vec& x0, const Vec& xi0, Branch b,
                           const std::vector<double>& grid, const RayOptions& opts) {
    const auto n = static_cast<std::size_t>(op.n);
    if (x0.size() != n || xi0.size() != n) throw ConfigError("ray seed has the wrong dimension");
    if (norm(xi0) == 0.0) throw ConfigError("ray seed covector must be nonzero");
    check_grid(grid, op.horizon);
    const CharRoots roots{op, 0.0};
    const double xi_floor = 1e-12 * norm(xi0);

    // x (n), xi (n), tau, phi
    auto system = [&](const State& s, State& ds, double t) {
        Vec x(s.begin(), s.begin() + static_cast<long>(n)), xi(s.begin() + static_cast<long>(n), s.begin() + 2 * static_cast<long>(n));
        if (norm(xi) < xi_floor) throw NumericalFailure("ray covector tends to zero");
        Vec mxi = roots.mu_xi(b, t, x, xi), mx = roots.mu_x(b, t, x, xi);
        for (std::size_t i = 0; i < n; ++i) {
            ds[i] = -mxi[i];
            ds[n + i] = mx[i];
        }
        ds[2 * n] = roots.mu_t(b, t, x, xi);
        ds[2 * n + 1] = s[2 * n] - dot(xi, mxi);
    };

    State s(2 * n + 2);
    std::copy(x0.begin(), x0.end(), s.begin());
    std::copy(xi0.begin(), xi0.end(), s.begin() + static_cast<long>(n));
    s[2 * n] = roots.mu(b, 0.0, x0, xi0);
    s[2 * n + 1] = dot(x0, xi0);

    Ray ray{b, x0, xi0, {}, 0, 0.0, 0.0};
    auto observer = [&](const State& st, double t) {
        RaySample smp{t, Vec(st.begin(), st.begin() + static_cast<long>(n)), st[2 * n],
                      Vec(st.begin() + static_cast<long>(n), st.begin() + 2 * static_cast<long>(n)), st[2 * n + 1]};
        for (double v : st)
            if (!std::isfinite(v)) throw NumericalFailure("ray integration produced a non-finite state");
        ray.tau_residual = std::max(ray.tau_residual, std::abs(smp.tau - roots.mu(b, t, smp.x, smp.xi)));
        ray.phase_drift = std::max(ray.phase_drift, std::abs(smp.phase - dot(x0, xi0)));
        ray.samples.push_back(std::move(smp));
    };
    if (grid.size() == 1) {
        observer(s, 0.0);
        return ray;
    }
    auto stepper = odeint::make_controlled<odeint::runge_kutta_fehlberg78<State>>(opts.atol, opts.rtol);
    const double dt = std::min(0.01, grid[1] - grid[0]);
    ray.steps = odeint::integrate_times(stepper, system, s, grid.begin(), grid.end(), dt, observer);
    return ray;
}

std::vector<Vec> direction_fan(int n, int count) {
    std::vector<Vec> dirs;
    if (n == 1) return {{1.0}, {-1.0}};
    if (count < 2 || count % 2) throw ConfigError("direction fan size must be even and at least 2");
    const int half = count / 2;
    if (n == 2) {
        for (int i = 0; i < count; ++i) {
            const double a = 2.0 * std::numbers::pi * i / count;
            dirs.push_back({std::cos(a), std::sin(a)});
        }
        return dirs;
    }
    if (n == 3) {
        const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
        for (int i = 0; i < half; ++i) {
            const double z = (i + 0.5) / half;
            const double r = std::sqrt(1.0 - z * z);
            dirs.push_back({r * std::cos(golden * i), r * std::sin(golden * i), z});
        }
        for (int i = 0; i < half; ++i) dirs.push_back({-dirs[i][0], -dirs[i][1], -dirs[i][2]});
        return dirs;
    }
    throw ConfigError("direction fans are provided for n = 1, 2, 3");
}

std::vector<int> antipodes(const std::vector<Vec>& dirs) {
    std::vector<int> out(dirs.size(), -1);
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        for (std::size_t j = 0; j < dirs.size(); ++j) {
            double d = 0.0;
            for (std::size_t k = 0; k < dirs[i].size(); ++k) d += std::abs(dirs[i][k] + dirs[j][k]);
            if (d < 1e-12) {
                out[i] = static_cast<int>(j);
                break;
            }
        }
        if (out[i] < 0) throw ConfigError("direction fan is not closed under reflection");
    }
    return out;
}

double ray_phase(const HyperbolicOp2& op, Branch b, double t, const Vec& x, const Vec& xi, const RayOptions& opts) {
    const auto n = static_cast<std::size_t>(op.n);
    if (x.size() != n || xi.size() != n) throw ConfigError("ray_phase: wrong dimension");
    if (t == 0.0) return dot(x, xi);
    const std::vector<double> grid{0.0, t};
    if (!op.c.depends_on_x()) {
        // the ray map is a translation in x0
        Ray r = trace_bicharacteristic(op, Vec(n, 0.0), xi, b, grid, opts);
        const auto& end = r.samples.back();
        Vec x0(n);
        for (std::size_t i = 0; i < n; ++i) x0[i] = x[i] - end.x[i];
        return dot(x0, xi) + end.phase;
    }
    if (n != 1) throw ConfigError("ray_phase: x-dependent speeds are supported for n = 1 only");
    auto end_of = [&](double s0) { return trace_bicharacteristic(op, {s0}, xi, b, grid, opts).samples.back(); };
    auto g = [&](double s0) { return end_of(s0).x[0] - x[0]; };
    double lo = x[0], hi = x[0];
    double glo = g(lo), ghi = glo;
    double h = 0.5;
    for (int it = 0; it < 60 && glo * ghi > 0.0; ++it) {
        lo = x[0] - h;
        hi = x[0] + h;
        glo = g(lo);
        ghi = g(hi);
        h *= 2.0;
    }
    if (glo == 0.0) return end_of(lo).phase;
    if (ghi == 0.0) return end_of(hi).phase;
    if (glo * ghi > 0.0) throw NumericalFailure("ray_phase: could not bracket the ray through x");
    std::uintmax_t iters = 200;
    auto [a, c] = boost::math::tools::toms748_solve(g, lo, hi, glo, ghi, boost::math::tools::eps_tolerance<double>(52),
                                                   iters);
    return end_of(0.5 * (a + c)).phase;
}

PhaseSolution solve_eikonal(const HyperbolicOp2& op, Branch b, const EikonalOptions& opts) {
    PhaseSolution sol;
    sol.branch = b;
    sol.horizon = op.horizon;
    const double sb = sign(b);
    if (!op.c.depends_on_x()) {
        sol.closed_form = true;
        const SoundSpeed c = op.c;
        sol.phase = [c, sb](double t, const Vec& x, const Vec& xi) { return dot(x, xi) + sb * c.integral(t) * norm(xi); };
        return sol;
    }
    if (op.n != 1) throw ConfigError("solve_eikonal: x-dependent speeds are supported for n = 1 only");
    std::vector<double> grid = opts.grid.empty() ? uniform_grid(op.horizon, 41) : opts.grid;
    check_grid(grid, op.horizon);
    // caustic guard on the seed fan, both covector directions
    std::vector<Ray> rays;
    for (double dir : {1.0, -1.0}) {
        rays.clear();
        for (int i = 0; i < opts.seeds; ++i) {
            const double s0 = -opts.x_extent + 2.0 * opts.x_extent * i / (opts.seeds - 1);
            rays.push_back(trace_bicharacteristic(op, {s0}, {dir}, b, grid, opts.rays));
        }
        for (std::size_t k = 0; k < grid.size(); ++k) {
            for (std::size_t i = 1; i < rays.size(); ++i) {
                if (!(rays[i].samples[k].x[0] > rays[i - 1].samples[k].x[0]))
                    throw CausticError(grid[k], "caustic: ray map loses injectivity at t = " + std::to_string(grid[k]));
            }
        }
    }
    const HyperbolicOp2 opc = op;
    const RayOptions ro = opts.rays;
    sol.phase = [opc, b, ro](double t, const Vec& x, const Vec& xi) {
        if (t > opc.horizon * (1.0 + 1e-12)) throw Error("phase requested beyond the verified horizon");
        const double r = norm(xi);
        if (r == 0.0) return 0.0;
        return r * ray_phase(opc, b, t, x, {xi[0] / r}, ro);
    };
    return sol;
}

double eikonal_residual(const HyperbolicOp2& op, const PhaseSolution& phi, double t, const Vec& x, const Vec& xi,
                        double h) {
    auto d4 = [h](const std::function<double(double)>& f, double s) {
        return (-f(s + 2 * h) + 8 * f(s + h) - 8 * f(s - h) + f(s - 2 * h)) / (12 * h);
    };
    const double phit = d4([&](double s) { return phi(s, x, xi); }, t);
    Vec grad(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        grad[i] = d4(
            [&](double s) {
                Vec y = x;
                y[i] = s;
                return phi(t, y, xi);
            },
            x[i]);
    }
    const CharRoots roots{op, 0.0};
    return std::abs(phit - roots.mu(phi.branch, t, x, grad));
}

LightCone light_cone(const HyperbolicOp2& op, double t, int fan, const RayOptions& opts) {
    if (!(t > 0.0) || t > op.horizon * (1.0 + 1e-12)) throw ConfigError("light_cone: t must lie in (0, T]");
    LightCone cone;
    cone.t = t;
    cone.directions = direction_fan(op.n, fan);
    const auto n = static_cast<std::size_t>(op.n);
    for (const auto& w : cone.directions) {
        Ray r = trace_bicharacteristic(op, Vec(n, 0.0), w, Branch::plus, {0.0, t}, opts);
        cone.points.push_back(r.samples.back().x);
        cone.radii.push_back(norm(r.samples.back().x));
    }
    cone.min_separation_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cone.points.size(); ++i)
        for (std::size_t j = i + 1; j < cone.points.size(); ++j) {
            Vec dx(n), dw(n);
            for (std::size_t k = 0; k < n; ++k) {
                dx[k] = cone.points[i][k] - cone.points[j][k];
                dw[k] = cone.directions[i][k] - cone.directions[j][k];
            }
            cone.min_separation_ratio = std::min(cone.min_separation_ratio, norm(dx) / norm(dw));
        }
    const double rmax = *std::max_element(cone.radii.begin(), cone.radii.end());
    cone.hypersurface = cone.min_separation_ratio > 1e-6 * rmax;
    return cone;
}

std::vector<RayAmplitudeSample> transport_along_ray(const HyperbolicOp2& op, Branch b, double x0, double xi0, cplx a0,
                                                    const std::vector<double>& grid, const RayOptions& opts) {
    if (op.n != 1) throw ConfigError("transport_along_ray: n = 1 only");
    if (xi0 == 0.0) throw ConfigError("transport_along_ray: xi0 must be nonzero");
    check_grid(grid, op.horizon);
    const double sb = sign(b);
    const SoundSpeed& c = op.c;
    // x, xi, dx, dxi (variations in x0), log of the real amplitude factor
    auto system = [&](const State& s, State& ds, double t) {
        const Vec x{s[0]};
        const double xi = s[1], sg = xi > 0 ? 1.0 : -1.0, ax = std::abs(xi);
        const double cv = c(t, x), cx = c.grad(t, x)[0], cxx = c.hess_diag(t, x)[0], ct = c.dt(t, x);
        const double mu = sb * cv * ax, mxi = sb * cv * sg, mx = sb * cx * ax, mt = sb * ct * ax;
        const double mxx = sb * cxx * ax, mxxi = sb * cx * sg;
        if (std::abs(s[2]) < 1e-12) throw CausticError(t, "caustic along the ray: variation dx vanished");
        const double phxx = s[3] / s[2];
        const double phtt = mt + mxi * (mx + mxi * phxx);
        ds[0] = -mxi;
        ds[1] = mx;
        ds[2] = -mxxi * s[2];
        ds[3] = mxx * s[2] + mxxi * s[3];
        ds[4] = -(phtt - cv * cv * phxx) / (2.0 * mu);
    };
    State s{x0, xi0, 1.0, 0.0, 0.0};
    std::vector<RayAmplitudeSample> out;
    auto observer = [&](const State& st, double t) { out.push_back({t, st[0], a0 * std::exp(st[4])}); };
    if (grid.size() == 1) {
        observer(s, 0.0);
        return out;
    }
    auto stepper = odeint::make_controlled<odeint::runge_kutta_fehlberg78<State>>(opts.atol, opts.rtol);
    odeint::integrate_times(stepper, system, s, grid.begin(), grid.end(), std::min(0.01, grid[1]), observer);
    return out;
}

}  // namespace asym::wave
