#pragma once

// Null bicharacteristics x' = -d_xi mu, xi' = d_x mu, eikonal phases and the light cone.

#include "asym/wave/operator.hpp"

#include <functional>
#include <vector>

namespace asym::wave {

struct RayOptions {
    double rtol = 1e-13;
    double atol = 1e-14;
};

struct RaySample {
    double t;
    Vec x;
    double tau;    // integrated alongside; equals mu(t, x, xi) up to the integrator tolerance
    Vec xi;
    double phase;  // phi along the ray, integrated from x0 . xi0
};

struct Ray {
    Branch branch = Branch::plus;
    Vec x0, xi0;
    std::vector<RaySample> samples;
    std::size_t steps = 0;
    double tau_residual = 0.0;  // max |tau - mu(t, x, xi)|
    double phase_drift = 0.0;   // max |phi - x0 . xi0|, zero by homogeneity
};

/// grid: increasing times in [0, T], starting at 0.
Ray trace_bicharacteristic(const HyperbolicOp2& op, const Vec& x0, const Vec& xi0, Branch b,
                           const std::vector<double>& grid, const RayOptions& opts = {});

/// Unit directions: {+1, -1} for n = 1; closed under x -> -x for every n.
std::vector<Vec> direction_fan(int n, int count);
/// Index of -dirs[i] in dirs.
std::vector<int> antipodes(const std::vector<Vec>& dirs);

/// phi(t, x, xi) from the ray that reaches x at time t. x-independent speeds in any
/// dimension; x-dependent speeds for n = 1 only.
double ray_phase(const HyperbolicOp2& op, Branch b, double t, const Vec& x, const Vec& xi, const RayOptions& opts = {});

struct PhaseSolution {
    Branch branch = Branch::plus;
    bool closed_form = false;  // x . xi +- C(t) |xi|
    double horizon = 0.0;
    std::function<double(double t, const Vec& x, const Vec& xi)> phase;

    [[nodiscard]] double operator()(double t, const Vec& x, const Vec& xi) const { return phase(t, x, xi); }
};

struct EikonalOptions {
    std::vector<double> grid;  // caustic checks happen on these times; default: 41 points on [0, T]
    double x_extent = 3.0;     // ray seeds for the caustic check cover [-x_extent, x_extent]
    int seeds = 61;
    RayOptions rays{};
};

/// Throws CausticError when the ray map x0 -> x(t; x0) stops being injective on the seeds.
PhaseSolution solve_eikonal(const HyperbolicOp2& op, Branch b, const EikonalOptions& opts = {});

/// |d_t phi - mu(t, x, grad phi)| by fourth-order central differences.
double eikonal_residual(const HyperbolicOp2& op, const PhaseSolution& phi, double t, const Vec& x, const Vec& xi,
                        double h = 1e-3);

struct LightCone {
    double t = 0.0;
    std::vector<Vec> directions;
    std::vector<Vec> points;  // x+(t; 0, omega)
    std::vector<double> radii;
    double min_separation_ratio = 0.0;  // min |x_i - x_j| / |omega_i - omega_j|
    bool hypersurface = false;
};

LightCone light_cone(const HyperbolicOp2& op, double t, int fan = 2, const RayOptions& opts = {});

struct RayAmplitudeSample {
    double t;
    double x;
    cplx a;
};

/// Leading-order transport 2 phi_t a' + (phi_tt - c^2 phi_xx) a = 0 along one ray (n = 1).
std::vector<RayAmplitudeSample> transport_along_ray(const HyperbolicOp2& op, Branch b, double x0, double xi0, cplx a0,
                                                    const std::vector<double>& grid, const RayOptions& opts = {});

}  // namespace asym::wave
