#pragma once

// Oscillatory evaluation of conormal solutions: radial integrals per direction,
// smooth excision window by adaptive Gauss-Kronrod, exact tails beyond it.

#include "asym/wave/amplitude.hpp"

namespace asym::wave {

struct QuadratureConfig {
    double excision_scale = 1.0;  // chi(r / s) vanishes for r <= s, equals 1 for r >= 2s
    double tol = 1e-13;
    unsigned max_depth = 15;
    int max_order = -1;  // orders used in the amplitude sum; -1 means all stored

    void validate() const;
};

/// int_0^inf e^{ikr} chi(r/s) r^d dr for integer d (Abel-summed for d >= 0).
cplx radial_integral(int d, double k, const QuadratureConfig& cfg = {});

/// u(t, x) = (2pi)^-n sum_+- int e^{i phi+-} chi(|xi|/s) sum_j a+-_j dxi.
/// n = 1 with any x-independent c; n = 3 for direction-independent amplitudes (radial case).
cplx evaluate_solution(const ConormalSolution& sol, double t, const Vec& x, const QuadratureConfig& cfg = {});

struct JumpConfig {
    double eps0 = 0.1;
    int levels = 7;       // eps_k = eps0 / 2^k, k < levels
    double tol = 1e-7;    // required agreement with the fit that drops the largest eps
};

struct JumpEstimate {
    double t = 0.0;
    double cone = 0.0;  // cone position x = C(t)
    cplx jump;          // u(cone + 0) - u(cone - 0)
    double error = 0.0;
    std::vector<cplx> raw;  // D(eps_k)
};

/// Limit of u(t, C + eps) - u(t, C - eps) along the outward normal (n = 1), by interpolating
/// the samples in 1, eps log eps, eps, eps^2, eps^3 log eps, ... and reading off the constant.
JumpEstimate jump_across_cone(const ConormalSolution& sol, double t, const JumpConfig& jc = {},
                              const QuadratureConfig& cfg = {});

}  // namespace asym::wave
