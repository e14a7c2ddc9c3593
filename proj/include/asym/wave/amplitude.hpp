#pragma once

// Amplitudes of the two conormal branches: Cauchy initialization at t = 0 and transport
// in t, for speeds c = c(t). Order j has degree mu_bar - j in xi.

#include "asym/rational.hpp"
#include "asym/wave/chebyshev.hpp"
#include "asym/wave/rays.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace asym::wave {

/// Solves sum_h roots[h]^p a_h = data[p], p = 0..m-1 (Bjorck-Pereyra).
std::vector<cplx> vandermonde_init(const std::vector<cplx>& roots, const std::vector<cplx>& data);
/// max_p |sum_h roots[h]^p a_h - data[p]| / max(1, max |data|)
double vandermonde_residual(const std::vector<cplx>& roots, const std::vector<cplx>& a, const std::vector<cplx>& data);

/// a+ + a- = b, mu+ a+ + mu- a- = c.
std::pair<cplx, cplx> cauchy_init(cplx mu_plus, cplx mu_minus, cplx b, cplx c);
/// Same with the roots of op at (0, x, omega), |omega| = 1.
std::pair<cplx, cplx> cauchy_init(const CharRoots& roots, const Vec& x, const Vec& omega, cplx b, cplx c);

using DirFunction = std::function<cplx(const Vec& omega)>;

/// Symbols of the Cauchy data: g0[j] has degree mu_bar - j, g1[j] has degree mu_bar + 1 - j.
/// Missing entries are zero.
struct CauchyData {
    Rational mu_bar{-1};
    std::vector<DirFunction> g0;
    std::vector<DirFunction> g1;
    std::string label;
};

CauchyData green_data();

struct AmplitudeOptions {
    std::size_t cheb_order = 40;
    int fan = 2;  // direction count for n > 1
};

struct AmplitudeExpansion {
    Branch branch = Branch::plus;
    Rational mu_bar{-1};
    std::vector<Vec> directions;
    std::vector<std::vector<ChebSeries>> coeff;  // [order][direction]: alpha_j(t, omega)

    [[nodiscard]] int depth() const { return static_cast<int>(coeff.size()); }
    [[nodiscard]] cplx alpha(int j, std::size_t dir, double t) const;
    /// alpha_j(t, xi/|xi|) |xi|^{mu_bar - j}; xi must point along a fan direction.
    [[nodiscard]] cplx eval(int j, double t, const Vec& xi) const;
    void scale_order(int j, cplx s);
};

inline const char* kConventionTag =
    "D_t=-i d/dt; P=D_t^2-c^2|D_x|^2; dxi=(2pi)^-n dxi; u=sum_+- int e^{i phi+-} a+- dxi; g1=i delta gives "
    "u=-(1/2c) 1{|x|<ct} (n=1, c const)";

struct ConormalSolution {
    HyperbolicOp2 op;
    CauchyData data;
    PhaseSolution phase_plus, phase_minus;
    AmplitudeExpansion plus, minus;
    std::vector<int> antipode;
    std::string convention = kConventionTag;

    [[nodiscard]] const AmplitudeExpansion& amplitude(Branch b) const { return b == Branch::plus ? plus : minus; }
    [[nodiscard]] AmplitudeExpansion& amplitude(Branch b) { return b == Branch::plus ? plus : minus; }
    [[nodiscard]] const PhaseSolution& phase(Branch b) const { return b == Branch::plus ? phase_plus : phase_minus; }
};

/// Order-by-order init and transport to depth J. Requires c independent of x.
ConormalSolution build_conormal(const HyperbolicOp2& op, const CauchyData& data, int J, const AmplitudeOptions& opts = {});
/// g0 = 0, g1 = i delta, mu_bar = -1. Requires odd n.
ConormalSolution build_green(const HyperbolicOp2& op, int J, const AmplitudeOptions& opts = {});

struct ParityReport {
    std::vector<double> defects;  // d_j
    std::vector<double> scales;

    [[nodiscard]] double max() const;
};

/// d_j = max over the time grid and fan of |a-_j(t, -omega) - (-1)^{mu_bar - j} a+_j(t, omega)| / scale_j.
ParityReport check_parity(const ConormalSolution& sol, int J, int time_samples = 41);

}  // namespace asym::wave
