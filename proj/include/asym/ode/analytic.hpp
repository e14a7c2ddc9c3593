#pragma once

// Realized (function-valued) side of the half-line problem: jets of expansion terms,
// the operator acting on them, and backward integration of the ODE.

#include "asym/numerics/jet.hpp"
#include "asym/ode/halfline.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace asym::ode {

using numerics::Jet;

/// A function of t > 0 that can report derivatives up to some order.
struct HalfLineFunction {
    std::function<Jet(double t, std::size_t order)> eval;

    [[nodiscard]] Jet operator()(double t, std::size_t order) const { return eval(t, order); }
    [[nodiscard]] cplx value(double t) const { return eval(t, 0).value(); }
};

HalfLineFunction zero_function();
HalfLineFunction operator+(const HalfLineFunction& a, const HalfLineFunction& b);
HalfLineFunction operator-(const HalfLineFunction& a, const HalfLineFunction& b);
HalfLineFunction operator*(cplx s, const HalfLineFunction& a);

/// chi(t/c) as a jet.
Jet excision_jet(double t, double c, std::size_t order);

/// sum_k coeffs[k] t^{anchor - k s} e^{i mu t^s / s}.
HalfLineFunction realize_phased(cplx mu, cplx anchor, double s, std::vector<cplx> coeffs);

/// (L f), with the coefficients a_r summed exactly as given (no excision).
HalfLineFunction apply_operator(const HalfLineOperator& op, const HalfLineFunction& f);

/// Jet of a_r at t.
Jet coefficient_jet(const HalfLineOperator& op, int r, double t, std::size_t order);

struct IntegrationOptions {
    double rtol = 1e-13;
    double atol = 1e-15;
    double node_spacing = 0.25;
};

/// Solution of L v = h stored at nodes; values in between come from a short re-integration,
/// so the table is accurate to the integrator tolerance everywhere on [t_lo, t_hi].
class OdeSolutionTable {
public:
    OdeSolutionTable(const HalfLineOperator& op, std::function<cplx(double)> rhs, double t_start, double t_end,
                     std::vector<cplx> initial_state, const IntegrationOptions& opts = {});

    [[nodiscard]] double t_lo() const { return t_lo_; }
    [[nodiscard]] double t_hi() const { return t_hi_; }
    /// v, v', ..., v^{(m-1)} at t.
    [[nodiscard]] std::vector<cplx> state(double t) const;
    /// Jet up to order m (the top derivative from the equation).
    [[nodiscard]] Jet jet(double t, std::size_t order) const;
    [[nodiscard]] HalfLineFunction as_function() const;
    [[nodiscard]] std::size_t steps() const { return steps_; }

private:
    struct Shared;
    std::shared_ptr<const Shared> impl_;
    double t_lo_ = 0.0;
    double t_hi_ = 0.0;
    std::size_t steps_ = 0;
};

/// v^{(m)} from L v = h given the lower derivatives.
cplx top_derivative(const HalfLineOperator& op, double t, const std::vector<cplx>& state, cplx h);

}  // namespace asym::ode
