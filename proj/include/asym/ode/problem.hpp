#pragma once

// The half-line construction phrased as a filtered problem for the generic engine.
// Source level j: terms of degree <= Delta - j s. Target level j: degree <= Delta + m l* - (j+1) s.
// T^j is multiplication by i j s l0'(mu); T^0 vanishes, so the leading term is seeded.

#include "asym/core/errors.hpp"
#include "asym/ode/analytic.hpp"
#include "asym/ode/halfline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace asym::ode {

struct OdeProblemConfig {
    int levels = 48;
    double norm_t_min = 1.0;  // grid for the summation seminorms
    double norm_t_max = 1e6;
    int norm_points = 600;
    double window_lo = 20.0;  // residual window
    double window_hi = 100.0;
    int window_points = 400;
    double correction_t_max = 200.0;  // Step-3 integration starts here with zero data
    double level_norm_ref = 10.0;  // exact-element seminorms bound the realized ones on t >= this
    IntegrationOptions integration{};
};

template <class K>
class OdeProblem {
public:
    using element_type = Amplitude<K>;
    using target_type = Amplitude<K>;
    using symbol_type = K;
    using target_symbol_type = K;
    using realized_type = HalfLineFunction;
    using realized_target_type = HalfLineFunction;

    OdeProblem(HalfLineOperator op, K mu, OdeProblemConfig cfg = {})
        : op_(std::move(op)), mu_(std::move(mu)), cfg_(cfg) {
        op_.validate();
        if constexpr (std::is_same_v<K, QComplex>) {
            delta_ = delta_exponent(op_, mu_);
        } else {
            delta_ = delta_exponent(op_, cplx(mu_));
        }
        QPoly l0;
        l0.c.assign(static_cast<std::size_t>(op_.m + 1), QComplex{});
        l0.c[static_cast<std::size_t>(op_.m)] = QComplex(1);
        for (int r = 1; r <= op_.m; ++r) l0.c[static_cast<std::size_t>(op_.m - r)] += op_.a(r, 0);
        if constexpr (std::is_same_v<K, QComplex>) {
            if (!l0(mu_).is_zero()) throw HypothesisViolation("mu is not a root of l0");
            slope_ = l0.derivative()(mu_);
        } else {
            slope_ = l0.derivative()(cplx(mu_));
        }
        target_anchor_ = symbol::degree_shift(delta_, Rational(-(op_.lstar * op_.m) + op_.step()));
        const double lo = std::log(cfg_.norm_t_min), hi = std::log(cfg_.norm_t_max);
        for (int i = 0; i < cfg_.norm_points; ++i)
            norm_grid_.push_back(std::exp(lo + (hi - lo) * i / std::max(1, cfg_.norm_points - 1)));
        for (int i = 0; i < cfg_.window_points; ++i)
            window_grid_.push_back(cfg_.window_lo +
                                   (cfg_.window_hi - cfg_.window_lo) * i / std::max(1, cfg_.window_points - 1));
    }

    [[nodiscard]] const HalfLineOperator& op() const { return op_; }
    [[nodiscard]] const K& mu() const { return mu_; }
    [[nodiscard]] const K& delta() const { return delta_; }
    [[nodiscard]] const K& target_anchor() const { return target_anchor_; }
    [[nodiscard]] const OdeProblemConfig& config() const { return cfg_; }
    [[nodiscard]] double step() const { return op_.step().get_d(); }

    /// e^{i mu T} t^Delta.
    [[nodiscard]] element_type seed() const { return element_type(delta_, op_.step(), {Field<K>::one()}); }

    [[nodiscard]] int levels() const { return cfg_.levels; }

    [[nodiscard]] target_type apply(const element_type& u) const {
        Amplitude<K> full = apply_conjugated(op_, mu_, u);
        if (full.depth() > 0 && !symbol::coeff_is_zero(full.terms.front())) {
            if constexpr (Field<K>::exact) throw Error("apply: leading coefficient l0(mu) * u_0 must vanish");
        }
        target_type out(target_anchor_, op_.step(), {}, full.tail);
        if (full.depth() > 1) out.terms.assign(full.terms.begin() + 1, full.terms.end());
        return out.trim();
    }

    [[nodiscard]] K symbol_of(int j, const element_type& u) const { return u.coeff(static_cast<std::size_t>(j)); }
    [[nodiscard]] K target_symbol_of(int j, const target_type& g) const { return g.coeff(static_cast<std::size_t>(j)); }

    [[nodiscard]] K transport(int j, const K& s) const { return multiplier(j) * s; }
    [[nodiscard]] K transport_solve(int j, const K& ts) const {
        if (j == 0) throw TransportError(0, "T^0 vanishes at a characteristic root; seed the leading term");
        return ts / multiplier(j);
    }
    [[nodiscard]] element_type extend(int j, const K& s) const {
        element_type e(delta_, op_.step());
        e.terms.assign(static_cast<std::size_t>(j + 1), K{});
        e.terms[static_cast<std::size_t>(j)] = s;
        return e.trim();
    }

    [[nodiscard]] double level_norm(int l, const element_type& u) const { return exact_norm(l, u); }
    [[nodiscard]] double target_level_norm(int l, const target_type& g) const { return exact_norm(l, g); }
    [[nodiscard]] double target_symbol_norm(int, const K& ts) const {
        if (symbol::coeff_is_zero(ts)) return 0.0;
        return std::max(std::abs(to_cplx(ts)), std::numeric_limits<double>::min());
    }

    [[nodiscard]] element_type zero_element() const { return element_type(delta_, op_.step()); }
    [[nodiscard]] target_type zero_target() const { return target_type(target_anchor_, op_.step()); }
    [[nodiscard]] element_type add(const element_type& a, const element_type& b) const { return symbol::phg_add(a, b); }
    [[nodiscard]] target_type add_target(const target_type& a, const target_type& b) const {
        return symbol::phg_add(a, b);
    }
    [[nodiscard]] target_type negate_target(const target_type& g) const { return symbol::phg_neg(g); }
    [[nodiscard]] K negate_symbol(const K& s) const { return -s; }

    // Realized layer.
    [[nodiscard]] HalfLineFunction realize(const element_type& u) const { return realize_any(u); }
    [[nodiscard]] HalfLineFunction realize_target(const target_type& g) const { return realize_any(g); }
    [[nodiscard]] HalfLineFunction cutoff_apply(double c, const HalfLineFunction& r) const {
        return {[c, r](double t, std::size_t order) { return excision_jet(t, c, order) * r(t, order); }};
    }
    [[nodiscard]] HalfLineFunction realized_zero() const { return zero_function(); }
    [[nodiscard]] HalfLineFunction realized_add(const HalfLineFunction& a, const HalfLineFunction& b) const {
        return a + b;
    }
    [[nodiscard]] HalfLineFunction realized_target_sub(const HalfLineFunction& a, const HalfLineFunction& b) const {
        return a - b;
    }
    [[nodiscard]] HalfLineFunction apply_realized(const HalfLineFunction& r) const { return apply_operator(op_, r); }
    /// sup over the norm grid of |r(t)| t^{-Re(Delta - l s)}.
    [[nodiscard]] double realized_norm(int l, const HalfLineFunction& r) const {
        const double w = -(to_cplx(delta_).real() - l * step());
        double best = 0.0;
        for (double t : norm_grid_) best = std::max(best, std::abs(r.value(t)) * std::pow(t, w));
        return best;
    }
    /// sup over the residual window of |g(t)| t^{-Re(target anchor - l s)}.
    [[nodiscard]] double realized_target_norm(int l, const HalfLineFunction& g) const {
        const double w = -(to_cplx(target_anchor_).real() - l * step());
        double best = 0.0;
        for (double t : window_grid_) best = std::max(best, std::abs(g.value(t)) * std::pow(t, w));
        return best;
    }
    /// Step 3: v with L v = -g on [window_lo, correction_t_max], v vanishing to order m at the right end.
    [[nodiscard]] HalfLineFunction residual_solve(const HalfLineFunction& g) const {
        OdeSolutionTable table(
            op_, [g](double t) { return -g.value(t); }, cfg_.correction_t_max, cfg_.window_lo,
            std::vector<cplx>(static_cast<std::size_t>(op_.m)), cfg_.integration);
        return table.as_function();
    }

private:
    [[nodiscard]] K multiplier(int j) const {
        return Field<K>::imag_unit() * Field<K>::from_rational(Rational(op_.step() * j)) * slope_;
    }

    /// Infinite when a coefficient below level l is present; otherwise the weighted sum
    /// bounding the realized seminorm on t >= level_norm_ref.
    [[nodiscard]] double exact_norm(int l, const Amplitude<K>& a) const {
        double acc = 0.0;
        for (std::size_t k = 0; k < a.depth(); ++k) {
            if (symbol::coeff_is_zero(a.terms[k])) continue;
            if (static_cast<int>(k) < l) return std::numeric_limits<double>::infinity();
            acc += std::abs(to_cplx(a.terms[k])) * std::pow(cfg_.level_norm_ref, -(static_cast<int>(k) - l) * step());
        }
        return acc;
    }

    [[nodiscard]] HalfLineFunction realize_any(const Amplitude<K>& a) const {
        std::vector<cplx> coeffs;
        coeffs.reserve(a.depth());
        for (const auto& c : a.terms) coeffs.push_back(to_cplx(c));
        return realize_phased(to_cplx(mu_), to_cplx(a.anchor), step(), std::move(coeffs));
    }

    HalfLineOperator op_;
    K mu_;
    K delta_{};
    K slope_{};
    K target_anchor_{};
    OdeProblemConfig cfg_;
    std::vector<double> norm_grid_;
    std::vector<double> window_grid_;
};

struct ValidationRow {
    double t;
    cplx series;
    cplx integrated;
    double relative_error;
};

/// Series branch against the ODE integrated inward from t_match with series data there.
std::vector<ValidationRow> validate_against_integration(const HalfLineOperator& op, const FundSolution<cplx>& sol,
                                                        int J, double t_lo, double t_match, int samples,
                                                        const IntegrationOptions& opts = {});

/// Series value and its first m-1 derivatives at t (no excision; t must be in the flat region).
std::vector<cplx> series_state(const HalfLineOperator& op, const FundSolution<cplx>& sol, int J, double t);

/// L applied to the J-term series, differentiated symbolically and then evaluated at t.
cplx series_residual(const HalfLineOperator& op, const FundSolution<cplx>& sol, int J, double t);

/// Wronskian of the branches at t.
cplx wronskian(const HalfLineOperator& op, const std::vector<FundSolution<cplx>>& sols, int J, double t);

}  // namespace asym::ode
