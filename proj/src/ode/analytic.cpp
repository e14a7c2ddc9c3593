#include "asym/ode/analytic.hpp"

#include "asym/core/errors.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>

namespace asym::ode {

namespace {

const cplx kD{0.0, static_cast<double>(kDtSign)};  // D_t = kD * d/dt

Jet truncate(const Jet& a, std::size_t order) {
    Jet r(order);
    for (std::size_t k = 0; k <= order && k <= a.order(); ++k) r[k] = a[k];
    return r;
}

/// d/dt on Taylor coefficients; loses one order.
Jet differentiate(const Jet& a) {
    if (a.order() == 0) return Jet(0);
    Jet r(a.order() - 1);
    for (std::size_t k = 0; k < a.order(); ++k) r[k] = static_cast<double>(k + 1) * a[k + 1];
    return r;
}

cplx ipow(cplx z, int k) {
    cplx r{1.0, 0.0};
    for (int i = 0; i < k; ++i) r *= z;
    return r;
}

}  // namespace

HalfLineFunction zero_function() {
    return {[](double, std::size_t order) { return Jet(order); }};
}

HalfLineFunction operator+(const HalfLineFunction& a, const HalfLineFunction& b) {
    return {[a, b](double t, std::size_t order) { return a(t, order) + b(t, order); }};
}

HalfLineFunction operator-(const HalfLineFunction& a, const HalfLineFunction& b) {
    return {[a, b](double t, std::size_t order) { return a(t, order) - b(t, order); }};
}

HalfLineFunction operator*(cplx s, const HalfLineFunction& a) {
    return {[s, a](double t, std::size_t order) { return a(t, order) * s; }};
}

Jet excision_jet(double t, double c, std::size_t order) {
    const double y = t / c;
    if (y <= 1.0) return Jet(order);
    if (y >= 2.0) return Jet(order, 1.0);
    Jet Y = Jet::variable(order, t) * cplx(1.0 / c);
    Jet one(order, 1.0);
    Jet a = numerics::exp(-numerics::reciprocal(Y - one));
    Jet b = numerics::exp(-numerics::reciprocal(Jet(order, 2.0) - Y));
    return a / (a + b);
}

HalfLineFunction realize_phased(cplx mu, cplx anchor, double s, std::vector<cplx> coeffs) {
    return {[mu, anchor, s, coeffs = std::move(coeffs)](double t, std::size_t order) {
        if (!(t > 0.0)) throw Error("realized expansion evaluated at t <= 0");
        Jet logt = numerics::log(Jet::variable(order, t));
        Jet phase = numerics::exp(logt * cplx(s)) * (cplx(0.0, 1.0) * mu / s);
        Jet sum(order);
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            if (coeffs[k] == cplx{}) continue;
            cplx deg = anchor - static_cast<double>(k) * s;
            sum += numerics::exp(logt * deg + phase) * coeffs[k];
        }
        return sum;
    }};
}

Jet coefficient_jet(const HalfLineOperator& op, int r, double t, std::size_t order) {
    const auto& a = op.coeffs[static_cast<std::size_t>(r - 1)];
    Jet logt = numerics::log(Jet::variable(order, t));
    Jet sum(order);
    for (std::size_t k = 0; k < a.depth(); ++k) {
        if (a.terms[k].is_zero()) continue;
        sum += numerics::exp(logt * cplx(a.degree(k).get_d())) * a.terms[k].to_complex();
    }
    return sum;
}

HalfLineFunction apply_operator(const HalfLineOperator& op, const HalfLineFunction& f) {
    return {[op, f](double t, std::size_t q) {
        const auto m = static_cast<std::size_t>(op.m);
        std::vector<Jet> d;  // d[k] = k-th derivative of f, as a jet
        d.push_back(f(t, m + q));
        for (std::size_t k = 1; k <= m; ++k) d.push_back(differentiate(d.back()));
        Jet out = truncate(d[m], q) * ipow(kD, op.m);
        for (int r = 1; r <= op.m; ++r) {
            const auto k = static_cast<std::size_t>(op.m - r);
            out += coefficient_jet(op, r, t, q) * truncate(d[k], q) * ipow(kD, op.m - r);
        }
        return out;
    }};
}

cplx top_derivative(const HalfLineOperator& op, double t, const std::vector<cplx>& state, cplx h) {
    cplx acc = h;
    for (int r = 1; r <= op.m; ++r) {
        const int k = op.m - r;
        acc -= coefficient_jet(op, r, t, 0).value() * ipow(kD, k) * state[static_cast<std::size_t>(k)];
    }
    return acc / ipow(kD, op.m);
}

struct OdeSolutionTable::Shared {
    HalfLineOperator op;
    std::function<cplx(double)> rhs;
    IntegrationOptions opts;
    std::vector<double> nodes;  // increasing
    std::vector<std::vector<double>> states;

    using State = std::vector<double>;

    void system(const State& x, State& dxdt, double t) const {
        const auto m = static_cast<std::size_t>(op.m);
        std::vector<cplx> s(m);
        for (std::size_t k = 0; k < m; ++k) s[k] = {x[2 * k], x[2 * k + 1]};
        for (std::size_t k = 0; k + 1 < m; ++k) {
            dxdt[2 * k] = x[2 * (k + 1)];
            dxdt[2 * k + 1] = x[2 * (k + 1) + 1];
        }
        cplx top = top_derivative(op, t, s, rhs(t));
        dxdt[2 * (m - 1)] = top.real();
        dxdt[2 * (m - 1) + 1] = top.imag();
    }

    std::size_t advance(State& x, double t0, double t1) const {
        namespace odeint = boost::numeric::odeint;
        if (t0 == t1) return 0;
        auto stepper = odeint::make_controlled<odeint::runge_kutta_fehlberg78<State>>(opts.atol, opts.rtol);
        double dt = (t1 > t0 ? 1.0 : -1.0) * std::min(0.01, std::abs(t1 - t0));
        return odeint::integrate_adaptive(stepper, [this](const State& y, State& dy, double t) { system(y, dy, t); }, x,
                                          t0, t1, dt);
    }
};

OdeSolutionTable::OdeSolutionTable(const HalfLineOperator& op, std::function<cplx(double)> rhs, double t_start,
                                   double t_end, std::vector<cplx> initial_state, const IntegrationOptions& opts) {
    if (static_cast<int>(initial_state.size()) != op.m) throw Error("initial state must hold m values");
    if (!(t_start > 0.0) || !(t_end > 0.0)) throw Error("integration interval must lie in t > 0");
    auto sh = std::make_shared<Shared>();
    sh->op = op;
    sh->rhs = std::move(rhs);
    sh->opts = opts;

    Shared::State x(2 * initial_state.size());
    for (std::size_t k = 0; k < initial_state.size(); ++k) {
        x[2 * k] = initial_state[k].real();
        x[2 * k + 1] = initial_state[k].imag();
    }
    const double dir = t_end >= t_start ? 1.0 : -1.0;
    const auto n = static_cast<std::size_t>(std::ceil(std::abs(t_end - t_start) / opts.node_spacing));
    std::vector<double> ts;
    std::vector<Shared::State> xs;
    ts.push_back(t_start);
    xs.push_back(x);
    for (std::size_t i = 1; i <= n; ++i) {
        double t1 = i == n ? t_end : t_start + dir * static_cast<double>(i) * opts.node_spacing;
        steps_ += sh->advance(x, ts.back(), t1);
        for (double v : x)
            if (!std::isfinite(v)) throw NumericalFailure("ODE integration produced a non-finite state");
        ts.push_back(t1);
        xs.push_back(x);
    }
    if (dir < 0) {
        std::reverse(ts.begin(), ts.end());
        std::reverse(xs.begin(), xs.end());
    }
    sh->nodes = std::move(ts);
    sh->states = std::move(xs);
    t_lo_ = sh->nodes.front();
    t_hi_ = sh->nodes.back();
    impl_ = std::move(sh);
}

std::vector<cplx> OdeSolutionTable::state(double t) const {
    const double slack = 1e-12 * (1.0 + t_hi_);
    if (t < t_lo_ - slack || t > t_hi_ + slack) throw Error("solution table evaluated outside its interval");
    const auto& nodes = impl_->nodes;
    auto it = std::lower_bound(nodes.begin(), nodes.end(), t);
    std::size_t i = static_cast<std::size_t>(it - nodes.begin());
    if (i == nodes.size()) i = nodes.size() - 1;
    if (i > 0 && std::abs(nodes[i - 1] - t) < std::abs(nodes[i] - t)) --i;
    Shared::State x = impl_->states[i];
    impl_->advance(x, nodes[i], t);
    std::vector<cplx> out(x.size() / 2);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = {x[2 * k], x[2 * k + 1]};
    return out;
}

Jet OdeSolutionTable::jet(double t, std::size_t order) const {
    const auto m = static_cast<std::size_t>(impl_->op.m);
    if (order > m) throw Error("solution table only provides derivatives up to the operator order");
    std::vector<cplx> s = state(t);
    Jet j(order);
    double fact = 1.0;
    for (std::size_t k = 0; k <= order; ++k) {
        if (k > 0) fact *= static_cast<double>(k);
        cplx dk = k < m ? s[k] : top_derivative(impl_->op, t, s, impl_->rhs(t));
        j[k] = dk / fact;
    }
    return j;
}

HalfLineFunction OdeSolutionTable::as_function() const {
    OdeSolutionTable self = *this;
    return {[self](double t, std::size_t order) { return self.jet(t, order); }};
}

}  // namespace asym::ode
