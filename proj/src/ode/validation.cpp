#include "asym/ode/problem.hpp"

#include <Eigen/Dense>

namespace asym::ode {

std::vector<cplx> series_state(const HalfLineOperator& op, const FundSolution<cplx>& sol, int J, double t) {
    std::vector<cplx> coeffs(sol.amplitude.terms.begin(),
                             sol.amplitude.terms.begin() + std::min<long>(J, static_cast<long>(sol.amplitude.depth())));
    HalfLineFunction f = realize_phased(sol.mu, sol.delta, op.step().get_d(), std::move(coeffs));
    Jet j = f(t, static_cast<std::size_t>(op.m - 1));
    std::vector<cplx> out;
    for (int k = 0; k < op.m; ++k) out.push_back(j.derivative(static_cast<std::size_t>(k)));
    return out;
}

std::vector<ValidationRow> validate_against_integration(const HalfLineOperator& op, const FundSolution<cplx>& sol,
                                                        int J, double t_lo, double t_match, int samples,
                                                        const IntegrationOptions& opts) {
    OdeSolutionTable table(
        op, [](double) { return cplx{}; }, t_match, t_lo, series_state(op, sol, J, t_match), opts);
    std::vector<ValidationRow> rows;
    for (int i = 0; i < samples; ++i) {
        double t = t_lo + (t_match - t_lo) * i / std::max(1, samples - 1);
        cplx s = series_state(op, sol, J, t)[0];
        cplx v = table.state(t)[0];
        rows.push_back({t, s, v, std::abs(s - v) / std::abs(v)});
    }
    return rows;
}

cplx series_residual(const HalfLineOperator& op, const FundSolution<cplx>& sol, int J, double t) {
    Amplitude<cplx> finite = sol.amplitude.truncated(static_cast<std::size_t>(J));
    finite.tail = Tail::zero;
    Amplitude<cplx> g = apply_conjugated(op, sol.mu, finite);
    const double s = op.step().get_d();
    const cplx phase = std::exp(cplx(0, 1) * sol.mu * std::pow(t, s) / s);
    cplx sum{};
    for (std::size_t k = 0; k < g.depth(); ++k) sum += g.terms[k] * std::exp(g.degree(k) * std::log(t));
    return phase * sum;
}

cplx wronskian(const HalfLineOperator& op, const std::vector<FundSolution<cplx>>& sols, int J, double t) {
    const auto m = static_cast<Eigen::Index>(op.m);
    if (static_cast<Eigen::Index>(sols.size()) != m) throw Error("wronskian needs m solutions");
    Eigen::MatrixXcd W(m, m);
    for (Eigen::Index h = 0; h < m; ++h) {
        auto s = series_state(op, sols[static_cast<std::size_t>(h)], J, t);
        for (Eigen::Index k = 0; k < m; ++k) W(k, h) = s[static_cast<std::size_t>(k)];
    }
    return W.determinant();
}

}  // namespace asym::ode
