#include "asym/wave/amplitude.hpp"

#include "asym/core/errors.hpp"
#include "asym/symbol/polyhom.hpp"

#include <algorithm>
#include <cmath>

namespace asym::wave {

std::vector<cplx> vandermonde_init(const std::vector<cplx>& roots, const std::vector<cplx>& data) {
    const std::size_t m = roots.size();
    if (m == 0 || data.size() != m) throw ConfigError("vandermonde_init: need m roots and m data values");
    double scale = 1.0;
    for (const auto& r : roots) scale = std::max(scale, std::abs(r));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (std::abs(roots[i] - roots[j]) <= 1e-13 * scale)
                throw HypothesisViolation("vandermonde_init: roots collide, the system is singular");
    std::vector<cplx> z = data;
    const std::size_t n = m - 1;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = n; i > k; --i) z[i] -= roots[k] * z[i - 1];
    for (std::size_t k = n; k-- > 0;) {
        for (std::size_t i = k + 1; i <= n; ++i) z[i] /= roots[i] - roots[i - k - 1];
        for (std::size_t i = k; i < n; ++i) z[i] -= z[i + 1];
    }
    return z;
}

double vandermonde_residual(const std::vector<cplx>& roots, const std::vector<cplx>& a, const std::vector<cplx>& data) {
    double worst = 0.0, scale = 1.0;
    for (const auto& d : data) scale = std::max(scale, std::abs(d));
    for (std::size_t p = 0; p < data.size(); ++p) {
        cplx s{};
        for (std::size_t h = 0; h < roots.size(); ++h) s += std::pow(roots[h], static_cast<int>(p)) * a[h];
        worst = std::max(worst, std::abs(s - data[p]));
    }
    return worst / scale;
}

std::pair<cplx, cplx> cauchy_init(cplx mu_plus, cplx mu_minus, cplx b, cplx c) {
    auto a = vandermonde_init({mu_plus, mu_minus}, {b, c});
    return {a[0], a[1]};
}

std::pair<cplx, cplx> cauchy_init(const CharRoots& roots, const Vec& x, const Vec& omega, cplx b, cplx c) {
    return cauchy_init(roots.mu(Branch::plus, 0.0, x, omega), roots.mu(Branch::minus, 0.0, x, omega), b, c);
}

CauchyData green_data() {
    CauchyData d;
    d.mu_bar = Rational(-1);
    d.g1 = {[](const Vec&) { return cplx(0.0, 1.0); }};
    d.label = "green: g0 = 0, g1 = i delta";
    return d;
}

cplx AmplitudeExpansion::alpha(int j, std::size_t dir, double t) const {
    return coeff.at(static_cast<std::size_t>(j)).at(dir)(t);
}

cplx AmplitudeExpansion::eval(int j, double t, const Vec& xi) const {
    const double r = norm(xi);
    if (r == 0.0) throw Error("amplitude evaluated at xi = 0");
    for (std::size_t d = 0; d < directions.size(); ++d) {
        double dist = 0.0;
        for (std::size_t k = 0; k < xi.size(); ++k) dist += std::abs(xi[k] / r - directions[d][k]);
        if (dist < 1e-9) return alpha(j, d, t) * std::pow(r, Rational(mu_bar - j).get_d());
    }
    throw Error("amplitude evaluated off the direction fan");
}

void AmplitudeExpansion::scale_order(int j, cplx s) {
    for (auto& c : coeff.at(static_cast<std::size_t>(j))) c = c.scaled(s);
}

ConormalSolution build_conormal(const HyperbolicOp2& op, const CauchyData& data, int J, const AmplitudeOptions& opts) {
    if (J < 1) throw LevelOverflow("build_conormal: depth must be at least 1");
    if (op.c.depends_on_x())
        throw HypothesisViolation("full-depth transport is implemented for c = c(t) only; use transport_along_ray");
    const CharRoots roots = char_roots(op);
    const double T = op.horizon;
    const SoundSpeed c = op.c;
    const double c0 = c.at(0.0), sc0 = std::sqrt(c0);

    ConormalSolution sol;
    sol.op = op;
    sol.data = data;
    sol.phase_plus = solve_eikonal(op, Branch::plus);
    sol.phase_minus = solve_eikonal(op, Branch::minus);
    const auto dirs = direction_fan(op.n, opts.fan);
    sol.antipode = antipodes(dirs);
    for (Branch b : {Branch::plus, Branch::minus}) {
        auto& a = sol.amplitude(b);
        a.branch = b;
        a.mu_bar = data.mu_bar;
        a.directions = dirs;
        a.coeff.assign(static_cast<std::size_t>(J), std::vector<ChebSeries>(dirs.size()));
    }
    auto comp = [](const std::vector<DirFunction>& v, int j, const Vec& w) {
        return static_cast<std::size_t>(j) < v.size() && v[static_cast<std::size_t>(j)] ? v[static_cast<std::size_t>(j)](w)
                                                                                          : cplx{};
    };
    const Vec origin(static_cast<std::size_t>(op.n), 0.0);
    for (int j = 0; j < J; ++j) {
        for (std::size_t d = 0; d < dirs.size(); ++d) {
            cplx bj = comp(data.g0, j, dirs[d]);
            cplx cj = comp(data.g1, j, dirs[d]);
            std::vector<ChebSeries> prev_dd(2);
            if (j > 0) {
                // D_t a_{j-1} at t = 0 enters the second trace at this degree
                for (Branch b : {Branch::plus, Branch::minus}) {
                    const auto& prev = sol.amplitude(b).coeff[static_cast<std::size_t>(j - 1)][d];
                    ChebSeries d1 = prev.derivative();
                    cj += cplx(0.0, 1.0) * d1(0.0);
                    prev_dd[b == Branch::plus ? 0 : 1] = d1.derivative();
                }
            }
            auto [ap, am] = cauchy_init(roots, origin, dirs[d], bj, cj);
            for (Branch b : {Branch::plus, Branch::minus}) {
                const cplx a0 = b == Branch::plus ? ap : am;
                ChebSeries series;
                if (j == 0) {
                    series = ChebSeries([&](double t) { return a0 * std::sqrt(c0 / c.at(t)); }, 0.0, T, opts.cheb_order);
                } else {
                    const ChebSeries& dd = prev_dd[b == Branch::plus ? 0 : 1];
                    const cplx k(0.0, 0.5 * sign(b));
                    ChebSeries G = ChebSeries([&](double s) { return k * dd(s) / std::sqrt(c.at(s)); }, 0.0, T,
                                              opts.cheb_order)
                                       .integral();
                    series = ChebSeries([&](double t) { return (sc0 * a0 + G(t)) / std::sqrt(c.at(t)); }, 0.0, T,
                                        opts.cheb_order);
                }
                sol.amplitude(b).coeff[static_cast<std::size_t>(j)][d] = std::move(series);
            }
        }
    }
    return sol;
}

ConormalSolution build_green(const HyperbolicOp2& op, int J, const AmplitudeOptions& opts) {
    if (op.n % 2 == 0) throw HypothesisViolation("build_green: the transmission construction needs odd n");
    return build_conormal(op, green_data(), J, opts);
}

double ParityReport::max() const {
    double m = 0.0;
    for (double d : defects) m = std::max(m, d);
    return m;
}

ParityReport check_parity(const ConormalSolution& sol, int J, int time_samples) {
    const Rational& mb = sol.plus.mu_bar;
    if (!is_integer(mb)) throw HypothesisViolation("check_parity: mu_bar is not an integer, the criterion is vacuous");
    if (J > sol.plus.depth()) throw LevelOverflow("check_parity: depth exceeds the stored amplitude orders");
    const long mbar = to_long(mb);
    const std::size_t nd = sol.plus.directions.size();
    std::vector<double> ts;
    for (int i = 0; i < time_samples; ++i) ts.push_back(sol.op.horizon * i / std::max(1, time_samples - 1));

    ParityReport rep;
    std::vector<double> num(static_cast<std::size_t>(J), 0.0), mag(static_cast<std::size_t>(J), 0.0);
    double global = 0.0;
    for (double t : ts) {
        for (int j = 0; j < J; ++j) {
            const double sgn = (mbar - j) % 2 == 0 ? 1.0 : -1.0;
            std::vector<cplx> reflected(nd);
            if (sol.op.n == 1) {
                symbol::PolyhomExpansion<symbol::DirPair<cplx>, Rational> am(mb, Rational(1));
                am.terms.assign(static_cast<std::size_t>(j + 1), {});
                am.terms[static_cast<std::size_t>(j)] = {sol.minus.alpha(j, 0, t), sol.minus.alpha(j, 1, t)};
                auto r = symbol::dir_reflect(am);
                reflected = {r.terms[static_cast<std::size_t>(j)].plus, r.terms[static_cast<std::size_t>(j)].minus};
            } else {
                for (std::size_t d = 0; d < nd; ++d)
                    reflected[d] = sol.minus.alpha(j, static_cast<std::size_t>(sol.antipode[d]), t);
            }
            for (std::size_t d = 0; d < nd; ++d) {
                const cplx ap = sol.plus.alpha(j, d, t), am = sol.minus.alpha(j, d, t);
                num[static_cast<std::size_t>(j)] =
                    std::max(num[static_cast<std::size_t>(j)], std::abs(reflected[d] - sgn * ap));
                mag[static_cast<std::size_t>(j)] =
                    std::max({mag[static_cast<std::size_t>(j)], std::abs(ap), std::abs(am)});
                global = std::max({global, std::abs(ap), std::abs(am)});
            }
        }
    }
    for (int j = 0; j < J; ++j) {
        const double scale = std::max(mag[static_cast<std::size_t>(j)], 1e-12 * global);
        rep.scales.push_back(scale);
        rep.defects.push_back(scale > 0.0 ? num[static_cast<std::size_t>(j)] / scale : 0.0);
    }
    return rep;
}

}  // namespace asym::wave
