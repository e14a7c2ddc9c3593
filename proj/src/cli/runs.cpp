#include "asym/cli/runs.hpp"

#include "asym/circle/parametrix.hpp"
#include "asym/circle/quantize.hpp"
#include "asym/core/errors.hpp"
#include "asym/core/scheme.hpp"
#include "asym/ode/problem.hpp"
#include "asym/wave/evaluate.hpp"

#include <filesystem>
#include <fstream>
#include <random>

namespace asym::cli {

namespace {

using cplx = std::complex<double>;

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / std::max(1, n - 1));
    return v;
}

std::string exact_string(const QComplex& z) {
    if (z.is_real()) return z.re.get_str();
    return z.re.get_str() + (sgn(z.im) < 0 ? "" : "+") + z.im.get_str() + "i";
}

int known_rows(const circle::CircleSymbol& s, int cap) {
    return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(cap), s.known_limit()));
}

void residual_rows(Table& t, const circle::CircleSymbol& residual, int rows) {
    for (int j = 0; j < rows; ++j) {
        const auto c = residual.coeff(static_cast<std::size_t>(j));
        t.add({static_cast<long>(j), Rational(residual.anchor - j).get_d(), yes_no(symbol::coeff_is_zero(c)),
               circle::component_sup(c)});
    }
}

}  // namespace

RunResult run_ode(const RunConfig& cfg) {
    const OdeSpec& s = *cfg.ode;
    const auto op = s.op();
    op.validate();
    const int J = cfg.order;
    RunResult res;
    const auto branches = ode::fundamental_system(op, J);

    Table roots{"roots", {"branch", "mu_re", "mu_im", "exact", "l0_slope", "delta_re", "delta_im"}, {}};
    Table fund{"fundamental", {"branch", "j", "degree_re", "degree_im", "coeff_re", "coeff_im", "exact"}, {}};
    for (std::size_t b = 0; b < branches.size(); ++b) {
        const auto& br = branches[b];
        const auto& num = br.numeric;
        roots.add({static_cast<long>(b), br.root.value.real(), br.root.value.imag(),
                   br.root.exact ? br.root.exact->get_str() : std::string(), br.root.slope, num.delta.real(),
                   num.delta.imag()});
        for (int j = 0; j < J; ++j) {
            const cplx d = num.amplitude.degree(static_cast<std::size_t>(j));
            const cplx c = num.amplitude.coeff(static_cast<std::size_t>(j));
            const std::string ex = br.exact ? exact_string(br.exact->amplitude.coeff(static_cast<std::size_t>(j))) : "";
            fund.add({static_cast<long>(b), static_cast<long>(j), d.real(), d.imag(), c.real(), c.imag(), ex});
        }
    }
    res.tables.push_back(std::move(roots));
    res.tables.push_back(std::move(fund));

    if (J > 0) {
        Table val{"validation", {"branch", "t", "series_re", "series_im", "integrated_re", "integrated_im", "rel_error"}, {}};
        double worst = 0.0;
        for (std::size_t b = 0; b < branches.size(); ++b) {
            const auto rows = ode::validate_against_integration(op, branches[b].numeric, J, s.t_lo, s.t_match, s.samples);
            for (const auto& r : rows) {
                val.add({static_cast<long>(b), r.t, r.series.real(), r.series.imag(), r.integrated.real(),
                         r.integrated.imag(), r.relative_error});
                worst = std::max(worst, r.relative_error);
            }
        }
        res.tables.push_back(std::move(val));
        if (worst > s.max_rel_error)
            res.fail("series branch deviates from integration: max relative error " + std::to_string(worst));
    }
    return res;
}

RunResult run_parametrix(const RunConfig& cfg) {
    const ParametrixSpec& s = *cfg.parametrix;
    const int J = cfg.order;
    if (J < 1) throw ConfigError("order: the parametrix needs J >= 1");
    const auto p = s.symbol();
    RunResult res;
    const auto built = circle::build_parametrix(p, J);

    Table defect{"defect", {"j", "degree", "exact_zero", "sup"}, {}};
    residual_rows(defect, built.residual, known_rows(built.residual, J + 1));
    for (int j = 0; j < J && j < known_rows(built.residual, J + 1); ++j)
        if (!symbol::coeff_is_zero(built.residual.coeff(static_cast<std::size_t>(j))))
            res.fail("recomposition defect nonzero at order -" + std::to_string(j));
    res.tables.push_back(std::move(defect));

    circle::QuantizedAction act;
    act.grid_size = s.grid_size;
    act.freq_cut = s.freq_cut;
    act.excision = symbol::ExcisionCutoff(s.excision);
    act.validate();
    const auto probe = circle::remainder_probe(p, built.q, J, s.frequencies, act);
    Table decay{"decay", {"k", "error"}, {}};
    for (const auto& r : probe.rows) decay.add({r.k, r.error});
    res.tables.push_back(std::move(decay));

    const auto ell = circle::is_elliptic(p);
    Table summary{"summary", {"J", "achieved_level", "slope", "elliptic_margin"}, {}};
    summary.add({static_cast<long>(J), static_cast<long>(built.achieved_level), probe.slope, ell.margin});
    res.tables.push_back(std::move(summary));
    if (s.slope_max && probe.slope > *s.slope_max)
        res.fail("remainder slope " + std::to_string(probe.slope) + " above the required " + std::to_string(*s.slope_max));
    return res;
}

namespace {

wave::CauchyData cauchy_from_spec(const WaveDataSpec& d) {
    if (d.green) return wave::green_data();
    wave::CauchyData c;
    c.mu_bar = d.mu_bar;
    c.label = "config";
    auto fn = [](std::pair<cplx, cplx> v) {
        return wave::DirFunction([v](const wave::Vec& w) { return w[0] > 0 ? v.first : v.second; });
    };
    for (const auto& v : d.g0) c.g0.push_back(fn(v));
    for (const auto& v : d.g1) c.g1.push_back(fn(v));
    return c;
}

void amplitude_table(RunResult& res, const wave::ConormalSolution& sol, const std::vector<double>& times) {
    Table t{"amplitude", {"branch", "j", "direction", "omega1", "t", "re", "im"}, {}};
    for (wave::Branch b : {wave::Branch::plus, wave::Branch::minus}) {
        const auto& A = sol.amplitude(b);
        for (int j = 0; j < A.depth(); ++j)
            for (std::size_t d = 0; d < A.directions.size(); ++d)
                for (double tt : times) {
                    const cplx a = A.alpha(j, d, tt);
                    t.add({static_cast<long>(wave::sign(b)), static_cast<long>(j), static_cast<long>(d), A.directions[d][0],
                           tt, a.real(), a.imag()});
                }
    }
    res.tables.push_back(std::move(t));
}

}  // namespace

RunResult run_wave(const RunConfig& cfg) {
    const WaveSpec& s = *cfg.wave;
    if (s.n % 2 == 0) throw HypothesisViolation("even dimension n = " + std::to_string(s.n) + ": the transmission construction needs odd n");
    const auto op = s.op();
    const int J = cfg.order;
    RunResult res;
    const auto times = linspace(0.0, op.horizon, s.time_points);
    const auto n = static_cast<std::size_t>(op.n);

    Table rays{"rays", {"branch", "x0", "xi0", "t", "x1", "xi1", "tau", "phase", "tau_residual"}, {}};
    for (wave::Branch b : {wave::Branch::plus, wave::Branch::minus})
        for (double x0 : s.ray_seeds)
            for (double xi0 : {1.0, -1.0}) {
                wave::Vec X(n, 0.0), XI(n, 0.0);
                X[0] = x0;
                XI[0] = xi0;
                const auto ray = wave::trace_bicharacteristic(op, X, XI, b, times);
                for (const auto& smp : ray.samples)
                    rays.add({static_cast<long>(wave::sign(b)), x0, xi0, smp.t, smp.x[0], smp.xi[0], smp.tau, smp.phase,
                              ray.tau_residual});
            }
    res.tables.push_back(std::move(rays));

    Table phases{"phase", {"branch", "t", "x1", "xi1", "phase", "closed_form", "eikonal_residual"}, {}};
    const double h = 1e-3;
    for (wave::Branch b : {wave::Branch::plus, wave::Branch::minus}) {
        const auto phi = wave::solve_eikonal(op, b);
        for (double t : times)
            for (double x0 : s.ray_seeds)
                for (double xi0 : {1.0, -1.0}) {
                    wave::Vec X(n, 0.0), XI(n, 0.0);
                    X[0] = x0;
                    XI[0] = xi0;
                    Cell resid = std::string();
                    if (t >= 2 * h && t <= op.horizon - 2 * h) resid = wave::eikonal_residual(op, phi, t, X, XI, h);
                    phases.add({static_cast<long>(wave::sign(b)), t, x0, xi0, phi(t, X, XI), yes_no(phi.closed_form), resid});
                }
    }
    res.tables.push_back(std::move(phases));

    const auto cone = wave::light_cone(op, op.horizon, s.cone_fan);
    Table ct{"cone", {"t", "direction", "omega1", "x1", "radius", "hypersurface"}, {}};
    for (std::size_t i = 0; i < cone.points.size(); ++i)
        ct.add({cone.t, static_cast<long>(i), cone.directions[i][0], cone.points[i][0], cone.radii[i], yes_no(cone.hypersurface)});
    res.tables.push_back(std::move(ct));

    if (op.c.depends_on_x()) {
        // only the order-0 transport along rays is available here
        Table tr{"ray_transport", {"branch", "x0", "t", "x", "re", "im"}, {}};
        if (op.n == 1)
            for (wave::Branch b : {wave::Branch::plus, wave::Branch::minus})
                for (double x0 : s.ray_seeds)
                    for (const auto& smp : wave::transport_along_ray(op, b, x0, 1.0, 1.0, times))
                        tr.add({static_cast<long>(wave::sign(b)), x0, smp.t, smp.x, smp.a.real(), smp.a.imag()});
        res.tables.push_back(std::move(tr));
        res.diagnostics.push_back("x-dependent speed: amplitudes beyond order 0, parity and jump are not computed");
        return res;
    }
    if (!s.data.green && op.n != 1) throw ConfigError("problem.data: explicit Cauchy data is supported for n = 1 only");
    if (J < 1) throw ConfigError("order: the conormal construction needs J >= 1");

    const auto sol = wave::build_conormal(op, cauchy_from_spec(s.data), J, {40, s.amplitude_fan});
    amplitude_table(res, sol, times);

    if (is_integer(sol.plus.mu_bar)) {
        const auto rep = wave::check_parity(sol, J);
        Table pt{"parity", {"j", "defect", "scale"}, {}};
        for (std::size_t j = 0; j < rep.defects.size(); ++j) pt.add({static_cast<long>(j), rep.defects[j], rep.scales[j]});
        res.tables.push_back(std::move(pt));
        if (rep.max() > s.parity_tol) res.fail("parity defect " + std::to_string(rep.max()) + " exceeds " + std::to_string(s.parity_tol));
    } else {
        res.diagnostics.push_back("non-integer mu_bar: parity criterion skipped");
    }

    if (op.n == 1) {
        wave::JumpConfig jc;
        jc.eps0 = s.jump_eps0;
        jc.levels = s.jump_levels;
        const double t = s.jump_time.value_or(op.horizon);
        wave::JumpEstimate est;
        try {
            est = wave::jump_across_cone(sol, t, jc);
        } catch (const NumericalFailure& e) {
            res.fail(std::string("numerical failure: ") + e.what());
            return res;
        }
        Cell expected = std::string();
        if (s.data.green) expected = 0.5 / std::sqrt(op.c.at(0.0) * op.c.at(t));
        Table jt{"jump", {"t", "cone", "jump_re", "jump_im", "abs", "error", "dalembert"}, {}};
        jt.add({est.t, est.cone, est.jump.real(), est.jump.imag(), std::abs(est.jump), est.error, expected});
        res.tables.push_back(std::move(jt));
        if (s.data.green && std::abs(std::abs(est.jump) - std::get<double>(expected)) > 1e-3)
            res.fail("cone jump " + std::to_string(std::abs(est.jump)) + " differs from the d'Alembert value");
    }

    if (s.parity_sweep > 0) {
        if (op.n != 1) throw ConfigError("problem.parity_sweep: available for n = 1");
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> U(-1.0, 1.0);
        std::uniform_int_distribution<int> Mu(-3, 1);
        Table sw{"parity_sweep", {"case", "mu_bar", "max_defect"}, {}};
        const int depth = std::max(J, 1);
        for (int i = 0; i < s.parity_sweep; ++i) {
            WaveDataSpec d;
            d.green = false;
            const long mb = Mu(rng);
            d.mu_bar = Rational(mb);
            for (int j = 0; j < depth; ++j) {
                const cplx z0(U(rng), U(rng)), z1(U(rng), U(rng));
                const bool even0 = (mb - j) % 2 == 0, even1 = (mb + 1 - j) % 2 == 0;
                d.g0.emplace_back(z0, even0 ? z0 : -z0);
                d.g1.emplace_back(z1, even1 ? z1 : -z1);
            }
            const auto rep = wave::check_parity(wave::build_conormal(op, cauchy_from_spec(d), depth), depth);
            sw.add({static_cast<long>(i), mb, rep.max()});
            if (rep.max() > s.parity_tol) res.fail("parity sweep case " + std::to_string(i) + " exceeds the tolerance");
        }
        res.tables.push_back(std::move(sw));
    }
    return res;
}

namespace {

template <class K>
void ode_demo(RunResult& res, const ode::HalfLineOperator& op, const K& mu, int J) {
    ode::OdeProblem<K> prob(op, mu);
    const auto order = core::solve_to_order(prob, prob.zero_target(), J, prob.seed());
    const auto direct = ode::build_fundamental(op, mu, std::max(J, 1));
    Table terms{"terms", {"j", "coeff_re", "coeff_im", "direct_re", "direct_im", "exact_match"}, {}};
    for (int j = 0; j < J; ++j) {
        const K a = prob.symbol_of(j, order.terms[static_cast<std::size_t>(j)].element);
        const K b = direct.amplitude.coeff(static_cast<std::size_t>(j));
        const cplx ac = ode::to_cplx(a), bc = ode::to_cplx(b);
        const bool same = a == b;
        terms.add({static_cast<long>(j), ac.real(), ac.imag(), bc.real(), bc.imag(), yes_no(same)});
        if (!same) res.fail("engine term " + std::to_string(j) + " differs from the direct recursion");
    }
    res.tables.push_back(std::move(terms));
    const auto rows = core::descent_table(prob, prob.zero_target(), order.terms);
    Table rt{"residual", {"level", "residual_norm"}, {}};
    for (std::size_t l = 0; l < rows.size(); ++l) rt.add({static_cast<long>(l), rows[l]});
    res.tables.push_back(std::move(rt));
    for (std::size_t l = 2; l < rows.size(); ++l)
        if (!(rows[l] < rows[l - 1])) res.fail("residual norm not decreasing at level " + std::to_string(l));
}

}  // namespace

RunResult run_scheme_demo(const RunConfig& cfg) {
    const SchemeSpec& s = *cfg.scheme;
    const int J = cfg.order;
    RunResult res;
    if (s.ode) {
        const auto op = s.ode->op();
        op.validate();
        const auto cd = ode::char_data(op);
        if (s.branch >= static_cast<int>(cd.roots.size())) throw ConfigError("problem.branch: no such root");
        const auto& root = cd.roots[static_cast<std::size_t>(s.branch)];
        if (!root.simple) throw HypothesisViolation("the chosen root of l0 is not simple");
        if (root.exact)
            ode_demo(res, op, QComplex(*root.exact), J);
        else
            ode_demo(res, op, root.value, J);
        return res;
    }
    const auto p = s.circle->symbol();
    circle::CircleProblem prob(p, std::max(J, 1) + 1);
    const auto order = core::solve_to_order(prob, circle::identity_symbol(), J);
    Table rt{"residual", {"j", "degree", "exact_zero", "sup"}, {}};
    residual_rows(rt, order.residual, known_rows(order.residual, J + 1));
    for (int j = 0; j < J && j < known_rows(order.residual, J + 1); ++j)
        if (!symbol::coeff_is_zero(order.residual.coeff(static_cast<std::size_t>(j))))
            res.fail("residual component at order -" + std::to_string(j) + " is not exactly zero");
    res.tables.push_back(std::move(rt));
    Table lv{"levels", {"level", "target_norm"}, {}};
    for (int l = 0; l <= J; ++l) lv.add({static_cast<long>(l), prob.target_level_norm(l, order.residual)});
    res.tables.push_back(std::move(lv));
    return res;
}

RunResult run(const RunConfig& cfg) {
    RunResult res;
    try {
        switch (cfg.subcommand) {
            case Subcommand::ode: return run_ode(cfg);
            case Subcommand::parametrix: return run_parametrix(cfg);
            case Subcommand::wave: return run_wave(cfg);
            case Subcommand::scheme_demo: return run_scheme_demo(cfg);
        }
    } catch (const ConfigError& e) {
        res.exit_code = kConfigError;
        res.diagnostics.push_back(std::string("config error: ") + e.what());
    } catch (const CausticError& e) {
        res.exit_code = kHypothesisViolation;
        res.failing_time = e.first_failing_time;
        res.diagnostics.push_back(std::string("caustic: ") + e.what() + " (first failing time " +
                                  std::to_string(e.first_failing_time) + ")");
    } catch (const HypothesisViolation& e) {
        res.exit_code = kHypothesisViolation;
        res.diagnostics.push_back(std::string("hypothesis violation: ") + e.what());
    } catch (const ParseError& e) {
        res.exit_code = kConfigError;
        res.diagnostics.push_back(std::string("config error: ") + e.what());
    } catch (const Error& e) {
        res.exit_code = kNumericalFailure;
        res.diagnostics.push_back(std::string("numerical failure: ") + e.what());
    }
    return res;
}

std::vector<std::string> write_outputs(const RunResult& res, const RunConfig& cfg) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + cfg.out_dir + "'");
    std::vector<std::string> paths;
    for (const auto& t : res.tables) {
        const std::string ext = cfg.format == Format::csv ? ".csv" : ".json";
        const fs::path path = fs::path(cfg.out_dir) / (to_string(cfg.subcommand) + "_" + t.name + ext);
        std::ofstream out(path, std::ios::binary);
        if (!out) throw ConfigError("cannot write '" + path.string() + "'");
        if (cfg.format == Format::csv)
            out << t.to_csv();
        else
            out << t.to_json().dump(2) << '\n';
        paths.push_back(path.string());
    }
    return paths;
}

int run_from_file(Subcommand sub, const std::string& config_path, const Overrides& ov, std::ostream& log) {
    RunConfig cfg;
    try {
        cfg = parse_config(load_json_file(config_path), sub);
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << '\n';
        return kConfigError;
    }
    if (ov.order) cfg.order = *ov.order;
    if (ov.out_dir) cfg.out_dir = *ov.out_dir;
    if (ov.format) cfg.format = *ov.format;
    if (ov.seed) cfg.seed = *ov.seed;
    if (cfg.order < 0) {
        log << "config error: order must be nonnegative\n";
        return kConfigError;
    }
    const RunResult res = run(cfg);
    for (const auto& d : res.diagnostics) log << d << '\n';
    try {
        for (const auto& p : write_outputs(res, cfg)) log << "wrote " << p << '\n';
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << '\n';
        return kConfigError;
    }
    return res.exit_code;
}

}  // namespace asym::cli
