#include "asym/cli/config.hpp"

#include "asym/core/errors.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

namespace asym::cli {

namespace {

std::string at(const std::string& where, const std::string& key) { return where.empty() ? key : where + "." + key; }

void check_keys(const ojson& j, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [k, v] : j.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || k == a;
        if (!ok) throw ConfigError(at(where, k) + ": unknown field");
    }
}

const ojson& need(const ojson& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw ConfigError(at(where, key) + ": missing");
    return j.at(key);
}

template <class T>
T value(const ojson& j, const std::string& where) {
    try {
        return j.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(where + ": wrong type (" + j.dump() + ")");
    }
}

template <class T>
void opt(const ojson& j, const char* key, T& out, const std::string& where) {
    if (j.contains(key)) out = value<T>(j.at(key), at(where, key));
}

Rational rational(const ojson& j, const std::string& where) {
    try {
        if (j.is_string()) return parse_rational(j.get<std::string>());
        if (j.is_number_integer()) return Rational(j.get<long>());
    } catch (const ParseError& e) {
        throw ConfigError(where + ": " + e.what());
    }
    throw ConfigError(where + ": expected a rational \"p/q\" or an integer, got " + j.dump());
}

ojson rational_json(const Rational& r) { return r.get_str(); }

QComplex qcomplex(const ojson& j, const std::string& where) {
    if (j.is_array()) {
        if (j.size() != 2) throw ConfigError(where + ": complex value must be [re, im]");
        return {rational(j[0], where + "[0]"), rational(j[1], where + "[1]")};
    }
    return QComplex(rational(j, where));
}

ojson qcomplex_json(const QComplex& z) {
    if (z.is_real()) return rational_json(z.re);
    return ojson::array({rational_json(z.re), rational_json(z.im)});
}

std::complex<double> dcomplex(const ojson& j, const std::string& where) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw ConfigError(where + ": expected a number or [re, im]");
}

ojson dcomplex_json(std::complex<double> z) { return ojson::array({z.real(), z.imag()}); }

circle::TrigPoly trig(const ojson& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where + ": trig polynomial must be a list of [mode, coefficient]");
    circle::TrigPoly p;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string w = where + "[" + std::to_string(i) + "]";
        if (!j[i].is_array() || j[i].size() != 2 || !j[i][0].is_number_integer())
            throw ConfigError(w + ": expected [mode, coefficient]");
        p += circle::TrigPoly::mode(j[i][0].get<long>(), qcomplex(j[i][1], w + "[1]"));
    }
    return p;
}

ojson trig_json(const circle::TrigPoly& p) {
    ojson a = ojson::array();
    for (const auto& [k, c] : p.coeffs()) a.push_back(ojson::array({k, qcomplex_json(c)}));
    return a;
}

void require(bool ok, const std::string& where, const std::string& msg) {
    if (!ok) throw ConfigError(where + ": " + msg);
}

}  // namespace

std::string to_string(Subcommand s) {
    switch (s) {
        case Subcommand::ode: return "ode";
        case Subcommand::parametrix: return "parametrix";
        case Subcommand::wave: return "wave";
        case Subcommand::scheme_demo: return "scheme-demo";
    }
    return "?";
}

Subcommand parse_subcommand(const std::string& s) {
    if (s == "ode") return Subcommand::ode;
    if (s == "parametrix") return Subcommand::parametrix;
    if (s == "wave") return Subcommand::wave;
    if (s == "scheme-demo") return Subcommand::scheme_demo;
    throw ConfigError("unknown subcommand '" + s + "'");
}

ode::HalfLineOperator OdeSpec::op() const {
    ode::HalfLineOperator o;
    o.m = m;
    o.lstar = lstar;
    for (int r = 1; r <= m; ++r) {
        ode::CoeffExpansion a(Rational(lstar * r), Rational(lstar + 1));
        if (static_cast<std::size_t>(r - 1) < coeffs.size()) a.terms = coeffs[static_cast<std::size_t>(r - 1)];
        o.coeffs.push_back(a.trim());
    }
    return o;
}

circle::CircleSymbol ParametrixSpec::symbol() const { return circle::make_symbol(order, components); }

wave::HyperbolicOp2 WaveSpec::op() const {
    wave::HyperbolicOp2 o;
    o.n = n;
    o.variant = variant;
    o.c.time_coeffs = time_coeffs;
    o.c.space_coeffs = space_coeffs;
    o.horizon = horizon;
    o.validate();
    return o;
}

OdeSpec parse_ode(const ojson& j, const std::string& where) {
    check_keys(j, {"operator", "validation"}, where);
    OdeSpec s;
    const std::string wo = at(where, "operator");
    const ojson& o = need(j, "operator", where);
    check_keys(o, {"m", "lstar", "coeffs"}, wo);
    s.m = value<int>(need(o, "m", wo), at(wo, "m"));
    require(s.m >= 1, at(wo, "m"), "order must be at least 1");
    s.lstar = rational(need(o, "lstar", wo), at(wo, "lstar"));
    require(s.lstar > -1, at(wo, "lstar"), "l* must exceed -1");
    if (o.contains("coeffs")) {
        const ojson& c = o.at("coeffs");
        require(c.is_array() && static_cast<int>(c.size()) <= s.m, at(wo, "coeffs"), "expected at most m coefficient lists");
        for (std::size_t r = 0; r < c.size(); ++r) {
            const std::string wr = at(wo, "coeffs") + "[" + std::to_string(r) + "]";
            require(c[r].is_array(), wr, "expected a list of a_{r,k}");
            std::vector<QComplex> row;
            for (std::size_t k = 0; k < c[r].size(); ++k) row.push_back(qcomplex(c[r][k], wr + "[" + std::to_string(k) + "]"));
            s.coeffs.push_back(std::move(row));
        }
    }
    if (j.contains("validation")) {
        const std::string wv = at(where, "validation");
        const ojson& v = j.at("validation");
        check_keys(v, {"t_lo", "t_match", "samples", "max_rel_error"}, wv);
        opt(v, "t_lo", s.t_lo, wv);
        opt(v, "t_match", s.t_match, wv);
        opt(v, "samples", s.samples, wv);
        opt(v, "max_rel_error", s.max_rel_error, wv);
        require(s.t_lo > 0 && s.t_match > s.t_lo, wv, "need 0 < t_lo < t_match");
        require(s.samples >= 2, at(wv, "samples"), "need at least 2 samples");
    }
    return s;
}

ojson to_json(const OdeSpec& s) {
    ojson coeffs = ojson::array();
    for (const auto& row : s.coeffs) {
        ojson r = ojson::array();
        for (const auto& c : row) r.push_back(qcomplex_json(c));
        coeffs.push_back(r);
    }
    return {{"operator", {{"m", s.m}, {"lstar", rational_json(s.lstar)}, {"coeffs", coeffs}}},
            {"validation",
             {{"t_lo", s.t_lo}, {"t_match", s.t_match}, {"samples", s.samples}, {"max_rel_error", s.max_rel_error}}}};
}

ParametrixSpec parse_parametrix(const ojson& j, const std::string& where) {
    check_keys(j, {"symbol", "probe", "slope_max"}, where);
    ParametrixSpec s;
    const std::string ws = at(where, "symbol");
    const ojson& sym = need(j, "symbol", where);
    check_keys(sym, {"order", "components"}, ws);
    s.order = rational(need(sym, "order", ws), at(ws, "order"));
    const ojson& comps = need(sym, "components", ws);
    require(comps.is_array() && !comps.empty(), at(ws, "components"), "expected a nonempty list");
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const std::string wc = at(ws, "components") + "[" + std::to_string(i) + "]";
        check_keys(comps[i], {"plus", "minus"}, wc);
        s.components.push_back({trig(need(comps[i], "plus", wc), at(wc, "plus")), trig(need(comps[i], "minus", wc), at(wc, "minus"))});
    }
    if (j.contains("probe")) {
        const std::string wp = at(where, "probe");
        const ojson& p = j.at("probe");
        check_keys(p, {"frequencies", "grid_size", "freq_cut", "excision"}, wp);
        opt(p, "frequencies", s.frequencies, wp);
        opt(p, "grid_size", s.grid_size, wp);
        opt(p, "freq_cut", s.freq_cut, wp);
        opt(p, "excision", s.excision, wp);
        require(s.frequencies.size() >= 2, at(wp, "frequencies"), "need at least two probe frequencies");
    }
    if (j.contains("slope_max")) s.slope_max = value<double>(j.at("slope_max"), at(where, "slope_max"));
    return s;
}

ojson to_json(const ParametrixSpec& s) {
    ojson comps = ojson::array();
    for (const auto& c : s.components) comps.push_back({{"plus", trig_json(c.plus)}, {"minus", trig_json(c.minus)}});
    ojson out = {{"symbol", {{"order", rational_json(s.order)}, {"components", comps}}},
                 {"probe",
                  {{"frequencies", s.frequencies},
                   {"grid_size", s.grid_size},
                   {"freq_cut", s.freq_cut},
                   {"excision", s.excision}}}};
    if (s.slope_max) out["slope_max"] = *s.slope_max;
    return out;
}

WaveSpec parse_wave(const ojson& j, const std::string& where) {
    check_keys(j,
               {"n", "variant", "c", "T", "time_points", "ray_seeds", "cone_fan", "amplitude_fan", "data", "jump",
                "parity_tol", "parity_sweep"},
               where);
    WaveSpec s;
    opt(j, "n", s.n, where);
    require(s.n >= 1 && s.n <= 3, at(where, "n"), "dimension must be 1, 2 or 3");
    if (j.contains("variant")) s.variant = wave::parse_variant(value<std::string>(j.at("variant"), at(where, "variant")));
    if (j.contains("c")) {
        const std::string wc = at(where, "c");
        check_keys(j.at("c"), {"time", "space"}, wc);
        opt(j.at("c"), "time", s.time_coeffs, wc);
        opt(j.at("c"), "space", s.space_coeffs, wc);
    }
    opt(j, "T", s.horizon, where);
    opt(j, "time_points", s.time_points, where);
    opt(j, "ray_seeds", s.ray_seeds, where);
    opt(j, "cone_fan", s.cone_fan, where);
    opt(j, "amplitude_fan", s.amplitude_fan, where);
    opt(j, "parity_tol", s.parity_tol, where);
    opt(j, "parity_sweep", s.parity_sweep, where);
    require(s.time_points >= 2, at(where, "time_points"), "need at least 2 time points");
    require(s.parity_sweep >= 0, at(where, "parity_sweep"), "must be nonnegative");
    if (j.contains("data")) {
        const std::string wd = at(where, "data");
        const ojson& d = j.at("data");
        if (d.is_string()) {
            require(d.get<std::string>() == "green", wd, "the only named data set is \"green\"");
        } else {
            check_keys(d, {"mu_bar", "g0", "g1"}, wd);
            s.data.green = false;
            s.data.mu_bar = rational(need(d, "mu_bar", wd), at(wd, "mu_bar"));
            for (const char* key : {"g0", "g1"}) {
                if (!d.contains(key)) continue;
                auto& dst = std::string(key) == "g0" ? s.data.g0 : s.data.g1;
                const ojson& list = d.at(key);
                require(list.is_array(), at(wd, key), "expected a list of [value at +1, value at -1]");
                for (std::size_t i = 0; i < list.size(); ++i) {
                    const std::string wi = at(wd, key) + "[" + std::to_string(i) + "]";
                    require(list[i].is_array() && list[i].size() == 2, wi, "expected [value at +1, value at -1]");
                    dst.emplace_back(dcomplex(list[i][0], wi + "[0]"), dcomplex(list[i][1], wi + "[1]"));
                }
            }
        }
    }
    if (j.contains("jump")) {
        const std::string wj = at(where, "jump");
        const ojson& jj = j.at("jump");
        check_keys(jj, {"t", "eps0", "levels"}, wj);
        if (jj.contains("t")) s.jump_time = value<double>(jj.at("t"), at(wj, "t"));
        opt(jj, "eps0", s.jump_eps0, wj);
        opt(jj, "levels", s.jump_levels, wj);
    }
    return s;
}

ojson to_json(const WaveSpec& s) {
    ojson out = {{"n", s.n},
                 {"variant", wave::to_string(s.variant)},
                 {"c", {{"time", s.time_coeffs}, {"space", s.space_coeffs}}},
                 {"T", s.horizon},
                 {"time_points", s.time_points},
                 {"ray_seeds", s.ray_seeds},
                 {"cone_fan", s.cone_fan},
                 {"amplitude_fan", s.amplitude_fan}};
    if (s.data.green) {
        out["data"] = "green";
    } else {
        ojson g0 = ojson::array(), g1 = ojson::array();
        for (const auto& [p, m] : s.data.g0) g0.push_back(ojson::array({dcomplex_json(p), dcomplex_json(m)}));
        for (const auto& [p, m] : s.data.g1) g1.push_back(ojson::array({dcomplex_json(p), dcomplex_json(m)}));
        out["data"] = {{"mu_bar", rational_json(s.data.mu_bar)}, {"g0", g0}, {"g1", g1}};
    }
    ojson jump = {{"eps0", s.jump_eps0}, {"levels", s.jump_levels}};
    if (s.jump_time) jump["t"] = *s.jump_time;
    out["jump"] = jump;
    out["parity_tol"] = s.parity_tol;
    out["parity_sweep"] = s.parity_sweep;
    return out;
}

SchemeSpec parse_scheme(const ojson& j, const std::string& where) {
    check_keys(j, {"instantiation", "operator", "validation", "branch", "symbol", "probe", "slope_max"}, where);
    SchemeSpec s;
    opt(j, "instantiation", s.instantiation, where);
    if (s.instantiation == "ode") {
        ojson sub = ojson::object();
        for (const char* k : {"operator", "validation"})
            if (j.contains(k)) sub[k] = j.at(k);
        s.ode = parse_ode(sub, where);
        opt(j, "branch", s.branch, where);
        require(s.branch >= 0 && s.branch < s.ode->m, at(where, "branch"), "root index out of range");
    } else if (s.instantiation == "circle") {
        ojson sub = ojson::object();
        for (const char* k : {"symbol", "probe", "slope_max"})
            if (j.contains(k)) sub[k] = j.at(k);
        s.circle = parse_parametrix(sub, where);
    } else {
        throw ConfigError(at(where, "instantiation") + ": expected \"ode\" or \"circle\"");
    }
    return s;
}

ojson to_json(const SchemeSpec& s) {
    ojson out = {{"instantiation", s.instantiation}};
    const ojson body = s.ode ? to_json(*s.ode) : to_json(*s.circle);
    for (const auto& [k, v] : body.items()) out[k] = v;
    if (s.ode) out["branch"] = s.branch;
    return out;
}

ojson parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ConfigError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": JSON syntax error");
    }
}

ojson load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path);
}

RunConfig parse_config(const ojson& j, Subcommand sub) {
    check_keys(j, {"subcommand", "order", "seed", "format", "out", "problem"}, "");
    RunConfig c;
    c.subcommand = sub;
    if (j.contains("subcommand")) {
        const auto named = parse_subcommand(value<std::string>(j.at("subcommand"), "subcommand"));
        require(named == sub, "subcommand", "config is for '" + to_string(named) + "', not '" + to_string(sub) + "'");
    }
    opt(j, "order", c.order, "");
    require(c.order >= 0, "order", "must be nonnegative");
    if (j.contains("seed")) c.seed = value<std::uint64_t>(j.at("seed"), "seed");
    if (j.contains("format")) {
        const auto f = value<std::string>(j.at("format"), "format");
        require(f == "csv" || f == "json", "format", "expected csv or json");
        c.format = f == "csv" ? Format::csv : Format::json;
    }
    opt(j, "out", c.out_dir, "");
    const ojson& p = need(j, "problem", "");
    switch (sub) {
        case Subcommand::ode: c.ode = parse_ode(p, "problem"); break;
        case Subcommand::parametrix: c.parametrix = parse_parametrix(p, "problem"); break;
        case Subcommand::wave: c.wave = parse_wave(p, "problem"); break;
        case Subcommand::scheme_demo: c.scheme = parse_scheme(p, "problem"); break;
    }
    return c;
}

ojson to_json(const RunConfig& c) {
    ojson out = {{"subcommand", to_string(c.subcommand)},
                 {"order", c.order},
                 {"seed", c.seed},
                 {"format", c.format == Format::csv ? "csv" : "json"},
                 {"out", c.out_dir}};
    if (c.ode) out["problem"] = to_json(*c.ode);
    if (c.parametrix) out["problem"] = to_json(*c.parametrix);
    if (c.wave) out["problem"] = to_json(*c.wave);
    if (c.scheme) out["problem"] = to_json(*c.scheme);
    return out;
}

}  // namespace asym::cli
