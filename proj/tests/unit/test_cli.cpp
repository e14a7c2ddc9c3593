#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "asym/cli/runs.hpp"
#include "asym/core/errors.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace asym;
using namespace asym::cli;

namespace {

const std::string kConfigs = ASYM_CONFIG_DIR;

RunConfig load(const std::string& name) {
    const auto j = load_json_file(kConfigs + "/" + name + ".json");
    return parse_config(j, parse_subcommand(j.at("subcommand").get<std::string>()));
}

const Table& table(const RunResult& r, const std::string& name) {
    for (const auto& t : r.tables)
        if (t.name == name) return t;
    throw std::runtime_error("no table " + name);
}

std::string all_csv(const RunResult& r) {
    std::string s;
    for (const auto& t : r.tables) s += t.name + "\n" + t.to_csv();
    return s;
}

std::filesystem::path scratch(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("asym_cli_test_" + name);
    std::filesystem::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("config round trip is idempotent for every shipped config") {
    for (const auto& entry : std::filesystem::directory_iterator(kConfigs)) {
        const std::string name = entry.path().stem().string();
        if (name == "bad_lstar") continue;
        INFO(name);
        const RunConfig c = load(name);
        const ojson once = to_json(c);
        const ojson twice = to_json(parse_config(once, c.subcommand));
        CHECK(once == twice);
        CHECK(once.dump() == twice.dump());
    }
}

TEST_CASE("config diagnostics") {
    CHECK_THROWS_WITH_AS(load("bad_lstar"), doctest::Contains("problem.operator.lstar"), ConfigError);
    try {
        parse_json_text("{\n  \"order\": 3,\n  \"problem\": {,}\n}", "inline");
        FAIL("expected a syntax error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("inline:3:") == 0);
    }
    auto j = to_json(load("airy"));
    j["problem"]["operator"]["bogus"] = 1;
    CHECK_THROWS_WITH_AS(parse_config(j, Subcommand::ode), doctest::Contains("problem.operator.bogus"), ConfigError);
    CHECK_THROWS_AS(parse_config(to_json(load("airy")), Subcommand::wave), ConfigError);
    CHECK_THROWS_AS(parse_subcommand("plot"), ConfigError);
}

TEST_CASE("exit-code contract") {
    const auto out = scratch("codes");
    Overrides ov;
    ov.out_dir = out.string();
    std::ostringstream log;
    CHECK(run_from_file(Subcommand::ode, kConfigs + "/bad_lstar.json", ov, log) == kConfigError);
    CHECK(run_from_file(Subcommand::ode, kConfigs + "/missing.json", ov, log) == kConfigError);
    CHECK(run_from_file(Subcommand::parametrix, kConfigs + "/non_elliptic.json", ov, log) == kHypothesisViolation);
    CHECK(log.str().find("near x = 0") != std::string::npos);
    CHECK(run_from_file(Subcommand::wave, kConfigs + "/wave_even.json", ov, log) == kHypothesisViolation);
    CHECK(run_from_file(Subcommand::wave, kConfigs + "/green_c1.json", ov, log) == kOk);

    // a tolerance that cannot be met is a numerical-acceptance failure
    auto c = load("sin_parametrix");
    c.parametrix->slope_max = -10.0;
    CHECK(run(c).exit_code == kNumericalFailure);
    std::filesystem::remove_all(out);
}

TEST_CASE("ode runs") {
    auto airy = run(load("airy"));
    REQUIRE(airy.exit_code == kOk);
    const auto& roots = table(airy, "roots");
    REQUIRE(roots.rows.size() == 2);
    for (const auto& r : roots.rows) CHECK(std::get<double>(r[5]) == -0.25);
    double worst = 0.0;
    for (const auto& r : table(airy, "validation").rows) worst = std::max(worst, std::get<double>(r[6]));
    CHECK(worst <= 1e-6);

    auto cc = run(load("constant_ode"));
    REQUIRE(cc.exit_code == kOk);
    for (const auto& r : table(cc, "fundamental").rows)
        if (std::get<long>(r[1]) > 0) CHECK(std::get<std::string>(r[6]) == "0");
}

TEST_CASE("parametrix runs") {
    auto sinp = run(load("sin_parametrix"));
    REQUIRE(sinp.exit_code == kOk);
    for (const auto& r : table(sinp, "defect").rows)
        if (std::get<long>(r[0]) < 4) CHECK(std::get<std::string>(r[2]) == "yes");
    CHECK(std::get<double>(table(sinp, "summary").rows[0][2]) <= -3.7);
    auto absx = run(load("abs_xi"));
    for (const auto& r : table(absx, "defect").rows) CHECK(std::get<double>(r[3]) == 0.0);
}

TEST_CASE("wave runs") {
    for (auto [name, jump] : {std::pair{"green_c1", 0.5}, std::pair{"green_c2", 0.25}}) {
        auto r = run(load(name));
        REQUIRE(r.exit_code == kOk);
        CHECK(std::abs(std::get<double>(table(r, "jump").rows[0][4]) - jump) < 1e-3);
    }
    auto tl = run(load("green_tlinear"));
    REQUIRE(tl.exit_code == kOk);
    for (const auto& row : table(tl, "parity").rows) CHECK(std::get<double>(row[1]) <= 1e-10);
    CHECK(table(tl, "parity_sweep").rows.size() == 20);
    auto st = run(load("wave_space_time"));
    CHECK(st.exit_code == kOk);
    CHECK(table(st, "ray_transport").rows.size() > 0);
}

TEST_CASE("scheme demo runs") {
    auto o = run(load("scheme_ode"));
    REQUIRE(o.exit_code == kOk);
    for (const auto& r : table(o, "terms").rows) CHECK(std::get<std::string>(r[5]) == "yes");
    auto c0 = load("scheme_ode");
    c0.order = 0;
    auto z = run(c0);
    CHECK(z.exit_code == kOk);
    CHECK(table(z, "residual").rows.size() == 1);
    auto circ = run(load("scheme_circle"));
    REQUIRE(circ.exit_code == kOk);
    for (const auto& r : table(circ, "residual").rows)
        if (std::get<long>(r[0]) < 4) CHECK(std::get<std::string>(r[2]) == "yes");
}

TEST_CASE("determinism: same config and seed give byte-identical output") {
    for (const char* name : {"airy", "sin_parametrix", "green_tlinear", "scheme_circle"}) {
        INFO(name);
        const auto c = load(name);
        CHECK(all_csv(run(c)) == all_csv(run(c)));
    }
    auto c = load("green_tlinear");
    const auto a = table(run(c), "parity_sweep").to_csv();
    c.seed += 1;
    CHECK(table(run(c), "parity_sweep").to_csv() != a);

    const auto d1 = scratch("det1"), d2 = scratch("det2");
    for (const auto& d : {d1, d2}) {
        Overrides ov;
        ov.out_dir = d.string();
        std::ostringstream log;
        REQUIRE(run_from_file(Subcommand::wave, kConfigs + "/green_tlinear.json", ov, log) == kOk);
    }
    for (const auto& f : std::filesystem::directory_iterator(d1)) {
        std::ifstream a1(f.path()), b1(d2 / f.path().filename());
        std::stringstream sa, sb;
        sa << a1.rdbuf();
        sb << b1.rdbuf();
        CHECK(sa.str() == sb.str());
    }
    std::filesystem::remove_all(d1);
    std::filesystem::remove_all(d2);
}

TEST_CASE("json output mirrors csv rows") {
    auto c = load("green_c1");
    const auto r = run(c);
    for (const auto& t : r.tables) {
        const auto j = t.to_json();
        REQUIRE(j.size() == t.rows.size());
        if (t.rows.empty()) continue;
        CHECK(j[0].size() == t.columns.size());
        CHECK(j[0].begin().key() == t.columns[0]);
    }
    const auto out = scratch("json");
    c.out_dir = out.string();
    c.format = Format::json;
    const auto paths = write_outputs(r, c);
    CHECK(paths.size() == r.tables.size());
    std::ifstream in(paths.front());
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(parse_json_text(ss.str()).is_array());
    std::filesystem::remove_all(out);
}

TEST_CASE("csv cell formatting") {
    CHECK(format_cell(0.1) == "0.10000000000000001");
    CHECK(format_cell(3L) == "3");
    CHECK(format_cell(std::string("a,b")) == "\"a,b\"");
    Table t{"x", {"a", "b"}, {}};
    CHECK_THROWS(t.add({1L}));
}
