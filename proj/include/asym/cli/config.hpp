#pragma once

// Run configuration: one JSON file per run, typed per subcommand. to_json(parse(j)) is a
// fixed point, so a serialized config parses back to itself.

#include "asym/circle/symbol.hpp"
#include "asym/ode/halfline.hpp"
#include "asym/wave/operator.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace asym::cli {

using ojson = nlohmann::ordered_json;

enum class Format { csv, json };

enum class Subcommand { ode, parametrix, wave, scheme_demo };

std::string to_string(Subcommand s);
Subcommand parse_subcommand(const std::string& s);

struct OdeSpec {
    int m = 2;
    Rational lstar{0};
    std::vector<std::vector<QComplex>> coeffs;  // coeffs[r-1][k] = a_{r,k}
    double t_lo = 20.0;
    double t_match = 100.0;
    int samples = 41;
    double max_rel_error = 1e-6;

    [[nodiscard]] ode::HalfLineOperator op() const;
};

struct ParametrixSpec {
    Rational order{1};
    std::vector<symbol::DirPair<circle::TrigPoly>> components;
    std::vector<long> frequencies{16, 32, 64, 128, 256};
    int grid_size = 1024;
    int freq_cut = 400;
    double excision = 0.5;
    std::optional<double> slope_max;  // fail (exit 1) when the fitted slope is above this

    [[nodiscard]] circle::CircleSymbol symbol() const;
};

struct WaveDataSpec {
    bool green = true;
    Rational mu_bar{-1};
    // n = 1 only: per order, values at omega = +1 and omega = -1
    std::vector<std::pair<std::complex<double>, std::complex<double>>> g0, g1;
};

struct WaveSpec {
    int n = 1;
    wave::Variant variant = wave::Variant::constant;
    std::vector<double> time_coeffs{1.0};
    std::vector<std::vector<double>> space_coeffs;
    double horizon = 1.0;
    int time_points = 11;
    std::vector<double> ray_seeds{0.0};  // x0 along the first axis
    int cone_fan = 16;
    int amplitude_fan = 2;
    WaveDataSpec data;
    std::optional<double> jump_time;  // default: horizon; n = 1 and x-independent c only
    double jump_eps0 = 0.1;
    int jump_levels = 7;
    double parity_tol = 1e-10;
    int parity_sweep = 0;  // random parity-respecting data sets, drawn from the seed

    [[nodiscard]] wave::HyperbolicOp2 op() const;
};

struct SchemeSpec {
    std::string instantiation = "ode";  // "ode" | "circle"
    std::optional<OdeSpec> ode;
    int branch = 0;  // root index for the ode instantiation
    std::optional<ParametrixSpec> circle;
};

struct RunConfig {
    Subcommand subcommand = Subcommand::ode;
    int order = 4;
    std::string out_dir = ".";
    Format format = Format::csv;
    std::uint64_t seed = 0;
    std::optional<OdeSpec> ode;
    std::optional<ParametrixSpec> parametrix;
    std::optional<WaveSpec> wave;
    std::optional<SchemeSpec> scheme;
};

/// Reads JSON text; syntax errors become ConfigError with line and column.
ojson parse_json_text(const std::string& text, const std::string& origin = "config");
ojson load_json_file(const std::string& path);

/// The problem block for `sub` is read from j["problem"]; "order", "seed", "format", "out" are optional.
RunConfig parse_config(const ojson& j, Subcommand sub);
ojson to_json(const RunConfig& cfg);

ojson to_json(const OdeSpec& s);
ojson to_json(const ParametrixSpec& s);
ojson to_json(const WaveSpec& s);
ojson to_json(const SchemeSpec& s);
OdeSpec parse_ode(const ojson& j, const std::string& where);
ParametrixSpec parse_parametrix(const ojson& j, const std::string& where);
WaveSpec parse_wave(const ojson& j, const std::string& where);
SchemeSpec parse_scheme(const ojson& j, const std::string& where);

}  // namespace asym::cli
