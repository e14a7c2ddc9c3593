#include "asym/cli/runs.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace asym::cli;
    CLI::App app{"Asymptotic constructions: half-line ODEs, circle parametrices, conormal waves"};
    app.require_subcommand(1);

    std::string config;
    std::optional<int> order;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<std::uint64_t> seed;
    for (const char* name : {"ode", "parametrix", "wave", "scheme-demo"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config, "JSON run configuration")->required();
        sub->add_option("--order", order, "expansion depth J");
        sub->add_option("--out", out, "output directory");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--seed", seed, "seed for randomized sweeps");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kConfigError;
    }
    Overrides ov{order, out, std::nullopt, seed};
    if (format) ov.format = *format == "csv" ? Format::csv : Format::json;
    const auto sub = parse_subcommand(app.get_subcommands().front()->get_name());
    return run_from_file(sub, config, ov, std::cerr);
}
