#pragma once

// Subcommand drivers. Each returns its tables and an exit status:
// 0 success, 1 numerical-acceptance failure, 2 config error, 3 hypothesis violation.

#include "asym/cli/config.hpp"
#include "asym/cli/table.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace asym::cli {

enum ExitCode : int { kOk = 0, kNumericalFailure = 1, kConfigError = 2, kHypothesisViolation = 3 };

struct RunResult {
    int exit_code = kOk;
    std::vector<Table> tables;
    std::vector<std::string> diagnostics;
    std::optional<double> failing_time;  // set for caustic refusals

    void fail(const std::string& msg) {
        exit_code = kNumericalFailure;
        diagnostics.push_back(msg);
    }
};

RunResult run_ode(const RunConfig& cfg);
RunResult run_parametrix(const RunConfig& cfg);
RunResult run_wave(const RunConfig& cfg);
RunResult run_scheme_demo(const RunConfig& cfg);

/// Dispatches on cfg.subcommand and maps library exceptions onto exit codes.
RunResult run(const RunConfig& cfg);

/// Files <out>/<subcommand>_<table>.<csv|json>; returns the paths written.
std::vector<std::string> write_outputs(const RunResult& res, const RunConfig& cfg);

/// Parses, runs and writes; the exit status of the whole CLI invocation.
struct Overrides {
    std::optional<int> order;
    std::optional<std::string> out_dir;
    std::optional<Format> format;
    std::optional<std::uint64_t> seed;
};
int run_from_file(Subcommand sub, const std::string& config_path, const Overrides& ov, std::ostream& log);

}  // namespace asym::cli
