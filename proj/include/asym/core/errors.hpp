#pragma once

#include <stdexcept>
#include <string>

namespace asym {

/// Base of every library error; `what()` carries the diagnostic.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The transport map could not be inverted on the supplied data.
struct TransportError : Error {
    int level;
    TransportError(int j, const std::string& msg) : Error("transport solve failed at level " + std::to_string(j) + ": " + msg), level(j) {}
};

struct LevelOverflow : Error {
    using Error::Error;
};

/// Doubling the cutoff scale never met the per-term budget.
struct BudgetUnreachable : Error {
    int level;
    double last_norm;
    BudgetUnreachable(int j, double norm, double scale)
        : Error("budget unreachable at level " + std::to_string(j) + " (norm " + std::to_string(norm) +
                " at scale " + std::to_string(scale) + ")"),
          level(j),
          last_norm(norm) {}
};

/// Inputs outside the supported hypotheses (multiple roots, non-elliptic symbol, even n, ...).
struct HypothesisViolation : Error {
    using Error::Error;
};

struct CausticError : Error {
    double first_failing_time;
    CausticError(double t, const std::string& msg) : Error(msg), first_failing_time(t) {}
};

struct NumericalFailure : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace asym
