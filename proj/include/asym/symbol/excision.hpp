#pragma once

#include <cmath>

namespace asym::symbol {

/// Smooth step: 0 on (-inf, 1], 1 on [2, inf), monotone in between.
/// Built from psi(x) = exp(-1/x) so that every derivative matches at the ends.
inline double excision_profile(double y) {
    if (y <= 1.0) return 0.0;
    if (y >= 2.0) return 1.0;
    double a = std::exp(-1.0 / (y - 1.0));
    double b = std::exp(-1.0 / (2.0 - y));
    return a / (a + b);
}

struct ExcisionCutoff {
    double scale = 1.0;

    ExcisionCutoff() = default;
    explicit ExcisionCutoff(double c) : scale(c) {}

    double operator()(double point) const { return excision_profile(point / scale); }
    /// Points where the cutoff is identically one.
    [[nodiscard]] double flat_from() const { return 2.0 * scale; }
};

}  // namespace asym::symbol
