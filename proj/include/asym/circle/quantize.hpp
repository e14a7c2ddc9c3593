#pragma once

// Left quantization of circle symbols on a uniform grid, via FFT.

#include "asym/circle/symbol.hpp"
#include "asym/symbol/excision.hpp"

#include <vector>

namespace asym::circle {

struct QuantizedAction {
    int grid_size = 1024;  // power of two
    int freq_cut = 400;    // |k| above this is dropped; must stay below grid_size / 2
    symbol::ExcisionCutoff excision{0.5};

    void validate() const;
};

/// Samples at x_i = 2 pi i / N.
std::vector<double> grid_points(int n);
std::vector<cplx> plane_wave(int n, long k);

/// (Op(p) u)(x_i) = sum_k p(x_i, k) u^(k) e^{i k x_i}, using components 0..depth-1.
/// Components that glue into a(x) xi^d are realized exactly; all others carry the excision.
std::vector<cplx> quantize_apply(const CircleSymbol& p, const std::vector<cplx>& samples, const QuantizedAction& action,
                                 std::size_t depth);
std::vector<cplx> quantize_apply(const CircleSymbol& p, const std::vector<cplx>& samples, const QuantizedAction& action);

struct ProbeRow {
    long k;
    double error;  // sup over the grid of |(PQ - I) e^{ikx}|
};

struct ProbeResult {
    std::vector<ProbeRow> rows;
    double slope = 0.0;  // least-squares slope of log error against log |k|
};

ProbeResult remainder_probe(const CircleSymbol& p, const CircleSymbol& q, int J, const std::vector<long>& frequencies,
                            const QuantizedAction& action);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace asym::circle
