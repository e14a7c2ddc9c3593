#include "asym/simd/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace asym::simd::detail {

namespace {

// Written on raw re/im pairs so the reference does not depend on the
// library's complex multiply (which adds inf/nan recovery branches).

void cmul_acc(cplx* out, const cplx* a, const cplx* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double ar = a[i].real(), ai = a[i].imag(), br = b[i].real(), bi = b[i].imag();
        out[i] = {out[i].real() + (ar * br - ai * bi), out[i].imag() + (ar * bi + ai * br)};
    }
}

void cmul_real(cplx* out, const cplx* a, const double* r, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = {a[i].real() * r[i], a[i].imag() * r[i]};
}

cplx cdot(const cplx* a, const cplx* b, std::size_t n) {
    double sr = 0.0, si = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double ar = a[i].real(), ai = a[i].imag(), br = b[i].real(), bi = b[i].imag();
        sr += ar * br - ai * bi;
        si += ar * bi + ai * br;
    }
    return {sr, si};
}

double max_abs_diff(const cplx* a, const cplx* b, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::hypot(a[i].real() - b[i].real(), a[i].imag() - b[i].imag()));
    return m;
}

}  // namespace

const KernelTable scalar_table{cmul_acc, cmul_real, cdot, max_abs_diff};

}  // namespace asym::simd::detail
