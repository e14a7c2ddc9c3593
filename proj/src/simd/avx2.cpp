// Compiled with -mavx2 -mfma; only reached through the dispatch table after a CPU check.
#include "asym/simd/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace asym::simd::detail {

namespace {

// Two complex numbers per __m256d: [r0 i0 r1 i1].
inline __m256d cmul2(__m256d a, __m256d b) {
    __m256d br = _mm256_movedup_pd(b);         // r r
    __m256d bi = _mm256_permute_pd(b, 0xF);    // i i
    __m256d as = _mm256_permute_pd(a, 0x5);    // ai ar
    return _mm256_fmaddsub_pd(a, br, _mm256_mul_pd(as, bi));
}

void cmul_acc(cplx* out, const cplx* a, const cplx* b, std::size_t n) {
    auto* o = reinterpret_cast<double*>(out);
    const auto* pa = reinterpret_cast<const double*>(a);
    const auto* pb = reinterpret_cast<const double*>(b);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        __m256d vo = _mm256_loadu_pd(o + 2 * i);
        _mm256_storeu_pd(o + 2 * i, _mm256_add_pd(vo, cmul2(va, vb)));
    }
    for (; i < n; ++i) {
        double ar = a[i].real(), ai = a[i].imag(), br = b[i].real(), bi = b[i].imag();
        out[i] = {out[i].real() + (ar * br - ai * bi), out[i].imag() + (ar * bi + ai * br)};
    }
}

void cmul_real(cplx* out, const cplx* a, const double* r, std::size_t n) {
    auto* o = reinterpret_cast<double*>(out);
    const auto* pa = reinterpret_cast<const double*>(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m128d rr = _mm_loadu_pd(r + i);
        __m256d scale = _mm256_permute4x64_pd(_mm256_castpd128_pd256(rr), 0x50);  // r0 r0 r1 r1
        _mm256_storeu_pd(o + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(pa + 2 * i), scale));
    }
    for (; i < n; ++i) out[i] = {a[i].real() * r[i], a[i].imag() * r[i]};
}

cplx cdot(const cplx* a, const cplx* b, std::size_t n) {
    const auto* pa = reinterpret_cast<const double*>(a);
    const auto* pb = reinterpret_cast<const double*>(b);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = _mm256_add_pd(acc, cmul2(_mm256_loadu_pd(pa + 2 * i), _mm256_loadu_pd(pb + 2 * i)));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double sr = lanes[0] + lanes[2], si = lanes[1] + lanes[3];
    for (; i < n; ++i) {
        double ar = a[i].real(), ai = a[i].imag(), br = b[i].real(), bi = b[i].imag();
        sr += ar * br - ai * bi;
        si += ar * bi + ai * br;
    }
    return {sr, si};
}

double max_abs_diff(const cplx* a, const cplx* b, std::size_t n) {
    const auto* pa = reinterpret_cast<const double*>(a);
    const auto* pb = reinterpret_cast<const double*>(b);
    __m256d best = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(pa + 2 * i), _mm256_loadu_pd(pb + 2 * i));
        __m256d sq = _mm256_mul_pd(d, d);
        __m256d s = _mm256_hadd_pd(sq, sq);  // |d0|^2 |d0|^2 |d1|^2 |d1|^2
        best = _mm256_max_pd(best, s);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, best);
    double m = std::sqrt(std::max(lanes[0], lanes[2]));
    for (; i < n; ++i) m = std::max(m, std::hypot(a[i].real() - b[i].real(), a[i].imag() - b[i].imag()));
    return m;
}

}  // namespace

const KernelTable avx2_table{cmul_acc, cmul_real, cdot, max_abs_diff};

}  // namespace asym::simd::detail
