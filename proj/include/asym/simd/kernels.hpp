#pragma once

// Complex-vector kernels used in the FFT multipliers, the remainder probes and the
// radial quadrature. A scalar reference and an AVX2/FMA variant share one table.

#include <complex>
#include <cstddef>
#include <string_view>

namespace asym::simd {

using cplx = std::complex<double>;

enum class Backend { scalar, avx2 };

struct KernelTable {
    /// out[i] += a[i] * b[i]
    void (*cmul_acc)(cplx* out, const cplx* a, const cplx* b, std::size_t n);
    /// out[i] = a[i] * r[i]
    void (*cmul_real)(cplx* out, const cplx* a, const double* r, std::size_t n);
    /// sum a[i] * b[i] (no conjugation)
    cplx (*cdot)(const cplx* a, const cplx* b, std::size_t n);
    /// max |a[i] - b[i]|
    double (*max_abs_diff)(const cplx* a, const cplx* b, std::size_t n);
};

const KernelTable& table(Backend b);
bool backend_available(Backend b);

/// Picked once: AVX2 when the CPU has AVX2 and FMA, unless ASYM_SIMD=scalar.
Backend active_backend();
const KernelTable& active();
std::string_view backend_name(Backend b);

inline void cmul_acc(cplx* out, const cplx* a, const cplx* b, std::size_t n) { active().cmul_acc(out, a, b, n); }
inline void cmul_real(cplx* out, const cplx* a, const double* r, std::size_t n) { active().cmul_real(out, a, r, n); }
inline cplx cdot(const cplx* a, const cplx* b, std::size_t n) { return active().cdot(a, b, n); }
inline double max_abs_diff(const cplx* a, const cplx* b, std::size_t n) { return active().max_abs_diff(a, b, n); }

namespace detail {
extern const KernelTable scalar_table;
extern const KernelTable avx2_table;
}  // namespace detail

}  // namespace asym::simd
