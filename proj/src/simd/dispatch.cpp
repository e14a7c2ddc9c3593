#include "asym/simd/kernels.hpp"

#include <cstdlib>
#include <string>

namespace asym::simd {

bool backend_available(Backend b) {
    if (b == Backend::scalar) return true;
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable& table(Backend b) {
    if (b == Backend::avx2 && backend_available(Backend::avx2)) return detail::avx2_table;
    return detail::scalar_table;
}

Backend active_backend() {
    static const Backend chosen = [] {
        const char* env = std::getenv("ASYM_SIMD");
        if (env != nullptr && std::string(env) == "scalar") return Backend::scalar;
        return backend_available(Backend::avx2) ? Backend::avx2 : Backend::scalar;
    }();
    return chosen;
}

const KernelTable& active() {
    static const KernelTable& t = table(active_backend());
    return t;
}

std::string_view backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

}  // namespace asym::simd
