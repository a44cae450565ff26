#include "aquakern/simd/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace aquakern::simd {
namespace {

std::atomic<const KernelTable*> g_active{nullptr};

const KernelTable* detect() {
    if (const char* env = std::getenv("AQUAKERN_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) return &scalar_kernels();
        if (std::strcmp(env, "avx2") == 0 && avx2_available())
            return &avx2_kernels();
    }
    return avx2_available() ? &avx2_kernels() : &scalar_kernels();
}

}  // namespace

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable& active_kernels() {
    const KernelTable* t = g_active.load(std::memory_order_acquire);
    if (!t) {
        t = detect();
        g_active.store(t, std::memory_order_release);
    }
    return *t;
}

void set_backend(Backend b) {
    g_active.store(b == Backend::avx2 && avx2_available() ? &avx2_kernels()
                                                          : &scalar_kernels(),
                   std::memory_order_release);
}

}  // namespace aquakern::simd
