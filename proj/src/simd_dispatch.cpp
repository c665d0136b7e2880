#include "distlap/simd.hpp"

#include <atomic>
#include <cstdlib>

namespace distlap::simd {
namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const Kernels* resolve_default() {
    if (const char* env = std::getenv("DISTLAP_SIMD")) {
        if (const Kernels* k = find_kernels(env)) return k;
    }
    if (const Kernels* k = avx2_kernels()) return k;
    return &scalar_kernels();
}

std::atomic<const Kernels*>& slot() {
    static std::atomic<const Kernels*> current{resolve_default()};
    return current;
}

}  // namespace

const Kernels* avx2_kernels() {
    static const Kernels* table = cpu_has_avx2() ? detail::avx2_table() : nullptr;
    return table;
}

const Kernels& active() { return *slot().load(std::memory_order_acquire); }

void set_active(const Kernels& kernels) { slot().store(&kernels, std::memory_order_release); }

const Kernels* find_kernels(std::string_view name) {
    if (name == "scalar") return &scalar_kernels();
    if (name == "avx2") return avx2_kernels();
    return nullptr;
}

}  // namespace distlap::simd
