#pragma once

// Dense double-precision kernels used by the eigensolver, the LU solver and
// the compression transform. Every kernel has a scalar reference version and,
// on x86-64, an AVX2 version chosen at runtime.
//
// The variants are bit-identical: no fused multiply-add is used anywhere, and
// reductions accumulate into four interleaved partial sums that are combined
// as (p0 + p1) + (p2 + p3) before the scalar tail is added. The scalar
// reference follows the same order, so results never depend on which variant
// the dispatcher picked.

#include <cstddef>
#include <string_view>

namespace distlap::simd {

struct Kernels {
    const char* name;
    // x <- c*x - s*y, y <- s*x + c*y (old values on the right-hand side)
    void (*rotate)(double* x, double* y, double c, double s, std::size_t n);
    // y <- y + a*x
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    // out <- x - y
    void (*sub)(const double* x, const double* y, double* out, std::size_t n);
    double (*dot)(const double* x, const double* y, std::size_t n);
    double (*sum_squares)(const double* x, std::size_t n);
    double (*max_abs)(const double* x, std::size_t n);
};

const Kernels& scalar_kernels();

// nullptr when the binary was built without AVX2 support or the CPU lacks it.
const Kernels* avx2_kernels();

// Kernel table used by the library. Resolved once from the CPU features,
// overridable with DISTLAP_SIMD=scalar|avx2 in the environment.
const Kernels& active();

// Switches the active table. Not synchronized with concurrent callers of
// active(); meant for tests and start-up configuration.
void set_active(const Kernels& kernels);

// Looks up a table by name ("scalar", "avx2"); nullptr if unavailable.
const Kernels* find_kernels(std::string_view name);

class ScopedKernels {
public:
    explicit ScopedKernels(const Kernels& k) : previous_(&active()) { set_active(k); }
    ~ScopedKernels() { set_active(*previous_); }
    ScopedKernels(const ScopedKernels&) = delete;
    ScopedKernels& operator=(const ScopedKernels&) = delete;

private:
    const Kernels* previous_;
};

namespace detail {
const Kernels* avx2_table();  // defined in simd_avx2.cpp, nullptr if not built
}

}  // namespace distlap::simd
