// Compiled with -mavx2 (and explicitly without -mfma) when the toolchain
// targets x86-64. Only reached after a runtime CPU check.

#include "distlap/simd.hpp"

#if defined(DISTLAP_HAVE_AVX2)

#include <immintrin.h>

#include <cmath>

namespace distlap::simd {
namespace {

void rotate_avx2(double* x, double* y, double c, double s, std::size_t n) {
    const __m256d vc = _mm256_set1_pd(c);
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xi = _mm256_loadu_pd(x + i);
        const __m256d yi = _mm256_loadu_pd(y + i);
        const __m256d nx = _mm256_sub_pd(_mm256_mul_pd(vc, xi), _mm256_mul_pd(vs, yi));
        const __m256d ny = _mm256_add_pd(_mm256_mul_pd(vs, xi), _mm256_mul_pd(vc, yi));
        _mm256_storeu_pd(x + i, nx);
        _mm256_storeu_pd(y + i, ny);
    }
    for (; i < n; ++i) {
        const double xi = x[i];
        const double yi = y[i];
        x[i] = c * xi - s * yi;
        y[i] = s * xi + c * yi;
    }
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d r = _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
        _mm256_storeu_pd(y + i, r);
    }
    for (; i < n; ++i) y[i] = y[i] + a * x[i];
}

void sub_avx2(const double* x, const double* y, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    }
    for (; i < n; ++i) out[i] = x[i] - y[i];
}

double combine(__m256d acc) {
    alignas(32) double p[4];
    _mm256_store_pd(p, acc);
    return (p[0] + p[1]) + (p[2] + p[3]);
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    }
    double r = combine(acc);
    for (; i < n; ++i) r = r + x[i] * y[i];
    return r;
}

double sum_squares_avx2(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
    }
    double r = combine(acc);
    for (; i < n; ++i) r = r + x[i] * x[i];
    return r;
}

double max_abs_avx2(const double* x, std::size_t n) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_max_pd(acc, _mm256_andnot_pd(sign, _mm256_loadu_pd(x + i)));
    }
    alignas(32) double p[4];
    _mm256_store_pd(p, acc);
    double m = p[0];
    for (int l = 1; l < 4; ++l) {
        if (p[l] > m) m = p[l];
    }
    for (; i < n; ++i) {
        const double a = std::fabs(x[i]);
        if (a > m) m = a;
    }
    return m;
}

constexpr Kernels kAvx2{
    "avx2", rotate_avx2, axpy_avx2, sub_avx2, dot_avx2, sum_squares_avx2, max_abs_avx2,
};

}  // namespace

namespace detail {
const Kernels* avx2_table() { return &kAvx2; }
}  // namespace detail

}  // namespace distlap::simd

#else

namespace distlap::simd::detail {
const Kernels* avx2_table() { return nullptr; }
}  // namespace distlap::simd::detail

#endif
