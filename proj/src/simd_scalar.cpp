#include "distlap/simd.hpp"

#include <cmath>

namespace distlap::simd {
namespace {

void rotate_scalar(double* x, double* y, double c, double s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i];
        const double yi = y[i];
        x[i] = c * xi - s * yi;
        y[i] = s * xi + c * yi;
    }
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + a * x[i];
}

void sub_scalar(const double* x, const double* y, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i] - y[i];
}

// Four-lane accumulation order shared with the AVX2 kernels.
double dot_scalar(const double* x, const double* y, std::size_t n) {
    double p[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        for (int l = 0; l < 4; ++l) p[l] = p[l] + x[i + l] * y[i + l];
    }
    double r = (p[0] + p[1]) + (p[2] + p[3]);
    for (; i < n; ++i) r = r + x[i] * y[i];
    return r;
}

double sum_squares_scalar(const double* x, std::size_t n) {
    double p[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        for (int l = 0; l < 4; ++l) p[l] = p[l] + x[i + l] * x[i + l];
    }
    double r = (p[0] + p[1]) + (p[2] + p[3]);
    for (; i < n; ++i) r = r + x[i] * x[i];
    return r;
}

double max_abs_scalar(const double* x, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = std::fabs(x[i]);
        if (a > m) m = a;
    }
    return m;
}

constexpr Kernels kScalar{
    "scalar", rotate_scalar, axpy_scalar, sub_scalar, dot_scalar, sum_squares_scalar, max_abs_scalar,
};

}  // namespace

const Kernels& scalar_kernels() { return kScalar; }

}  // namespace distlap::simd
