#include "doctest.h"

#include "distlap/eigh.hpp"
#include "distlap/rng.hpp"
#include "distlap/simd.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

using namespace distlap;

namespace {

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
    CounterRng rng(seed);
    std::vector<double> v(n);
    for (double& x : v) x = (rng.uniform() - 0.5) * std::ldexp(1.0, static_cast<int>(rng.below(20)) - 10);
    return v;
}

bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!same_bits(a[i], b[i])) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("kernel lookup") {
    CHECK(simd::find_kernels("scalar") == &simd::scalar_kernels());
    CHECK(simd::find_kernels("nope") == nullptr);
    CHECK(simd::find_kernels("avx2") == simd::avx2_kernels());
    {
        simd::ScopedKernels guard(simd::scalar_kernels());
        CHECK(&simd::active() == &simd::scalar_kernels());
    }
}

TEST_CASE("scalar kernels against plain loops") {
    const auto& k = simd::scalar_kernels();
    const auto x = random_vector(13, 1);
    const auto y = random_vector(13, 2);
    double d = 0.0, s = 0.0, m = 0.0;
    for (std::size_t i = 0; i < 13; ++i) {
        d += x[i] * y[i];
        s += x[i] * x[i];
        m = std::max(m, std::fabs(x[i]));
    }
    CHECK(k.dot(x.data(), y.data(), 13) == doctest::Approx(d).epsilon(1e-14));
    CHECK(k.sum_squares(x.data(), 13) == doctest::Approx(s).epsilon(1e-14));
    CHECK(k.max_abs(x.data(), 13) == m);
    CHECK(k.dot(x.data(), y.data(), 0) == 0.0);

    auto a = x, b = y;
    k.rotate(a.data(), b.data(), 0.6, 0.8, 13);
    for (std::size_t i = 0; i < 13; ++i) {
        CHECK(a[i] == doctest::Approx(0.6 * x[i] - 0.8 * y[i]));
        CHECK(b[i] == doctest::Approx(0.8 * x[i] + 0.6 * y[i]));
    }
}

TEST_CASE("avx2 kernels are bit-identical to the scalar reference") {
    const simd::Kernels* v = simd::avx2_kernels();
    if (!v) {
        MESSAGE("AVX2 unavailable; skipped");
        return;
    }
    const auto& s = simd::scalar_kernels();
    for (std::size_t n = 0; n <= 67; ++n) {
        CAPTURE(n);
        const auto x = random_vector(n, 100 + n);
        const auto y = random_vector(n, 200 + n);
        CHECK(same_bits(s.dot(x.data(), y.data(), n), v->dot(x.data(), y.data(), n)));
        CHECK(same_bits(s.sum_squares(x.data(), n), v->sum_squares(x.data(), n)));
        CHECK(same_bits(s.max_abs(x.data(), n), v->max_abs(x.data(), n)));

        auto a1 = x, b1 = y, a2 = x, b2 = y;
        s.rotate(a1.data(), b1.data(), 0.3, -0.9539392014169456, n);
        v->rotate(a2.data(), b2.data(), 0.3, -0.9539392014169456, n);
        CHECK(same_bits(a1, a2));
        CHECK(same_bits(b1, b2));

        auto c1 = y, c2 = y;
        s.axpy(-1.75, x.data(), c1.data(), n);
        v->axpy(-1.75, x.data(), c2.data(), n);
        CHECK(same_bits(c1, c2));

        std::vector<double> o1(n), o2(n);
        s.sub(x.data(), y.data(), o1.data(), n);
        v->sub(x.data(), y.data(), o2.data(), n);
        CHECK(same_bits(o1, o2));
    }
}

TEST_CASE("eigensolver output does not depend on the kernel variant") {
    const simd::Kernels* v = simd::avx2_kernels();
    if (!v) return;
    CounterRng rng(7);
    const std::size_t n = 23;
    std::vector<double> e(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) e[i * n + j] = e[j * n + i] = rng.uniform() * 10 - 5;
    const SymMatrix a = SymMatrix::from_entries(n, e);
    EigenDecomp r1, r2;
    {
        simd::ScopedKernels g(simd::scalar_kernels());
        r1 = eigh(a);
    }
    {
        simd::ScopedKernels g(*v);
        r2 = eigh(a);
    }
    CHECK(same_bits(r1.values, r2.values));
    CHECK(r1.vectors == r2.vectors);
    CHECK(r1.sweeps == r2.sweeps);
}
