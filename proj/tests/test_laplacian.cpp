#include "doctest.h"

#include "distlap/eigh.hpp"
#include "distlap/laplacian.hpp"
#include "distlap/rng.hpp"
#include "distlap/tree.hpp"

#include <cmath>

using namespace distlap;

namespace {

SymMatrix random_integer_matrix(std::size_t n, std::uint64_t seed, int hi) {
    CounterRng rng(seed);
    std::vector<double> e(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) e[i * n + j] = e[j * n + i] = static_cast<double>(rng.between(0, hi));
    return SymMatrix::from_entries(n, e);
}

IntMatrix to_int(const SymMatrix& a) {
    IntMatrix m(a.n(), a.n());
    for (std::size_t i = 0; i < a.n(); ++i)
        for (std::size_t j = 0; j < a.n(); ++j) m(i, j) = static_cast<std::int64_t>(a(i, j));
    return m;
}

}  // namespace

TEST_CASE("generalized laplacian") {
    const auto l = laplacian_of(distance_matrix(path_graph(3)));
    CHECK(l.matrix() == SymMatrix::from_rows({{3, -1, -2}, {-1, 2, -1}, {-2, -1, 3}}));
    CHECK(l.exact());
    CHECK(l.scale() == 6.0);

    // the diagonal of A is ignored
    const auto with_diag = laplacian_of(SymMatrix::from_rows({{7, 2}, {2, -3}}));
    CHECK(with_diag.matrix() == SymMatrix::from_rows({{2, -2}, {-2, 2}}));
    CHECK(laplacian_of(SymMatrix::zeros(3)).scale() == 1.0);

    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto g = laplacian_of(random_integer_matrix(3 + s, s, 9));
        for (std::size_t i = 0; i < g.n(); ++i) {
            double row = 0.0;
            for (double v : g.matrix().row(i)) row += v;
            CHECK(row == 0.0);
        }
    }
}

TEST_CASE("difference and summation operators") {
    const IntMatrix s = build_S(3), t = build_T(3);
    IntMatrix s_ref(2, 3), t_ref(3, 2);
    s_ref(0, 0) = -1, s_ref(0, 1) = 1, s_ref(1, 1) = -1, s_ref(1, 2) = 1;
    t_ref(1, 0) = 1, t_ref(2, 0) = 1, t_ref(2, 1) = 1;
    CHECK(s == s_ref);
    CHECK(t == t_ref);

    for (std::size_t n = 2; n <= 128; n += (n < 16 ? 1 : 37)) {
        CAPTURE(n);
        const IntMatrix sn = build_S(n), tn = build_T(n);
        CHECK(sn.multiply(tn) == IntMatrix::identity(n - 1));
        IntMatrix projector = IntMatrix::identity(n);
        for (std::size_t i = 0; i < n; ++i) projector(i, 0) -= 1;
        CHECK(tn.multiply(sn) == projector);
    }
    CHECK_THROWS_AS(build_S(1), std::invalid_argument);
}

TEST_CASE("compressed matrix by hand") {
    const Matrix m = compress(laplacian_of(distance_matrix(path_graph(3))));
    CHECK(m == Matrix::from_rows({{4, 1}, {1, 4}}));
    CHECK(m.exact());
    CHECK(compress(laplacian_of(adjacency_matrix(path_graph(3)))) == Matrix::from_rows({{2, -1}, {-1, 2}}));
}

TEST_CASE("compressed matrix equals S A^L T and keeps the spectrum") {
    for (std::uint64_t s = 0; s < 12; ++s) {
        const std::size_t n = 2 + s;
        const auto l = laplacian_of(random_integer_matrix(n, 50 + s, 9));
        const IntMatrix ref = build_S(n).multiply(to_int(l.matrix())).multiply(build_T(n));
        const Matrix m = compress(l);
        CHECK(m == ref.to_real());

        // trace and the sum of squared eigenvalues both survive compression
        const auto d = eigh(l.matrix());
        double tr = 0.0, tr2 = 0.0, ev = 0.0, ev2 = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            tr += m(i, i);
            for (std::size_t j = 0; j + 1 < n; ++j) tr2 += m(i, j) * m(j, i);
        }
        for (double v : d.values) ev += v, ev2 += v * v;
        CHECK(tr == doctest::Approx(ev));
        CHECK(tr2 == doctest::Approx(ev2));
    }
}

TEST_CASE("compress and lift vectors") {
    const std::vector<double> x{-1, 0, 1};
    CHECK(compress_vector(x) == std::vector<double>{1, 1});
    CHECK(lift_vector(std::vector<double>{1, 1}) == x);
    CHECK(lift_vector(std::vector<double>{2}) == std::vector<double>{-1, 1});
    CHECK_THROWS_AS(compress_vector(std::vector<double>{1}), std::invalid_argument);

    for (std::size_t n = 1; n <= 50; ++n) {
        CounterRng rng(n);
        std::vector<double> y(n);
        for (double& v : y) v = rng.uniform() * 2 - 1;
        const auto lifted = lift_vector(y);
        CHECK(std::fabs(sum(lifted)) <= 1e-13 * n);
        const auto back = compress_vector(lifted);
        for (std::size_t i = 0; i < n; ++i) CHECK(back[i] == doctest::Approx(y[i]).epsilon(1e-12));
    }
}

TEST_CASE("sign patterns") {
    auto p = sign_pattern(Matrix::from_rows({{0, 1}, {-1, 0}}));
    CHECK(p.classification == SignClass::Mixed);
    REQUIRE(p.witness);
    CHECK(*p.witness == std::pair{2, 1});

    p = sign_pattern(Matrix::from_rows({{-5, 1, 2}, {3, 9, 1}, {1, 1, 0}}));
    CHECK(p.classification == SignClass::AllPositive);
    CHECK(p.all_nonneg());
    CHECK_FALSE(p.witness);

    p = sign_pattern(Matrix::from_rows({{0, -1, 0}, {-1, 0, -2}, {-3, 0, 0}}));
    CHECK(p.classification == SignClass::AllNonpos);
    CHECK(p.zero == 2);
    CHECK_FALSE(p.all_negative());

    CHECK(sign_pattern(Matrix::from_rows({{0, -1}, {-1, 0}})).classification == SignClass::AllNegative);
    CHECK(sign_pattern(Matrix::from_rows({{0, 0}, {0, 0}})).classification == SignClass::AllNonneg);
    p = sign_pattern(Matrix::from_rows({{4}}));
    CHECK(p.classification == SignClass::AllPositive);
    CHECK(p.all_positive());
    CHECK(p.all_negative());

    // inexact: tiny entries count as zero
    p = sign_pattern(Matrix::from_rows({{0, 0.5}, {-1e-15, 0}}));
    CHECK(p.classification == SignClass::AllNonneg);
    CHECK(p.zero == 1);
    CHECK_THROWS_AS(sign_pattern(Matrix(2, 3)), std::invalid_argument);
}
