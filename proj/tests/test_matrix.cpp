#include "doctest.h"

#include "distlap/eigh.hpp"
#include "distlap/lu.hpp"
#include "distlap/matrix.hpp"
#include "distlap/rng.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

using namespace distlap;

namespace {

SymMatrix random_sym(std::size_t n, std::uint64_t seed, double lo, double hi, bool nonneg_off = false) {
    CounterRng rng(seed);
    std::vector<double> e(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double v = lo + (hi - lo) * rng.uniform();
            if (nonneg_off && i != j) v = std::fabs(v);
            e[i * n + j] = e[j * n + i] = v;
        }
    }
    return SymMatrix::from_entries(n, e);
}

double abs_dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return std::fabs(s) / (norm2(a) * norm2(b));
}

}  // namespace

TEST_CASE("symmetric matrix construction") {
    const auto a = SymMatrix::from_rows({{0, 1}, {1, 0}});
    CHECK(a.n() == 2);
    CHECK(a.exact());
    CHECK(SymMatrix::from_rows({{0}}).n() == 1);

    const auto b = SymMatrix::from_rows({{0, 1}, {1.000000000001, 0}});
    CHECK(b(0, 1) == b(1, 0));
    CHECK(b(0, 1) == doctest::Approx(1.0000000000005).epsilon(1e-15));
    CHECK_FALSE(b.exact());

    CHECK_THROWS_AS(SymMatrix::from_rows({{0, 1}, {1.00001, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(SymMatrix::from_rows({{0, 1}, {1}}), std::invalid_argument);
    const std::vector<double> three{1, 2, 3};
    CHECK_THROWS_AS(SymMatrix::from_entries(2, three), std::invalid_argument);
}

TEST_CASE("matrix csv round trip and exactness") {
    std::istringstream in("0,2,3\n2,0,1\n3,1,0\n");
    const SymMatrix a = read_matrix_csv(in);
    CHECK(a.n() == 3);
    CHECK(a.exact());
    std::ostringstream out;
    write_matrix_csv(out, a);
    std::istringstream back(out.str());
    CHECK(read_matrix_csv(back) == a);

    std::istringstream dec("0,0.5\n0.5,0\n");
    CHECK_FALSE(read_matrix_csv(dec).exact());
    std::istringstream bad("0,x\nx,0\n");
    CHECK_THROWS_AS(read_matrix_csv(bad), std::invalid_argument);
}

TEST_CASE("LU solve and determinant") {
    const Matrix m = Matrix::from_rows({{2, 1, 0}, {1, 3, 1}, {0, 1, 4}});
    const LuDecomposition lu(m);
    CHECK(lu.determinant() == doctest::Approx(18.0));
    const auto x = lu.solve(std::vector<double>{3, 5, 5});
    CHECK(x[0] == doctest::Approx(1.0));
    CHECK(x[1] == doctest::Approx(1.0));
    CHECK(x[2] == doctest::Approx(1.0));
    // trace of the inverse: cofactors (11, 8, 5) / 18
    CHECK(lu.trace_of_inverse() == doctest::Approx(24.0 / 18.0));
    CHECK(LuDecomposition(Matrix::from_rows({{1, 2}, {2, 4}})).singular());
}

TEST_CASE("eigh small closed forms") {
    auto d = eigh(SymMatrix::from_rows({{1, 0}, {0, 2}}));
    CHECK(d.values[0] == 1.0);
    CHECK(d.values[1] == 2.0);
    CHECK(d.vectors(0, 0) == 1.0);
    CHECK(d.vectors(1, 1) == 1.0);

    d = eigh(SymMatrix::from_rows({{0, 1}, {1, 0}}));
    CHECK(d.values[0] == doctest::Approx(-1.0));
    CHECK(d.values[1] == doctest::Approx(1.0));
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(abs_dot(d.vector(0), {r, -r}) == doctest::Approx(1.0));
    CHECK(d.vector(1)[0] == doctest::Approx(r));
    CHECK(d.vector(1)[1] == doctest::Approx(r));

    // char. polynomial of this matrix: -x(x-3)(x-5)
    d = eigh(SymMatrix::from_rows({{3, -1, -2}, {-1, 2, -1}, {-2, -1, 3}}));
    CHECK(std::fabs(d.values[0]) < 1e-12);
    CHECK(d.values[1] == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(d.values[2] == doctest::Approx(5.0).epsilon(1e-13));
    CHECK(abs_dot(d.vector(2), {-1, 0, 1}) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("eigh matches an independent solver and reconstructs the input") {
    for (std::size_t n : {1u, 2u, 5u, 17u, 40u, 64u}) {
        CAPTURE(n);
        const SymMatrix a = random_sym(n, 1000 + n, -10, 10);
        const EigenDecomp d = eigh(a);

        Eigen::MatrixXd em(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) em(i, j) = a(i, j);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(em);
        for (std::size_t k = 0; k < n; ++k) CHECK(std::fabs(d.values[k] - ref.eigenvalues()[k]) <= 1e-10 * a.norm_inf());
        for (std::size_t k = 1; k < n; ++k) CHECK(d.values[k - 1] <= d.values[k]);

        double recon = 0.0, ortho = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                double s = 0.0, g = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    s += d.vectors(i, k) * d.values[k] * d.vectors(j, k);
                    g += d.vectors(k, i) * d.vectors(k, j);
                }
                recon = std::max(recon, std::fabs(s - a(i, j)));
                ortho = std::max(ortho, std::fabs(g - (i == j ? 1.0 : 0.0)));
            }
        }
        CHECK(recon <= 1e-9 * a.norm_inf());
        CHECK(ortho <= 1e-10);
        CHECK(d.residual <= 1e-10 * std::max(1.0, a.norm_inf()));
    }
}

TEST_CASE("eigh is deterministic and sign-fixed") {
    const SymMatrix a = random_sym(30, 5, -3, 3);
    const EigenDecomp x = eigh(a), y = eigh(a);
    CHECK(x.values == y.values);
    CHECK(x.vectors == y.vectors);
    for (std::size_t k = 0; k < 30; ++k) {
        const auto v = x.vector(k);
        double big = 0.0;
        for (double c : v) {
            if (std::fabs(c) > std::fabs(big)) big = c;
        }
        CHECK(big > 0.0);
    }
}

TEST_CASE("eigh clusters repeated eigenvalues and fails loudly") {
    // J - I on 4 vertices: eigenvalues -1 (x3), 3
    const auto d = eigh(SymMatrix::build(4, [](std::size_t i, std::size_t j) { return i == j ? 0 : 1; }));
    REQUIRE(d.clusters.size() == 2);
    CHECK(d.clusters[0].size == 3);
    CHECK(d.cluster_of(3).size == 1);

    EighOptions capped;
    capped.max_sweeps = 0;
    CHECK_THROWS_AS(eigh(random_sym(5, 9, -1, 1), capped), NumericError);
    EighOptions bad;
    bad.tol = 0.0;
    CHECK_THROWS_AS(eigh(random_sym(3, 9, -1, 1), bad), std::invalid_argument);
}

TEST_CASE("perron vector") {
    const double r = 1.0 / std::sqrt(2.0);
    auto p = perron_vector(SymMatrix::from_rows({{0, 1}, {1, 0}}));
    CHECK(p[0] == doctest::Approx(r));
    CHECK(p[1] == doctest::Approx(r));
    p = perron_vector(SymMatrix::from_rows({{4, 1}, {1, 4}}));
    CHECK(p[0] == doctest::Approx(r));
    CHECK(p[1] == doctest::Approx(r));
    p = perron_vector(SymMatrix::zeros(2));
    CHECK(p[0] >= 0.0);
    CHECK(p[1] >= 0.0);
    CHECK(norm2(p) == doctest::Approx(1.0));
    CHECK_THROWS_AS(perron_vector(SymMatrix::from_rows({{0, -1}, {-1, 0}})), std::invalid_argument);

    for (std::uint64_t s = 0; s < 40; ++s) {
        const std::size_t n = 2 + s % 31;
        const SymMatrix weak = random_sym(n, 77 + s, -5, 5, true);
        const auto x = perron_vector(weak);
        for (double v : x) CHECK(v >= -1e-10 * norm_inf(x));

        // strictly positive off-diagonal: strictly positive vector
        const SymMatrix strict = SymMatrix::build(n, [&](std::size_t i, std::size_t j) { return i == j ? weak(i, i) : weak(i, j) + 0.01; });
        const auto y = perron_vector(strict);
        for (double v : y) CHECK(v >= 1e-12);
    }
}
