#include "doctest.h"

#include "distlap/rng.hpp"
#include "distlap/spectrum_check.hpp"
#include "distlap/tree.hpp"
#include "distlap/verify.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

using namespace distlap;

namespace {

const double kRoot5 = std::sqrt(5.0);

void check_parallel(const std::vector<double>& x, std::vector<double> ref) {
    const double s = norm2(ref);
    for (double& v : ref) v /= s;
    REQUIRE(x.size() == ref.size());
    double dot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * ref[i];
    CHECK(dot == doctest::Approx(1.0).epsilon(1e-12));  // same direction, not just parallel
}

std::vector<double> eigen_real_parts(const Matrix& m) {
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
    const Eigen::VectorXcd ev = Eigen::EigenSolver<Eigen::MatrixXd>(e, false).eigenvalues();
    std::vector<double> out;
    for (Eigen::Index i = 0; i < ev.size(); ++i) out.push_back(ev[i].real());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("operator identities up to 128") {
    const auto rs = verify_lemma7(128);
    CHECK(rs.size() == 127);
    CHECK(std::all_of(rs.begin(), rs.end(), [](const Lemma7Result& r) { return r.ok(); }));
}

TEST_CASE("spectral correspondence on the distance matrix of P3") {
    const auto r = verify_lemma8(distance_matrix(path_graph(3)));
    CHECK(r.ok());
    REQUIRE(r.compressed_spectrum.size() == 2);
    CHECK(r.compressed_spectrum[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(r.compressed_spectrum[1] == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(r.laplacian_spectrum[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(r.route == "companion");
    CHECK(r.max_imaginary == 0.0);
    CHECK(r.compressed_vectors == 2);
    CHECK(r.lifted_vectors == 2);
}

TEST_CASE("spectral correspondence on random and large matrices") {
    const auto s = run_lemma8_suite(40, 24, 3);
    CHECK(s.ok());
    CHECK(s.worst < 1e-9);
    const auto big = verify_lemma8(distance_matrix(random_tree(30, 1)));
    CHECK(big.route == "general");
    CHECK(big.ok());
}

TEST_CASE("both spectrum routes agree with an independent nonsymmetric solver") {
    for (std::uint64_t s = 0; s < 30; ++s) {
        const std::size_t n = 2 + s % 10;
        CounterRng rng(s);
        std::vector<double> e(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) e[i * n + j] = e[j * n + i] = static_cast<double>(rng.between(0, 9));
        const Matrix m = compress(laplacian_of(SymMatrix::from_entries(n, e)));
        const auto ref = eigen_real_parts(m);
        for (const auto& got : {companion_route_spectrum(m), general_route_spectrum(m)}) {
            REQUIRE(got.values.size() == ref.size());
            for (std::size_t k = 0; k < ref.size(); ++k)
                CHECK(std::fabs(got.values[k] - ref[k]) <= 1e-8 * std::max(1.0, std::fabs(ref.back())));
        }
    }
    // det(xI - M) for M = [[4, 1], [1, 4]] is x^2 - 8x + 15
    const auto c = characteristic_polynomial(Matrix::from_rows({{4, 1}, {1, 4}}));
    REQUIRE(c.size() == 3);
    CHECK(static_cast<double>(c[0]) == doctest::Approx(15.0));
    CHECK(static_cast<double>(c[1]) == doctest::Approx(-8.0));
    CHECK(static_cast<double>(c[2]) == 1.0);
}

TEST_CASE("monotone eigenvector anchors") {
    auto r = verify_thm11(distance_matrix(path_graph(3)), PathPart::I);
    CHECK(r.holds());
    CHECK(r.eigenvalue == doctest::Approx(5.0).epsilon(1e-12));
    check_parallel(r.vector, {-1, 0, 1});
    CHECK(r.pattern.classification == SignClass::AllPositive);

    r = verify_thm11(distance_matrix(path_graph(4)), PathPart::I);
    CHECK(r.holds());
    CHECK(r.eigenvalue == doctest::Approx(7 + kRoot5).epsilon(1e-12));
    check_parallel(r.vector, {-1, 2 - kRoot5, kRoot5 - 2, 1});
    CHECK(r.monotonicity == Monotonicity::Nondecreasing);
    CHECK(r.residual < 1e-12);
    CHECK(r.orthogonality < 1e-12);

    r = verify_thm11(adjacency_matrix(path_graph(3)), PathPart::II);
    CHECK(r.holds());
    CHECK(r.eigenvalue == doctest::Approx(1.0).epsilon(1e-12));
    check_parallel(r.vector, {-1, 0, 1});
    CHECK(r.pattern.all_nonpos());

    CHECK_THROWS_AS(verify_thm11(adjacency_matrix(path_graph(4)), PathPart::I), std::invalid_argument);
    CHECK_THROWS_AS(verify_thm11(distance_matrix(path_graph(4)), PathPart::II), std::invalid_argument);
}

TEST_CASE("monotone eigenvectors for generated path matrices") {
    const auto s = run_thm11_suite(60, 20, 17);
    CHECK(s.ok());
    const auto signs = run_sign_suite(60, 20, 18);
    CHECK(signs.ok());
    CHECK(signs.checked == 240);
}

TEST_CASE("distance laplacian of paths") {
    auto c = verify_corollary(2);
    CHECK(c.holds());
    CHECK(c.lambda_max == doctest::Approx(2.0));
    c = verify_corollary(3);
    CHECK(c.gap == doctest::Approx(2.0));
    c = verify_corollary(4);
    CHECK(c.holds());
    CHECK(c.lambda_max == doctest::Approx(7 + kRoot5).epsilon(1e-12));
    CHECK(c.gap == doctest::Approx(1 + kRoot5).epsilon(1e-12));
    CHECK(c.cluster_size == 1);
    CHECK(c.pattern.classification == SignClass::AllPositive);
    CHECK(run_corollary_suite(2, 120).ok());
}
