#pragma once

// Constructive checks of the path results: the S/T identities, the spectral
// correspondence between A^L and M = S A^L T, the sign patterns of M, the
// monotone eigenvectors obtained through a Perron vector of M, and the
// distance-Laplacian corollary for paths.

#include "distlap/classify.hpp"
#include "distlap/conditions.hpp"
#include "distlap/laplacian.hpp"
#include "distlap/matrix.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace distlap {

enum class Status { Holds, ViolationCandidate, InconclusiveMultiplicity, InconclusiveNumeric };

const char* to_string(Status s);

struct Lemma7Result {
    std::size_t n = 0;
    bool st_identity = false;  // S*T == I_{n-1}
    bool ts_identity = false;  // T*S == I_n - 1 e_1'

    bool ok() const { return st_identity && ts_identity; }
};

// Exact integer check for every 2 <= n <= n_max.
std::vector<Lemma7Result> verify_lemma7(std::size_t n_max);

struct Lemma8Tolerances {
    double spectrum = 1e-8;       // relative to max(1, max |lambda|)
    double residual = 1e-8;       // relative to max(1, ||A^L||_inf)
    double orthogonality = 1e-10; // |<x, 1>| / (||x||_2 sqrt(n))
};

struct Lemma8Report {
    std::size_t n = 0;
    std::string route;                        // how M's eigenvalues were found
    std::vector<double> laplacian_spectrum;   // A^L's eigenvalues minus the one nearest zero
    std::vector<double> compressed_spectrum;  // M's eigenvalues, independent route
    double spectrum_error = 0.0;
    double max_imaginary = 0.0;
    // S x is an eigenvector of M for every eigenvector x of A^L orthogonal to 1.
    std::size_t compressed_vectors = 0;
    double compression_residual = 0.0;
    // lift(y) is an eigenvector of A^L for every eigenvector y of M.
    std::size_t lifted_vectors = 0;
    double lift_residual = 0.0;
    double lift_orthogonality = 0.0;
    double lift_inverse_error = 0.0;  // ||S lift(y) - y||_inf / ||y||_inf

    bool spectrum_ok = false;
    bool compression_ok = false;
    bool lift_ok = false;
    bool ok() const { return spectrum_ok && compression_ok && lift_ok; }
};

Lemma8Report verify_lemma8(const SymMatrix& a, const Lemma8Tolerances& tol = {});

enum class PathPart { I, II };

struct Thm11Result {
    Status status = Status::InconclusiveNumeric;
    PathPart part = PathPart::I;
    double eigenvalue = 0.0;             // lambda_n (I) or lambda_2 (II) of A^L
    std::vector<double> compressed;      // Perron vector y of M, unit inf-norm
    std::vector<double> vector;          // lift(y), unit 2-norm
    double perron_residual = 0.0;        // ||M y - lambda y||_inf / scale(M)
    double min_compressed = 0.0;         // min_i y_i (y has unit inf-norm)
    double residual = 0.0;               // ||A^L x - lambda x||_inf / scale
    double orthogonality = 0.0;
    Monotonicity monotonicity = Monotonicity::Neither;
    SignPattern pattern;                 // of M
    int iterations = 0;
    std::string note;

    bool holds() const { return status == Status::Holds; }
};

// Follows the Perron-vector construction: M's off-diagonal is nonnegative
// (I) or nonpositive (II); shift-and-invert around the extreme eigenvalue of
// M gives an entrywise nonnegative inverse, whose power iterates converge to
// a nonnegative eigenvector y; lift(y) is then a nondecreasing eigenvector of
// A^L orthogonal to 1. Throws std::invalid_argument unless `a` satisfies the
// PathI (part I) or PathII (part II) condition.
Thm11Result verify_thm11(const SymMatrix& a, PathPart part);

struct CorollaryResult {
    Status status = Status::InconclusiveNumeric;
    int n = 0;
    double lambda_max = 0.0;
    double gap = 0.0;  // lambda_n - lambda_{n-1}
    std::size_t cluster_size = 0;
    SignPattern pattern;
    Monotonicity monotonicity = Monotonicity::Neither;
    std::vector<double> eigenvector;

    bool holds() const { return status == Status::Holds; }
};

// Distance Laplacian of the path P_n: M all positive off the diagonal,
// lambda_n simple, top eigenvector monotone.
CorollaryResult verify_corollary(int n);

// Randomized suites driving the checks above; used by the CLI and the
// acceptance tests.
struct SuiteSummary {
    std::string name;
    std::size_t checked = 0;
    std::size_t failed = 0;
    double worst = 0.0;  // worst relative error where meaningful
    std::vector<std::string> failures;  // first few failure descriptions

    bool ok() const { return failed == 0 && checked > 0; }
};

// `count` random symmetric integer matrices (entries in [-9, 9]), 2 <= n <= n_max.
SuiteSummary run_lemma8_suite(std::size_t count, int n_max, std::uint64_t seed);
// For each of PathI/PathII, weak and strict, `count` generated integer
// matrices with 2 <= n <= n_max, alternating generator families; checks the
// predicted sign of every off-diagonal entry of M exactly.
SuiteSummary run_sign_suite(std::size_t count, int n_max, std::uint64_t seed);
// `count` generated matrices per part, 2 <= n <= n_max.
SuiteSummary run_thm11_suite(std::size_t count, int n_max, std::uint64_t seed);
SuiteSummary run_corollary_suite(int n_min, int n_max);

}  // namespace distlap
