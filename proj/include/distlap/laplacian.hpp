#pragma once

#include "distlap/matrix.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace distlap {

// A^L for a symmetric A: off-diagonal -a_ij, diagonal sum_{j != i} a_ij.
// Rows sum to zero, so the all-ones vector is in the kernel. The diagonal of
// A never enters.
class GeneralizedLaplacian {
public:
    explicit GeneralizedLaplacian(SymMatrix base);

    const SymMatrix& base() const { return base_; }
    const SymMatrix& matrix() const { return matrix_; }
    std::size_t n() const { return matrix_.n(); }
    bool exact() const { return matrix_.exact(); }
    // max(1, ||A^L||_inf); the unit for every residual bound.
    double scale() const;

private:
    SymMatrix base_;
    SymMatrix matrix_;
};

GeneralizedLaplacian laplacian_of(const SymMatrix& a);

// Consecutive-difference operator, (n-1) x n, rows (.. -1, 1 ..).
IntMatrix build_S(std::size_t n);
// Summation operator, n x (n-1): zero first row, lower-triangular ones below.
// S*T = I_{n-1} and T*S = I_n - 1 e_1'.
IntMatrix build_T(std::size_t n);

// M = S * A^L * T, an (n-1) x (n-1) matrix, generally not symmetric. Computed
// in int64 and flagged exact when A^L is exact. Its spectrum is that of A^L
// with one zero removed.
Matrix compress(const GeneralizedLaplacian& l);

// S*y: (y2 - y1, ..., yn - y(n-1)).
std::vector<double> compress_vector(std::span<const double> y);
// T*y minus its mean: orthogonal to the all-ones vector, and S applied to the
// result gives y back.
std::vector<double> lift_vector(std::span<const double> y);

enum class SignClass { AllNonneg, AllNonpos, AllPositive, AllNegative, Mixed };

// Sign classification of the off-diagonal entries of a square matrix.
// The most specific class wins; an all-zero off-diagonal classifies as
// AllNonneg and a 1x1 matrix (no off-diagonal entries) as AllPositive. The
// predicates below answer the sign questions from the raw counts and
// so stay correct in those degenerate cases.
struct SignPattern {
    SignClass classification = SignClass::Mixed;
    // First entry (row-major, 1-based) whose sign conflicts with an earlier one.
    std::optional<std::pair<int, int>> witness;
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t zero = 0;
    double zero_threshold = 0.0;

    bool all_nonneg() const { return negative == 0; }
    bool all_nonpos() const { return positive == 0; }
    bool all_positive() const { return negative == 0 && zero == 0; }
    bool all_negative() const { return positive == 0 && zero == 0; }
};

// Exact comparison with zero for exact matrices; otherwise |m_ij| <=
// 1e-12 * max|entry| counts as zero.
SignPattern sign_pattern(const Matrix& m);

const char* to_string(SignClass c);

}  // namespace distlap
