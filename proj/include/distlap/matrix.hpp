#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

namespace distlap {

// Raised when an iterative numerical procedure fails to meet its tolerance.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Dense real symmetric matrix, row-major, immutable after construction.
// `exact()` is true when every entry is an integer, which lets sign checks and
// condition predicates run without tolerances.
class SymMatrix {
public:
    // Accepts entries whose asymmetry is at most 1e-12 * max|entry| and
    // averages the two triangles. Throws std::invalid_argument otherwise.
    static SymMatrix from_entries(std::size_t n, std::span<const double> entries);
    static SymMatrix from_rows(const std::vector<std::vector<double>>& rows);

    // Builds from a generator evaluated on the upper triangle (i <= j) and
    // mirrored, so symmetry is exact by construction.
    template <class F>
    static SymMatrix build(std::size_t n, F&& upper) {
        std::vector<double> e(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                const double v = static_cast<double>(upper(i, j));
                e[i * n + j] = v;
                e[j * n + i] = v;
            }
        }
        return SymMatrix(n, std::move(e));
    }

    static SymMatrix zeros(std::size_t n);

    std::size_t n() const { return n_; }
    bool exact() const { return exact_; }
    double operator()(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }
    std::span<const double> row(std::size_t i) const { return {e_.data() + i * n_, n_}; }
    std::span<const double> data() const { return e_; }

    double max_abs() const;
    // Maximum absolute row sum.
    double norm_inf() const;
    double norm_frobenius() const;

    std::vector<double> multiply(std::span<const double> x) const;

    friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

private:
    SymMatrix(std::size_t n, std::vector<double> entries);
    friend SymMatrix read_matrix_csv(std::istream& in);

    std::size_t n_ = 0;
    std::vector<double> e_;
    bool exact_ = false;
};

// General dense real matrix (the compressed matrix M is not symmetric).
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), e_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries, bool exact);

    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool exact() const { return exact_; }
    void set_exact(bool exact) { exact_ = exact; }

    double& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    std::span<double> row(std::size_t i) { return {e_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {e_.data() + i * cols_, cols_}; }
    std::span<const double> data() const { return e_; }

    std::vector<double> column(std::size_t j) const;
    std::vector<double> multiply(std::span<const double> x) const;
    Matrix multiply(const Matrix& other) const;
    Matrix transpose() const;
    double max_abs() const;
    double norm_inf() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> e_;
    bool exact_ = false;
};

// Exact integer matrix for the difference/summation operators and for
// products of integer matrices.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols, 0) {}

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::int64_t& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    std::int64_t operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    // Throws std::overflow_error if any intermediate leaves the int64 range.
    IntMatrix multiply(const IntMatrix& other) const;
    IntMatrix operator-(const IntMatrix& other) const;
    Matrix to_real() const;

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::int64_t> e_;
};

bool is_integral(double v);

// Matrix CSV: one row per line, comma-separated decimal or integer literals.
// The exactness flag is set when every token parses as an integer.
SymMatrix read_matrix_csv(std::istream& in);
void write_matrix_csv(std::ostream& out, const SymMatrix& a);

// Small vector helpers shared across modules.
double norm_inf(std::span<const double> x);
double norm2(std::span<const double> x);
double sum(std::span<const double> x);
std::vector<double> ones(std::size_t n);
std::vector<double> unit_vector(std::size_t n, std::size_t k);

}  // namespace distlap
