#include "distlap/matrix.hpp"

#include "distlap/simd.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace distlap {

bool is_integral(double v) { return std::isfinite(v) && std::trunc(v) == v; }

SymMatrix::SymMatrix(std::size_t n, std::vector<double> entries) : n_(n), e_(std::move(entries)) {
    if (n_ == 0) throw std::invalid_argument("matrix dimension must be at least 1");
    exact_ = std::all_of(e_.begin(), e_.end(), is_integral);
}

SymMatrix SymMatrix::from_entries(std::size_t n, std::span<const double> entries) {
    if (n == 0) throw std::invalid_argument("matrix dimension must be at least 1");
    if (entries.size() != n * n) throw std::invalid_argument("entry count does not match n*n");
    double scale = 0.0;
    for (double v : entries) {
        if (!std::isfinite(v)) throw std::invalid_argument("matrix entries must be finite");
        scale = std::max(scale, std::fabs(v));
    }
    // 1e-12 relative, plus room for the binary rounding of decimal inputs
    // that sit exactly on the boundary.
    const double tol = 1e-12 * scale * (1.0 + 1e-3);
    std::vector<double> e(entries.begin(), entries.end());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double a = e[i * n + j];
            const double b = e[j * n + i];
            if (std::fabs(a - b) > tol) {
                throw std::invalid_argument("matrix is not symmetric at (" + std::to_string(i + 1) + "," +
                                            std::to_string(j + 1) + ")");
            }
            const double avg = a == b ? a : 0.5 * (a + b);
            e[i * n + j] = avg;
            e[j * n + i] = avg;
        }
    }
    return SymMatrix(n, std::move(e));
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    std::vector<double> e;
    e.reserve(n * n);
    for (const auto& r : rows) {
        if (r.size() != n) throw std::invalid_argument("matrix rows must all have length n");
        e.insert(e.end(), r.begin(), r.end());
    }
    return from_entries(n, e);
}

SymMatrix SymMatrix::zeros(std::size_t n) { return SymMatrix(n, std::vector<double>(n * n, 0.0)); }

double SymMatrix::max_abs() const { return simd::active().max_abs(e_.data(), e_.size()); }

double SymMatrix::norm_inf() const {
    double m = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        double s = 0.0;
        for (double v : row(i)) s += std::fabs(v);
        m = std::max(m, s);
    }
    return m;
}

double SymMatrix::norm_frobenius() const { return std::sqrt(simd::active().sum_squares(e_.data(), e_.size())); }

std::vector<double> SymMatrix::multiply(std::span<const double> x) const {
    if (x.size() != n_) throw std::invalid_argument("vector length does not match matrix");
    const auto& k = simd::active();
    std::vector<double> y(n_);
    for (std::size_t i = 0; i < n_; ++i) y[i] = k.dot(e_.data() + i * n_, x.data(), n_);
    return y;
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries, bool exact)
    : rows_(rows), cols_(cols), e_(std::move(entries)), exact_(exact) {
    if (e_.size() != rows_ * cols_) throw std::invalid_argument("entry count does not match shape");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    m.exact_ = true;
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.front().size() : 0;
    std::vector<double> e;
    e.reserve(r * c);
    for (const auto& row : rows) {
        if (row.size() != c) throw std::invalid_argument("ragged matrix rows");
        e.insert(e.end(), row.begin(), row.end());
    }
    const bool exact = std::all_of(e.begin(), e.end(), is_integral);
    return Matrix(r, c, std::move(e), exact);
}

std::vector<double> Matrix::column(std::size_t j) const {
    std::vector<double> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

std::vector<double> Matrix::multiply(std::span<const double> x) const {
    if (x.size() != cols_) throw std::invalid_argument("vector length does not match matrix");
    const auto& k = simd::active();
    std::vector<double> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) y[i] = k.dot(e_.data() + i * cols_, x.data(), cols_);
    return y;
}

Matrix Matrix::multiply(const Matrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("shape mismatch in matrix product");
    const auto& k = simd::active();
    Matrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t l = 0; l < cols_; ++l) {
            const double a = (*this)(i, l);
            if (a != 0.0) k.axpy(a, other.e_.data() + l * other.cols_, out.e_.data() + i * other.cols_, other.cols_);
        }
    }
    out.exact_ = exact_ && other.exact_;
    return out;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    t.exact_ = exact_;
    return t;
}

double Matrix::max_abs() const { return simd::active().max_abs(e_.data(), e_.size()); }

double Matrix::norm_inf() const {
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (double v : row(i)) s += std::fabs(v);
        m = std::max(m, s);
    }
    return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::multiply(const IntMatrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("shape mismatch in matrix product");
    IntMatrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < other.cols_; ++j) {
            std::int64_t acc = 0;
            for (std::size_t l = 0; l < cols_; ++l) {
                std::int64_t p = 0;
                if (__builtin_mul_overflow((*this)(i, l), other(l, j), &p) || __builtin_add_overflow(acc, p, &acc)) {
                    throw std::overflow_error("integer matrix product overflows int64");
                }
            }
            out(i, j) = acc;
        }
    }
    return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("shape mismatch");
    IntMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i] - other.e_[i];
    return out;
}

Matrix IntMatrix::to_real() const {
    std::vector<double> e(e_.size());
    constexpr std::int64_t kExactLimit = std::int64_t{1} << 53;
    for (std::size_t i = 0; i < e_.size(); ++i) {
        if (e_[i] > kExactLimit || e_[i] < -kExactLimit) throw std::overflow_error("entry not exactly representable");
        e[i] = static_cast<double>(e_[i]);
    }
    return Matrix(rows_, cols_, std::move(e), true);
}

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

SymMatrix read_matrix_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    bool all_integers = true;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            const std::string tok = trim(cell);
            if (tok.empty()) throw std::invalid_argument("empty cell on line " + std::to_string(line_no));
            std::int64_t iv = 0;
            const auto ir = std::from_chars(tok.data(), tok.data() + tok.size(), iv);
            if (ir.ec == std::errc() && ir.ptr == tok.data() + tok.size()) {
                row.push_back(static_cast<double>(iv));
                continue;
            }
            double dv = 0.0;
            const auto dr = std::from_chars(tok.data(), tok.data() + tok.size(), dv);
            if (dr.ec != std::errc() || dr.ptr != tok.data() + tok.size()) {
                throw std::invalid_argument("cannot parse '" + tok + "' on line " + std::to_string(line_no));
            }
            all_integers = false;
            row.push_back(dv);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::invalid_argument("matrix file is empty");
    SymMatrix a = SymMatrix::from_rows(rows);
    // "2.0" is a decimal literal: the flag follows the tokens, not the values.
    if (!all_integers) a.exact_ = false;
    return a;
}

void write_matrix_csv(std::ostream& out, const SymMatrix& a) {
    char buf[64];
    for (std::size_t i = 0; i < a.n(); ++i) {
        for (std::size_t j = 0; j < a.n(); ++j) {
            if (j) out << ',';
            const auto r = std::to_chars(buf, buf + sizeof buf, a(i, j));
            out.write(buf, r.ptr - buf);
        }
        out << '\n';
    }
}

double norm_inf(std::span<const double> x) { return simd::active().max_abs(x.data(), x.size()); }

double norm2(std::span<const double> x) { return std::sqrt(simd::active().sum_squares(x.data(), x.size())); }

double sum(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
}

std::vector<double> ones(std::size_t n) { return std::vector<double>(n, 1.0); }

std::vector<double> unit_vector(std::size_t n, std::size_t k) {
    std::vector<double> e(n, 0.0);
    e.at(k) = 1.0;
    return e;
}

}  // namespace distlap
