#include "distlap/laplacian.hpp"

#include "distlap/simd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace distlap {

namespace {

SymMatrix make_laplacian(const SymMatrix& a) {
    const std::size_t n = a.n();
    std::vector<double> diag(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) s += a(i, j);
        }
        diag[i] = s;
    }
    return SymMatrix::build(n, [&](std::size_t i, std::size_t j) { return i == j ? diag[i] : -a(i, j); });
}

}  // namespace

GeneralizedLaplacian::GeneralizedLaplacian(SymMatrix base) : base_(std::move(base)), matrix_(make_laplacian(base_)) {}

double GeneralizedLaplacian::scale() const { return std::max(1.0, matrix_.norm_inf()); }

GeneralizedLaplacian laplacian_of(const SymMatrix& a) { return GeneralizedLaplacian(a); }

IntMatrix build_S(std::size_t n) {
    if (n < 2) throw std::invalid_argument("S needs n >= 2");
    IntMatrix s(n - 1, n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        s(i, i) = -1;
        s(i, i + 1) = 1;
    }
    return s;
}

IntMatrix build_T(std::size_t n) {
    if (n < 2) throw std::invalid_argument("T needs n >= 2");
    IntMatrix t(n, n - 1);
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) t(i, j) = 1;
    return t;
}

namespace {

// m_ij = sum_{k > j} (l_{i+1,k} - l_{i,k}): row differences (S*L), then
// suffix sums over columns (right-multiplication by T).
template <class T, class Diff>
std::vector<T> compress_rows(std::size_t n, Diff&& row_diff) {
    const std::size_t m = n - 1;
    std::vector<T> out(m * m);
    std::vector<T> d(n);
    for (std::size_t i = 0; i < m; ++i) {
        row_diff(i, d);
        T acc = 0;
        for (std::size_t j = m; j-- > 0;) {
            acc += d[j + 1];
            out[i * m + j] = acc;
        }
    }
    return out;
}

}  // namespace

Matrix compress(const GeneralizedLaplacian& l) {
    const SymMatrix& lm = l.matrix();
    const std::size_t n = lm.n();
    if (n < 2) throw std::invalid_argument("compression needs n >= 2");
    const std::size_t m = n - 1;

    if (lm.exact()) {
        auto ints = compress_rows<std::int64_t>(n, [&](std::size_t i, std::vector<std::int64_t>& d) {
            for (std::size_t k = 0; k < n; ++k) {
                const auto hi = static_cast<std::int64_t>(lm(i + 1, k));
                const auto lo = static_cast<std::int64_t>(lm(i, k));
                if (__builtin_sub_overflow(hi, lo, &d[k])) throw std::overflow_error("compress: int64 overflow");
            }
        });
        IntMatrix im(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) im(i, j) = ints[i * m + j];
        return im.to_real();
    }

    const auto& k = simd::active();
    auto reals = compress_rows<double>(n, [&](std::size_t i, std::vector<double>& d) {
        k.sub(lm.row(i + 1).data(), lm.row(i).data(), d.data(), n);
    });
    return Matrix(m, m, std::move(reals), false);
}

std::vector<double> compress_vector(std::span<const double> y) {
    if (y.size() < 2) throw std::invalid_argument("compress_vector needs length >= 2");
    std::vector<double> out(y.size() - 1);
    simd::active().sub(y.data() + 1, y.data(), out.data(), out.size());
    return out;
}

std::vector<double> lift_vector(std::span<const double> y) {
    if (y.empty()) throw std::invalid_argument("lift_vector needs length >= 1");
    std::vector<double> x(y.size() + 1, 0.0);
    for (std::size_t i = 0; i < y.size(); ++i) x[i + 1] = x[i] + y[i];
    const double mean = sum(x) / static_cast<double>(x.size());
    for (double& v : x) v -= mean;
    return x;
}

SignPattern sign_pattern(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("sign_pattern needs a square matrix");
    SignPattern p;
    p.zero_threshold = m.exact() ? 0.0 : 1e-12 * m.max_abs();
    int first_sign = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (i == j) continue;
            const double v = m(i, j);
            int s = 0;
            if (v > p.zero_threshold) {
                s = 1;
                ++p.positive;
            } else if (v < -p.zero_threshold) {
                s = -1;
                ++p.negative;
            } else {
                ++p.zero;
            }
            if (s != 0) {
                if (first_sign == 0) {
                    first_sign = s;
                } else if (s != first_sign && !p.witness) {
                    p.witness = std::pair{static_cast<int>(i) + 1, static_cast<int>(j) + 1};
                }
            }
        }
    }
    if (p.negative == 0 && p.zero == 0) {
        p.classification = SignClass::AllPositive;
    } else if (p.positive == 0 && p.zero == 0) {
        p.classification = SignClass::AllNegative;
    } else if (p.negative == 0) {
        p.classification = SignClass::AllNonneg;
    } else if (p.positive == 0) {
        p.classification = SignClass::AllNonpos;
    } else {
        p.classification = SignClass::Mixed;
    }
    return p;
}

const char* to_string(SignClass c) {
    switch (c) {
        case SignClass::AllNonneg: return "AllNonneg";
        case SignClass::AllNonpos: return "AllNonpos";
        case SignClass::AllPositive: return "AllPositive";
        case SignClass::AllNegative: return "AllNegative";
        case SignClass::Mixed: return "Mixed";
    }
    return "?";
}

}  // namespace distlap
