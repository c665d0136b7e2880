#include "distlap/lu.hpp"

#include "distlap/simd.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace distlap {

LuDecomposition::LuDecomposition(const Matrix& a, double pivot_floor) : n_(a.rows()), lu_(a), perm_(a.rows()) {
    if (a.rows() != a.cols()) throw std::invalid_argument("LU needs a square matrix");
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    const auto& k = simd::active();

    for (std::size_t col = 0; col < n_; ++col) {
        std::size_t piv = col;
        double best = std::fabs(lu_(col, col));
        for (std::size_t r = col + 1; r < n_; ++r) {
            const double v = std::fabs(lu_(r, col));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (piv != col) {
            auto rc = lu_.row(col);
            auto rp = lu_.row(piv);
            std::swap_ranges(rc.begin(), rc.end(), rp.begin());
            std::swap(perm_[col], perm_[piv]);
            sign_ = -sign_;
        }
        if (lu_(col, col) == 0.0) {
            singular_ = true;
            if (pivot_floor <= 0.0) continue;
            lu_(col, col) = pivot_floor;
        }
        const double inv = 1.0 / lu_(col, col);
        const std::size_t tail = n_ - col - 1;
        for (std::size_t r = col + 1; r < n_; ++r) {
            const double f = lu_(r, col) * inv;
            lu_(r, col) = f;
            if (f != 0.0) k.axpy(-f, lu_.row(col).data() + col + 1, lu_.row(r).data() + col + 1, tail);
        }
    }
}

std::vector<double> LuDecomposition::solve(std::span<const double> b) const {
    if (b.size() != n_) throw std::invalid_argument("right-hand side length mismatch");
    if (singular_) {
        for (std::size_t i = 0; i < n_; ++i) {
            if (lu_(i, i) == 0.0) throw NumericError("singular matrix in LU solve");
        }
    }
    const auto& k = simd::active();
    std::vector<double> x(n_);
    for (std::size_t i = 0; i < n_; ++i) x[i] = b[perm_[i]];
    for (std::size_t i = 0; i < n_; ++i) x[i] -= k.dot(lu_.row(i).data(), x.data(), i);
    for (std::size_t i = n_; i-- > 0;) {
        const double s = k.dot(lu_.row(i).data() + i + 1, x.data() + i + 1, n_ - i - 1);
        x[i] = (x[i] - s) / lu_(i, i);
    }
    return x;
}

double LuDecomposition::determinant() const {
    double d = sign_;
    for (std::size_t i = 0; i < n_; ++i) d *= lu_(i, i);
    return d;
}

double LuDecomposition::trace_of_inverse() const {
    double t = 0.0;
    for (std::size_t j = 0; j < n_; ++j) t += solve(unit_vector(n_, j))[j];
    return t;
}

}  // namespace distlap
