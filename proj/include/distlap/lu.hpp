#pragma once

#include "distlap/matrix.hpp"

#include <span>
#include <vector>

namespace distlap {

// Dense LU factorization with partial pivoting, P*A = L*U.
//
// Inverse iteration factors A - sigma*I with sigma on top of an eigenvalue,
// so exactly zero pivots are replaced by `pivot_floor` instead of failing.
class LuDecomposition {
public:
    explicit LuDecomposition(const Matrix& a, double pivot_floor = 0.0);

    std::size_t n() const { return n_; }
    bool singular() const { return singular_; }

    std::vector<double> solve(std::span<const double> b) const;
    double determinant() const;
    // trace(A^{-1}), used for Newton steps on det(A - xI).
    double trace_of_inverse() const;

private:
    std::size_t n_ = 0;
    Matrix lu_;
    std::vector<std::size_t> perm_;
    int sign_ = 1;
    bool singular_ = false;
};

}  // namespace distlap
