#pragma once

#include "distlap/matrix.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace distlap {

// Maximal run of eigenvalue indices [first, first + size) whose consecutive
// gaps are below the cluster threshold; treated as one eigenspace.
struct Cluster {
    std::size_t first = 0;
    std::size_t size = 0;

    std::size_t last() const { return first + size - 1; }
    bool contains(std::size_t k) const { return k >= first && k < first + size; }
};

struct EighOptions {
    // Stop when the off-diagonal Frobenius mass is below tol * ||A||_F.
    double tol = 1e-12;
    int max_sweeps = 100;
    // lambda_{k+1} - lambda_k <= cluster_rel * max(1, ||A||_inf) joins a cluster.
    double cluster_rel = 1e-8;
};

struct EigenDecomp {
    std::vector<double> values;  // nondecreasing
    Matrix vectors;              // column k is the unit eigenvector for values[k]
    std::vector<Cluster> clusters;
    double residual = 0.0;  // max_k ||A v_k - lambda_k v_k||_inf
    int sweeps = 0;

    std::size_t n() const { return values.size(); }
    std::vector<double> vector(std::size_t k) const { return vectors.column(k); }
    const Cluster& cluster_of(std::size_t k) const;
};

// Cyclic Jacobi eigensolver. Eigenvectors are sign-fixed so that the
// largest-magnitude component is nonnegative (lowest index wins ties).
// Throws NumericError when max_sweeps is exhausted.
EigenDecomp eigh(const SymMatrix& a, const EighOptions& opts = {});

std::vector<Cluster> cluster_eigenvalues(std::span<const double> sorted_values, double threshold);

// Flip so the largest-magnitude component (lowest index on ties) is >= 0.
void fix_sign(std::span<double> v);

// Eigenvector of the largest eigenvalue with all components >= -1e-10*||x||_inf,
// sign-flipped so its component sum is nonnegative. Off-diagonal entries of
// `a` must be nonnegative (std::invalid_argument otherwise). If no basis
// vector of the top cluster passes the screen, throws NumericError.
std::vector<double> perron_vector(const SymMatrix& a, const EighOptions& opts = {});

}  // namespace distlap
