#include "distlap/eigh.hpp"

#include "distlap/simd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace distlap {

const Cluster& EigenDecomp::cluster_of(std::size_t k) const {
    for (const auto& c : clusters) {
        if (c.contains(k)) return c;
    }
    throw std::out_of_range("eigenvalue index out of range");
}

std::vector<Cluster> cluster_eigenvalues(std::span<const double> sorted_values, double threshold) {
    std::vector<Cluster> out;
    for (std::size_t k = 0; k < sorted_values.size(); ++k) {
        if (k > 0 && sorted_values[k] - sorted_values[k - 1] <= threshold) {
            ++out.back().size;
        } else {
            out.push_back({k, 1});
        }
    }
    return out;
}

void fix_sign(std::span<double> v) {
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double a = std::fabs(v[i]);
        if (a > best) {
            best = a;
            arg = i;
        }
    }
    if (!v.empty() && v[arg] < 0.0) {
        for (double& x : v) x = -x;
    }
}

namespace {

// Squared off-diagonal Frobenius mass of a dense symmetric n x n array,
// summed over the strict upper triangle.
double off_diagonal_mass(const std::vector<double>& a, std::size_t n, const simd::Kernels& k) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) s += k.sum_squares(a.data() + i * n + i + 1, n - i - 1);
    return 2.0 * s;
}

}  // namespace

EigenDecomp eigh(const SymMatrix& a, const EighOptions& opts) {
    if (!(opts.tol > 0.0)) throw std::invalid_argument("eigh tolerance must be positive");
    const std::size_t n = a.n();
    const auto& k = simd::active();

    std::vector<double> m(a.data().begin(), a.data().end());
    // Row r of w accumulates eigenvector r (the transposed rotation product),
    // so every rotation is a contiguous row operation.
    std::vector<double> w(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) w[i * n + i] = 1.0;

    const double norm_f = a.norm_frobenius();
    const double target = opts.tol * norm_f;
    int sweeps = 0;
    bool converged = false;

    for (;;) {
        const double off = std::sqrt(off_diagonal_mass(m, n, k));
        if (off <= target) {
            converged = true;
            break;
        }
        if (sweeps >= opts.max_sweeps) break;
        ++sweeps;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = m[p * n + q];
                if (apq == 0.0) continue;
                const double app = m[p * n + p];
                const double aqq = m[q * n + q];

                const double theta = (aqq - app) / (2.0 * apq);
                double t;
                if (std::fabs(theta) > 1e150) {
                    t = 0.5 / theta;
                } else {
                    t = 1.0 / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                    if (theta < 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                double* rp = m.data() + p * n;
                double* rq = m.data() + q * n;
                k.rotate(rp, rq, c, s, n);
                rp[p] = app - t * apq;
                rq[q] = aqq + t * apq;
                rp[q] = 0.0;
                rq[p] = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    m[r * n + p] = rp[r];
                    m[r * n + q] = rq[r];
                }
                k.rotate(w.data() + p * n, w.data() + q * n, c, s, n);
            }
        }
    }
    if (!converged) {
        throw NumericError("Jacobi eigensolver did not converge in " + std::to_string(opts.max_sweeps) + " sweeps");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return m[x * n + x] < m[y * n + y]; });

    EigenDecomp out;
    out.sweeps = sweeps;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    std::vector<double> v(n);
    for (std::size_t col = 0; col < n; ++col) {
        const std::size_t src = order[col];
        out.values[col] = m[src * n + src];
        std::copy_n(w.data() + src * n, n, v.begin());
        fix_sign(v);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, col) = v[i];

        const auto av = a.multiply(v);
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) r = std::max(r, std::fabs(av[i] - out.values[col] * v[i]));
        out.residual = std::max(out.residual, r);
    }
    out.clusters = cluster_eigenvalues(out.values, opts.cluster_rel * std::max(1.0, a.norm_inf()));
    return out;
}

std::vector<double> perron_vector(const SymMatrix& a, const EighOptions& opts) {
    const std::size_t n = a.n();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && a(i, j) < 0.0) throw std::invalid_argument("perron_vector needs nonnegative off-diagonal entries");
        }
    }
    const EigenDecomp eig = eigh(a, opts);
    const Cluster& top = eig.clusters.back();
    for (std::size_t c = top.first; c <= top.last(); ++c) {
        auto x = eig.vector(c);
        if (sum(x) < 0.0) {
            for (double& v : x) v = -v;
        }
        const double floor = -1e-10 * norm_inf(x);
        if (std::all_of(x.begin(), x.end(), [&](double v) { return v >= floor; })) return x;
    }
    throw NumericError("no nonnegative eigenvector among the top cluster's basis vectors");
}

}  // namespace distlap
