#include "distlap/spectrum_check.hpp"

#include "distlap/lu.hpp"
#include "distlap/rng.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace distlap {

std::vector<long double> characteristic_polynomial(const Matrix& m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("characteristic polynomial needs a square matrix");
    using Mat = std::vector<long double>;
    auto mul = [n](const Mat& a, const Mat& b) {
        Mat c(n * n, 0.0L);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) {
                const long double x = a[i * n + l];
                if (x == 0.0L) continue;
                for (std::size_t j = 0; j < n; ++j) c[i * n + j] += x * b[l * n + j];
            }
        return c;
    };
    Mat a(n * n);
    for (std::size_t i = 0; i < n * n; ++i) a[i] = m.data()[i];

    std::vector<long double> c(n + 1, 0.0L);
    c[n] = 1.0L;
    Mat mk(n * n, 0.0L);  // M_0 = 0
    for (std::size_t k = 1; k <= n; ++k) {
        Mat next = mul(a, mk);
        for (std::size_t i = 0; i < n; ++i) next[i * n + i] += c[n - k + 1];
        mk = std::move(next);
        const Mat am = mul(a, mk);
        long double tr = 0.0L;
        for (std::size_t i = 0; i < n; ++i) tr += am[i * n + i];
        c[n - k] = -tr / static_cast<long double>(k);
    }
    return c;
}

std::vector<std::complex<long double>> polynomial_roots(std::span<const long double> coeffs) {
    using C = std::complex<long double>;
    std::size_t deg = coeffs.size() - 1;
    while (deg > 0 && coeffs[deg] == 0.0L) --deg;
    if (deg == 0) return {};
    const long double lead = coeffs[deg];
    long double bound = 0.0L;
    for (std::size_t k = 0; k < deg; ++k) bound = std::max(bound, std::fabs(coeffs[k] / lead));
    const long double radius = 1.0L + bound;

    auto eval = [&](C z, C& dp) {
        C p = coeffs[deg];
        dp = 0.0L;
        for (std::size_t k = deg; k-- > 0;) {
            dp = dp * z + p;
            p = p * z + coeffs[k];
        }
        return p;
    };

    std::vector<C> z(deg);
    for (std::size_t k = 0; k < deg; ++k) {
        const long double ang = 2.0L * std::numbers::pi_v<long double> * k / deg + 0.4L;
        z[k] = std::polar(radius, ang);
    }
    for (int iter = 0; iter < 1000; ++iter) {
        long double biggest = 0.0L;
        for (std::size_t k = 0; k < deg; ++k) {
            C dp;
            const C p = eval(z[k], dp);
            if (p == C(0.0L)) continue;
            const C ratio = p / dp;
            C s = 0.0L;
            for (std::size_t j = 0; j < deg; ++j) {
                if (j != k) s += 1.0L / (z[k] - z[j]);
            }
            const C w = ratio / (1.0L - ratio * s);
            z[k] -= w;
            biggest = std::max(biggest, std::abs(w));
        }
        if (biggest <= 1e-18L * radius) break;
    }
    return z;
}

namespace {

// Newton on f(x) = det(M - xI): f'/f = -tr((M - xI)^{-1}).
double polish_root(const Matrix& m, double x) {
    const std::size_t n = m.rows();
    const double floor = 1e-300;
    double last_step = INFINITY;
    for (int it = 0; it < 30; ++it) {
        Matrix shifted = m;
        for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= x;
        const LuDecomposition lu(shifted, floor);
        if (lu.singular()) break;
        const double tr = lu.trace_of_inverse();
        if (!std::isfinite(tr) || tr == 0.0) break;
        const double step = 1.0 / tr;
        if (!(std::fabs(step) < last_step)) break;
        x += step;
        last_step = std::fabs(step);
        if (last_step <= 1e-15 * std::max(1.0, std::fabs(x))) break;
    }
    return x;
}

NonsymmetricSpectrum finish(std::string route, std::vector<double> re, double max_im) {
    std::sort(re.begin(), re.end());
    return {std::move(route), std::move(re), max_im};
}

}  // namespace

NonsymmetricSpectrum companion_route_spectrum(const Matrix& m) {
    if (m.rows() > kCompanionRouteMax) throw std::invalid_argument("companion route is limited to small matrices");
    const auto coeffs = characteristic_polynomial(m);
    const auto roots = polynomial_roots(coeffs);
    std::vector<double> re;
    double max_im = 0.0;
    for (const auto& r : roots) {
        max_im = std::max(max_im, static_cast<double>(std::fabs(r.imag())));
        re.push_back(polish_root(m, static_cast<double>(r.real())));
    }
    return finish("companion", std::move(re), max_im);
}

NonsymmetricSpectrum general_route_spectrum(const Matrix& m) {
    const auto n = static_cast<Eigen::Index>(m.rows());
    Eigen::MatrixXd em(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) em(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    Eigen::EigenSolver<Eigen::MatrixXd> solver(em, false);
    if (solver.info() != Eigen::Success) throw NumericError("general eigensolver failed");
    std::vector<double> re;
    double max_im = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        re.push_back(solver.eigenvalues()[i].real());
        max_im = std::max(max_im, std::fabs(solver.eigenvalues()[i].imag()));
    }
    return finish("general", std::move(re), max_im);
}

NonsymmetricSpectrum nonsymmetric_spectrum(const Matrix& m) {
    return m.rows() <= kCompanionRouteMax ? companion_route_spectrum(m) : general_route_spectrum(m);
}

std::vector<double> inverse_iteration(const Matrix& m, double shift, int iterations) {
    const std::size_t n = m.rows();
    Matrix shifted = m;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= shift;
    const double floor = 1e-14 * std::max(1.0, m.norm_inf());
    const LuDecomposition lu(shifted, floor);
    CounterRng rng(0x5eedULL + n);
    std::vector<double> y(n);
    for (double& v : y) v = rng.uniform() - 0.5;
    for (int it = 0; it < iterations; ++it) {
        y = lu.solve(y);
        const double s = norm_inf(y);
        if (!(s > 0.0) || !std::isfinite(s)) throw NumericError("inverse iteration broke down");
        for (double& v : y) v /= s;
    }
    return y;
}

}  // namespace distlap
