#include "distlap/verify.hpp"

#include "distlap/eigh.hpp"
#include "distlap/lu.hpp"
#include "distlap/rng.hpp"
#include "distlap/spectrum_check.hpp"
#include "distlap/tree.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace distlap {

const char* to_string(Status s) {
    switch (s) {
        case Status::Holds: return "Holds";
        case Status::ViolationCandidate: return "ViolationCandidate";
        case Status::InconclusiveMultiplicity: return "InconclusiveMultiplicity";
        case Status::InconclusiveNumeric: return "InconclusiveNumeric";
    }
    return "?";
}

std::vector<Lemma7Result> verify_lemma7(std::size_t n_max) {
    if (n_max < 2) throw std::invalid_argument("operator check needs n_max >= 2");
    std::vector<Lemma7Result> out;
    for (std::size_t n = 2; n <= n_max; ++n) {
        const IntMatrix s = build_S(n);
        const IntMatrix t = build_T(n);
        IntMatrix expected_ts = IntMatrix::identity(n);
        for (std::size_t i = 0; i < n; ++i) expected_ts(i, 0) -= 1;
        out.push_back({n, s.multiply(t) == IntMatrix::identity(n - 1), t.multiply(s) == expected_ts});
    }
    return out;
}

namespace {

double inf_residual(const std::vector<double>& mx, const std::vector<double>& x, double lambda) {
    double r = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) r = std::max(r, std::fabs(mx[i] - lambda * x[i]));
    return r;
}

double orthogonality(std::span<const double> x) {
    const double n2 = norm2(x);
    if (n2 == 0.0) return 0.0;
    return std::fabs(sum(x)) / (n2 * std::sqrt(static_cast<double>(x.size())));
}

}  // namespace

Lemma8Report verify_lemma8(const SymMatrix& a, const Lemma8Tolerances& tol) {
    Lemma8Report rep;
    const std::size_t n = a.n();
    rep.n = n;
    if (n < 2) throw std::invalid_argument("spectral check needs n >= 2");
    const GeneralizedLaplacian lap = laplacian_of(a);
    const double scale = lap.scale();
    const Matrix m = compress(lap);
    const EigenDecomp eig = eigh(lap.matrix());

    // (i) the spectrum of M is that of A^L with one zero removed.
    std::size_t zero_at = 0;
    for (std::size_t k = 1; k < n; ++k) {
        if (std::fabs(eig.values[k]) < std::fabs(eig.values[zero_at])) zero_at = k;
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (k != zero_at) rep.laplacian_spectrum.push_back(eig.values[k]);
    }
    const NonsymmetricSpectrum ms = nonsymmetric_spectrum(m);
    rep.route = ms.route;
    rep.compressed_spectrum = ms.values;
    rep.max_imaginary = ms.max_imaginary;
    double biggest = 1.0;
    for (double v : rep.laplacian_spectrum) biggest = std::max(biggest, std::fabs(v));
    for (std::size_t k = 0; k + 1 < n; ++k) {
        rep.spectrum_error = std::max(rep.spectrum_error, std::fabs(rep.laplacian_spectrum[k] - ms.values[k]) / biggest);
    }
    rep.spectrum_ok = rep.spectrum_error <= tol.spectrum && ms.max_imaginary / biggest <= tol.spectrum;

    // (ii) S x is an eigenvector of M whenever x is one of A^L orthogonal to 1.
    for (std::size_t k = 0; k < n; ++k) {
        const auto x = eig.vector(k);
        if (orthogonality(x) > tol.orthogonality) continue;
        const auto sx = compress_vector(x);
        rep.compression_residual = std::max(rep.compression_residual, inf_residual(m.multiply(sx), sx, eig.values[k]) / scale);
        ++rep.compressed_vectors;
    }
    rep.compression_ok = rep.compressed_vectors + 1 >= n && rep.compression_residual <= tol.residual;

    // (iii) lift every eigenvector of M, each found by inverse iteration at
    // an eigenvalue from the independent route.
    bool lift_failed = false;
    for (double alpha : ms.values) {
        std::vector<double> y;
        try {
            y = inverse_iteration(m, alpha);
        } catch (const NumericError&) {
            lift_failed = true;
            continue;
        }
        const auto x = lift_vector(y);
        const double xs = norm_inf(x);
        if (!(xs > 0.0)) {
            lift_failed = true;
            continue;
        }
        rep.lift_residual = std::max(rep.lift_residual, inf_residual(lap.matrix().multiply(x), x, alpha) / (scale * xs));
        rep.lift_orthogonality = std::max(rep.lift_orthogonality, orthogonality(x));
        const auto back = compress_vector(x);
        double err = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) err = std::max(err, std::fabs(back[i] - y[i]));
        rep.lift_inverse_error = std::max(rep.lift_inverse_error, err / norm_inf(y));
        ++rep.lifted_vectors;
    }
    rep.lift_ok = !lift_failed && rep.lift_residual <= tol.residual && rep.lift_orthogonality <= tol.orthogonality &&
                  rep.lift_inverse_error <= 1e-12;
    return rep;
}

namespace {

// Power iteration with B^{-1}, where B = sigma I - M (part I) or M - sigma I
// (part II) is a nonsingular M-matrix; its inverse is entrywise nonnegative,
// so the iterates started from the ones vector never leave the cone.
std::vector<double> shifted_perron(const Matrix& m, double sigma, PathPart part, int& iterations) {
    const std::size_t k = m.rows();
    Matrix b(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) b(i, j) = part == PathPart::I ? -m(i, j) : m(i, j);
        b(i, i) += part == PathPart::I ? sigma : -sigma;
    }
    const LuDecomposition lu(b);
    if (lu.singular()) throw NumericError("shifted compressed matrix is singular");
    std::vector<double> y(k, 1.0);
    for (iterations = 1; iterations <= 60; ++iterations) {
        auto next = lu.solve(y);
        const double s = norm_inf(next);
        if (!(s > 0.0) || !std::isfinite(s)) throw NumericError("shifted power iteration broke down");
        double change = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            next[i] /= s;
            change = std::max(change, std::fabs(next[i] - y[i]));
        }
        y = std::move(next);
        if (change <= 1e-15) break;
    }
    return y;
}

}  // namespace

Thm11Result verify_thm11(const SymMatrix& a, PathPart part) {
    const Condition cond{part == PathPart::I ? ConditionKind::PathI : ConditionKind::PathII, false};
    if (!check_condition(a, cond)) throw std::invalid_argument("matrix does not satisfy the path condition");
    const std::size_t n = a.n();
    if (n < 2) throw std::invalid_argument("need n >= 2");

    Thm11Result res;
    res.part = part;
    const GeneralizedLaplacian lap = laplacian_of(a);
    const double scale = lap.scale();
    const Matrix m = compress(lap);
    res.pattern = sign_pattern(m);
    const EigenDecomp eig = eigh(lap.matrix());
    res.eigenvalue = part == PathPart::I ? eig.values.back() : eig.values[1];

    const double delta = 1e-9 * scale;
    const double sigma = part == PathPart::I ? res.eigenvalue + delta : res.eigenvalue - delta;
    try {
        res.compressed = shifted_perron(m, sigma, part, res.iterations);
    } catch (const NumericError& e) {
        res.note = e.what();
        return res;
    }
    const auto my = m.multiply(res.compressed);
    res.perron_residual = inf_residual(my, res.compressed, res.eigenvalue) / std::max(1.0, m.norm_inf());
    res.min_compressed = *std::min_element(res.compressed.begin(), res.compressed.end());

    auto x = lift_vector(res.compressed);
    const double xn = norm2(x);
    if (!(xn > 0.0)) {
        res.note = "lifted vector vanished";
        return res;
    }
    for (double& v : x) v /= xn;
    res.vector = x;
    res.residual = inf_residual(lap.matrix().multiply(x), x, res.eigenvalue) / scale;
    res.orthogonality = orthogonality(x);
    res.monotonicity = is_monotone(x);

    if (res.residual > 1e-8 || res.perron_residual > 1e-8 || res.orthogonality > 1e-10) {
        res.status = Status::InconclusiveNumeric;
        res.note = "eigen-residual above tolerance";
    } else if (res.min_compressed < -1e-10 || res.monotonicity != Monotonicity::Nondecreasing) {
        res.status = Status::ViolationCandidate;
        res.note = "lifted Perron vector is not nondecreasing";
    } else {
        res.status = Status::Holds;
    }
    return res;
}

CorollaryResult verify_corollary(int n) {
    if (n < 2) throw std::invalid_argument("corollary needs n >= 2");
    CorollaryResult res;
    res.n = n;
    const Tree p = path_graph(n);
    const GeneralizedLaplacian lap = laplacian_of(distance_matrix(p));
    res.pattern = sign_pattern(compress(lap));
    const EigenDecomp eig = eigh(lap.matrix());
    const std::size_t top = eig.n() - 1;
    res.lambda_max = eig.values[top];
    res.gap = eig.values[top] - eig.values[top - 1];
    res.cluster_size = eig.cluster_of(top).size;
    res.eigenvector = eig.vector(top);
    res.monotonicity = is_monotone(res.eigenvector);

    const bool monotone = res.monotonicity == Monotonicity::Nondecreasing || res.monotonicity == Monotonicity::Nonincreasing;
    if (res.cluster_size != 1) {
        res.status = Status::InconclusiveMultiplicity;
    } else if (!res.pattern.all_positive() || !monotone) {
        res.status = Status::ViolationCandidate;
    } else {
        res.status = Status::Holds;
    }
    return res;
}

namespace {

void note_failure(SuiteSummary& s, const std::string& what) {
    ++s.failed;
    if (s.failures.size() < 8) s.failures.push_back(what);
}

}  // namespace

SuiteSummary run_lemma8_suite(std::size_t count, int n_max, std::uint64_t seed) {
    if (n_max < 2) throw std::invalid_argument("spectral suite needs n_max >= 2");
    SuiteSummary s;
    s.name = "lemma8";
    for (std::size_t t = 0; t < count; ++t) {
        CounterRng rng(derive_seed(seed, t));
        const auto n = static_cast<std::size_t>(rng.between(2, n_max));
        std::vector<double> e(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                e[i * n + j] = e[j * n + i] = static_cast<double>(rng.between(-9, 9));
            }
        }
        const Lemma8Report rep = verify_lemma8(SymMatrix::from_entries(n, e));
        s.worst = std::max({s.worst, rep.spectrum_error, rep.compression_residual, rep.lift_residual});
        ++s.checked;
        if (!rep.ok()) {
            std::ostringstream os;
            os << "trial " << t << " n=" << n << " spectrum=" << rep.spectrum_error << " compress=" << rep.compression_residual
               << " lift=" << rep.lift_residual << " orth=" << rep.lift_orthogonality;
            note_failure(s, os.str());
        }
    }
    return s;
}

SuiteSummary run_sign_suite(std::size_t count, int n_max, std::uint64_t seed) {
    if (n_max < 3) throw std::invalid_argument("sign suite needs n_max >= 3");
    SuiteSummary s;
    s.name = "sign-pattern";
    std::uint64_t stream = 0;
    for (const ConditionKind kind : {ConditionKind::PathI, ConditionKind::PathII}) {
        for (const bool strict : {false, true}) {
            const Condition cond{kind, strict};
            for (std::size_t t = 0; t < count; ++t) {
                const std::uint64_t trial = derive_seed(seed, stream++);
                CounterRng rng(trial);
                const int n = static_cast<int>(rng.between(3, n_max));
                const Family fam = t % 2 == 0 ? Family::DistanceTransform : Family::RepairedRandom;
                const SymMatrix a = gen_condition_matrix(cond, n, derive_seed(trial, 1), fam);
                const Matrix m = compress(laplacian_of(a));
                const SignPattern p = sign_pattern(m);
                bool ok;
                if (kind == ConditionKind::PathI) {
                    ok = strict ? p.all_positive() : p.all_nonneg();
                } else {
                    ok = strict ? p.all_negative() : p.all_nonpos();
                }
                ok = ok && m.exact();
                ++s.checked;
                if (!ok) {
                    note_failure(s, to_string(kind) + (strict ? " strict" : " weak") + " n=" + std::to_string(n) + " got " +
                                        to_string(p.classification));
                }
            }
        }
    }
    return s;
}

SuiteSummary run_thm11_suite(std::size_t count, int n_max, std::uint64_t seed) {
    if (n_max < 2) throw std::invalid_argument("monotone-vector suite needs n_max >= 2");
    SuiteSummary s;
    s.name = "thm11";
    std::uint64_t stream = 0;
    for (const PathPart part : {PathPart::I, PathPart::II}) {
        const Condition cond{part == PathPart::I ? ConditionKind::PathI : ConditionKind::PathII, false};
        for (std::size_t t = 0; t < count; ++t) {
            const std::uint64_t trial = derive_seed(seed, stream++);
            CounterRng rng(trial);
            const int n = static_cast<int>(rng.between(2, n_max));
            const Family fam = t % 2 == 0 ? Family::DistanceTransform : Family::RepairedRandom;
            const SymMatrix a = gen_condition_matrix(cond, n, derive_seed(trial, 1), fam);
            const Thm11Result r = verify_thm11(a, part);
            s.worst = std::max(s.worst, r.residual);
            ++s.checked;
            if (!r.holds()) {
                note_failure(s, std::string(part == PathPart::I ? "part I" : "part II") + " n=" + std::to_string(n) + " " +
                                    to_string(r.status) + ": " + r.note);
            }
        }
    }
    return s;
}

SuiteSummary run_corollary_suite(int n_min, int n_max) {
    SuiteSummary s;
    s.name = "corollary";
    for (int n = std::max(2, n_min); n <= n_max; ++n) {
        const CorollaryResult r = verify_corollary(n);
        ++s.checked;
        if (!r.holds()) {
            note_failure(s, "n=" + std::to_string(n) + " " + to_string(r.status) + " cluster=" + std::to_string(r.cluster_size));
        }
    }
    return s;
}

}  // namespace distlap
