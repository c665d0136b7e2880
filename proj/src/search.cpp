#include "distlap/search.hpp"

#include "distlap/laplacian.hpp"
#include "distlap/lu.hpp"
#include "distlap/rng.hpp"
#include "distlap/simd.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace distlap {

std::string to_string(ConjectureKind k) { return k == ConjectureKind::Conj1 ? "conj1" : "conj2"; }

std::string to_string(MatrixFamily f) {
    switch (f) {
        case MatrixFamily::Adjacency: return "adjacency";
        case MatrixFamily::Distance: return "distance";
        case MatrixFamily::DistanceTransform: return "transform";
        case MatrixFamily::RepairedRandom: return "repaired";
    }
    return "?";
}

std::optional<ConjectureKind> parse_conjecture_kind(const std::string& s) {
    if (s == "conj1") return ConjectureKind::Conj1;
    if (s == "conj2") return ConjectureKind::Conj2;
    return std::nullopt;
}

std::optional<MatrixFamily> parse_matrix_family(const std::string& s) {
    for (auto f : {MatrixFamily::Adjacency, MatrixFamily::Distance, MatrixFamily::DistanceTransform, MatrixFamily::RepairedRandom}) {
        if (s == to_string(f)) return f;
    }
    return std::nullopt;
}

namespace {

template <class T>
bool parse_number(std::string_view s, T& out) {
    if (s.empty()) return false;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), out);
    return r.ec == std::errc{} && r.ptr == s.data() + s.size();
}

}  // namespace

std::optional<TreeSource> parse_tree_source(const std::string& s) {
    const std::string_view v = s;
    TreeSource t;
    if (v.starts_with("exhaustive:")) {
        t.exhaustive = true;
        if (!parse_number(v.substr(11), t.n)) return std::nullopt;
        return t;
    }
    if (v.starts_with("random:")) {
        t.exhaustive = false;
        const auto rest = v.substr(7);
        const auto colon = rest.find(':');
        if (colon == std::string_view::npos) return std::nullopt;
        if (!parse_number(rest.substr(0, colon), t.n) || !parse_number(rest.substr(colon + 1), t.count)) return std::nullopt;
        return t;
    }
    return std::nullopt;
}

std::string to_string(const TreeSource& t) {
    if (t.exhaustive) return "exhaustive:" + std::to_string(t.n);
    return "random:" + std::to_string(t.n) + ":" + std::to_string(t.count);
}

Condition hypothesis(ConjectureKind kind) {
    return {kind == ConjectureKind::Conj1 ? ConditionKind::Conj1Tree : ConditionKind::Conj2Tree, false};
}

void validate(const SearchConfig& cfg) {
    const auto& t = cfg.trees;
    if (t.exhaustive) {
        if (t.n < 2 || t.n > kMaxEnumerationSize) throw std::invalid_argument("exhaustive search supports 2 <= n <= 9");
    } else {
        if (t.n < 2 || t.n > 4096) throw std::invalid_argument("random trees need 2 <= n <= 4096");
        if (t.count < 1) throw std::invalid_argument("random trees need a positive count");
    }
    if (cfg.family == MatrixFamily::Adjacency && cfg.kind != ConjectureKind::Conj1) {
        throw std::invalid_argument("the adjacency matrix satisfies only the conj1 hypothesis");
    }
    if (cfg.family == MatrixFamily::Distance && cfg.kind != ConjectureKind::Conj2) {
        throw std::invalid_argument("the distance matrix satisfies only the conj2 hypothesis");
    }
    const bool fixed = cfg.family == MatrixFamily::Adjacency || cfg.family == MatrixFamily::Distance;
    if (cfg.trials < 1) throw std::invalid_argument("trials must be positive");
    if (fixed && cfg.trials != 1) throw std::invalid_argument("adjacency and distance families admit one matrix per tree");
    if (cfg.samples < 0) throw std::invalid_argument("samples must be nonnegative");
    if (cfg.workers < 1 || cfg.workers > 256) throw std::invalid_argument("workers must be in 1..256");
    const auto& tol = cfg.tol;
    for (double v : {tol.zero, tol.cluster, tol.eig, tol.refine, tol.tightened_zero}) {
        if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("tolerances must be positive and finite");
    }
}

int combination_budget(int samples, std::size_t d) {
    if (d <= 3) return samples;
    return std::max(1, static_cast<int>(static_cast<std::uint64_t>(samples) * 3 / d));
}

namespace {

std::size_t target_index(ConjectureKind kind, std::size_t n) { return kind == ConjectureKind::Conj1 ? 1 : n - 1; }

double residual_inf(const SymMatrix& l, const std::vector<double>& x, double lambda) {
    const auto lx = l.multiply(x);
    double r = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) r = std::max(r, std::fabs(lx[i] - lambda * x[i]));
    return r;
}

void normalize(std::vector<double>& x) {
    const double s = norm2(x);
    for (double& v : x) v /= s;
}

double rayleigh(const SymMatrix& l, const std::vector<double>& x) {
    const auto lx = l.multiply(x);
    double num = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) num += x[i] * lx[i];
    return num / (norm2(x) * norm2(x));
}

struct Refined {
    std::vector<double> x;
    double lambda = 0.0;
    double residual = INFINITY;  // relative to scale
    bool converged = false;
};

// Inverse iteration just above the eigenvalue, started from the Jacobi vector.
Refined refine(const SymMatrix& l, double scale, std::vector<double> x, double lambda, double target) {
    const std::size_t n = l.n();
    Matrix shifted(n, n);
    const double sigma = lambda + 1e-10 * scale;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) shifted(i, j) = l(i, j);
        shifted(i, i) -= sigma;
    }
    const LuDecomposition lu(shifted, 1e-14 * scale);
    Refined out;
    for (int it = 0; it < 8; ++it) {
        x = lu.solve(x);
        const double s = norm2(x);
        if (!(s > 0.0) || !std::isfinite(s)) break;
        for (double& v : x) v /= s;
        fix_sign(x);
        const double mu = rayleigh(l, x);
        const double r = residual_inf(l, x, mu) / scale;
        if (r < out.residual) {
            out.x = x;
            out.lambda = mu;
            out.residual = r;
        }
        if (r <= target) {
            out.converged = true;
            break;
        }
    }
    return out;
}

// Standard normal deviates by Box-Muller on the counter generator, so the
// stream is identical on every platform.
double normal(CounterRng& rng) {
    double u = rng.uniform();
    while (u <= 0.0) u = rng.uniform();
    const double v = rng.uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

std::string hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string prufer_id(const PruferSeq& seq) {
    std::string s = "prufer:";
    for (std::size_t i = 0; i < seq.entries.size(); ++i) {
        if (i) s += '-';
        s += std::to_string(seq.entries[i]);
    }
    return s;
}

}  // namespace

Evaluation evaluate_instance(const Tree& t, const SymMatrix& a, const EvaluationOptions& opts, std::uint64_t combination_seed) {
    Evaluation ev;
    InstanceResult& res = ev.result;
    const std::size_t n = a.n();
    if (static_cast<int>(n) != t.n() || n < 2) throw std::invalid_argument("matrix and tree sizes differ");

    const GeneralizedLaplacian lap = laplacian_of(a);
    const double scale = lap.scale();
    EigenDecomp eig;
    try {
        eig = eigh(lap.matrix(), {opts.tol.eig, 100, opts.tol.cluster});
    } catch (const NumericError& e) {
        res.status = Status::InconclusiveNumeric;
        res.note = e.what();
        return ev;
    }
    const std::size_t k = target_index(opts.kind, n);
    const Cluster& cl = eig.cluster_of(k);
    res.eigenvalue = eig.values[k];
    res.cluster_size = cl.size;

    auto accept = [&](const std::vector<double>& v, const CaseClassification& c, std::string how) {
        ev.vector = v;
        ev.classification = c;
        res.status = Status::Holds;
        res.outcome = c.outcome;
        res.strictly_monotone = c.strictly_monotone;
        res.resolved_by = std::move(how);
    };
    auto try_vector = [&](const std::vector<double>& v) { return classify(t, v, opts.tol.zero * norm_inf(v)); };

    if (cl.size == 1) {
        const auto v = eig.vector(k);
        const CaseClassification c = try_vector(v);
        if (c.holds()) {
            accept(v, c, "vector");
            return ev;
        }
        const Refined r = refine(lap.matrix(), scale, v, eig.values[k], opts.tol.refine);
        if (!r.converged) {
            res.status = Status::InconclusiveNumeric;
            res.outcome = c.outcome;
            res.note = "refinement stalled";
            ev.vector = v;
            ev.classification = c;
            return ev;
        }
        const CaseClassification c2 = classify(t, r.x, opts.tol.tightened_zero * norm_inf(r.x));
        if (c2.holds()) {
            accept(r.x, c2, "refined");
            return ev;
        }
        res.status = Status::ViolationCandidate;
        res.outcome = Outcome::Violation;
        res.eigenvalue = r.lambda;
        res.note = to_string(c2.reason);
        res.relaxed_holds = classify_relaxed(t, r.x, opts.tol.tightened_zero * norm_inf(r.x)).holds();
        ev.vector = r.x;
        ev.classification = c2;
        CandidateRecord rec;
        rec.instance = res;
        rec.n = t.n();
        rec.edges.assign(t.edges().begin(), t.edges().end());
        rec.matrix.assign(a.data().begin(), a.data().end());
        rec.vector = r.x;
        rec.refinement_residual = r.residual;
        rec.classification = c2;
        ev.candidate = std::move(rec);
        return ev;
    }

    // Eigenspace search: basis vectors first, then random unit combinations.
    std::vector<std::vector<double>> basis;
    for (std::size_t j = cl.first; j <= cl.last(); ++j) {
        basis.push_back(eig.vector(j));
        const CaseClassification c = try_vector(basis.back());
        if (c.holds()) {
            accept(basis.back(), c, "basis:" + std::to_string(j - cl.first));
            return ev;
        }
    }
    CounterRng rng(combination_seed);
    const int budget = combination_budget(opts.samples, cl.size);
    std::vector<double> coef(cl.size);
    std::vector<double> f(n);
    for (int s = 0; s < budget; ++s) {
        for (double& c : coef) c = normal(rng);
        std::fill(f.begin(), f.end(), 0.0);
        for (std::size_t j = 0; j < cl.size; ++j) {
            for (std::size_t i = 0; i < n; ++i) f[i] += coef[j] * basis[j][i];
        }
        if (!(norm_inf(f) > 0.0)) continue;
        normalize(f);
        const CaseClassification c = try_vector(f);
        if (c.holds()) {
            accept(f, c, "combination:" + std::to_string(s));
            return ev;
        }
    }
    ev.vector = basis.front();
    ev.classification = try_vector(basis.front());
    res.status = Status::InconclusiveMultiplicity;
    res.note = "no structured vector among " + std::to_string(cl.size) + " basis vectors and " + std::to_string(budget) +
               " combinations";
    return ev;
}

bool revalidate(const CandidateRecord& c, const EvaluationOptions& opts) {
    try {
        const Tree t = Tree::from_edges(c.n, c.edges);
        const auto n = static_cast<std::size_t>(c.n);
        const SymMatrix a = SymMatrix::from_entries(n, c.matrix);
        const GeneralizedLaplacian lap = laplacian_of(a);
        const double scale = lap.scale();
        const EigenDecomp eig = eigh(lap.matrix(), {opts.tol.eig, 100, opts.tol.cluster});
        const std::size_t k = target_index(opts.kind, n);
        if (eig.cluster_of(k).size != 1) return false;

        auto x = c.vector;
        if (x.size() != n || !(norm2(x) > 0.0)) return false;
        normalize(x);
        // Tolerance covers the gap between the refined Rayleigh quotient and
        // the Jacobi eigenvalue.
        if (residual_inf(lap.matrix(), x, eig.values[k]) > 10.0 * opts.tol.refine * scale + 1e-12 * scale) return false;
        const auto v = eig.vector(k);
        double overlap = 0.0;
        for (std::size_t i = 0; i < n; ++i) overlap += v[i] * x[i];
        if (std::fabs(overlap) < 1.0 - 1e-8) return false;
        return !classify(t, x, opts.tol.tightened_zero * norm_inf(x)).holds();
    } catch (const std::exception&) {
        return false;
    }
}

std::uint64_t SearchReport::count(Status s) const {
    const auto it = status_counts.find(s);
    return it == status_counts.end() ? 0 : it->second;
}

std::uint64_t SearchReport::surviving_candidates() const {
    return static_cast<std::uint64_t>(std::count_if(candidates.begin(), candidates.end(), [](const CandidateRecord& c) { return c.revalidated; }));
}

SearchReport search_conjecture(const SearchConfig& cfg) {
    validate(cfg);
    const auto start = std::chrono::steady_clock::now();
    SearchReport rep;
    rep.config = cfg;
    rep.simd = simd::active().name;

    const std::uint64_t tree_count = cfg.trees.exhaustive ? labeled_tree_count(cfg.trees.n) : cfg.trees.count;
    const auto trials = static_cast<std::uint64_t>(cfg.trials);
    const std::uint64_t total = tree_count * trials;
    rep.instances.resize(total);

    const EvaluationOptions opts{cfg.kind, cfg.samples, cfg.tol};
    const Condition cond = hypothesis(cfg.kind);
    const std::uint64_t tree_stream = mix64(cfg.master_seed);

    auto run_one = [&](std::uint64_t i) -> Evaluation {
        const std::uint64_t tree_index = i / trials;
        const std::uint64_t trial = derive_seed(cfg.master_seed, i);
        std::string id;
        std::optional<Tree> tree;
        if (cfg.trees.exhaustive) {
            const PruferSeq seq = prufer_at(cfg.trees.n, tree_index);
            tree = prufer_decode(seq);
            id = prufer_id(seq);
        } else {
            const std::uint64_t ts = derive_seed(tree_stream, tree_index);
            tree = random_tree(cfg.trees.n, ts);
            id = "seed:" + hex(ts);
        }
        Evaluation ev;
        try {
            SymMatrix a = SymMatrix::zeros(1);
            switch (cfg.family) {
                case MatrixFamily::Adjacency: a = adjacency_matrix(*tree); break;
                case MatrixFamily::Distance: a = distance_matrix(*tree); break;
                case MatrixFamily::DistanceTransform:
                    a = gen_condition_matrix(cond, *tree, derive_seed(trial, 1), Family::DistanceTransform);
                    break;
                case MatrixFamily::RepairedRandom:
                    a = gen_condition_matrix(cond, *tree, derive_seed(trial, 1), Family::RepairedRandom);
                    break;
            }
            ev = evaluate_instance(*tree, a, opts, derive_seed(trial, 2));
        } catch (const NumericError& e) {
            ev.result.status = Status::InconclusiveNumeric;
            ev.result.note = e.what();
        }
        ev.result.index = i;
        ev.result.tree_id = std::move(id);
        if (ev.candidate) {
            ev.candidate->instance.index = i;
            ev.candidate->instance.tree_id = ev.result.tree_id;
        }
        return ev;
    };

    // Workers claim fixed-size chunks of indices; results land at their index,
    // so the outcome is independent of scheduling.
    constexpr std::uint64_t kChunk = 64;
    std::atomic<std::uint64_t> next{0};
    std::mutex sink;
    std::exception_ptr failure;
    auto work = [&] {
        std::vector<CandidateRecord> found;
        try {
            for (;;) {
                const std::uint64_t begin = next.fetch_add(kChunk);
                if (begin >= total) break;
                const std::uint64_t end = std::min(total, begin + kChunk);
                for (std::uint64_t i = begin; i < end; ++i) {
                    Evaluation ev = run_one(i);
                    rep.instances[i] = std::move(ev.result);
                    if (ev.candidate) found.push_back(std::move(*ev.candidate));
                }
            }
        } catch (...) {
            const std::lock_guard lock(sink);
            if (!failure) failure = std::current_exception();
            next.store(total);
        }
        const std::lock_guard lock(sink);
        for (auto& c : found) rep.candidates.push_back(std::move(c));
    };
    if (cfg.workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < cfg.workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    std::sort(rep.candidates.begin(), rep.candidates.end(),
              [](const CandidateRecord& x, const CandidateRecord& y) { return x.instance.index < y.instance.index; });
    for (auto& c : rep.candidates) {
        c.revalidated = revalidate(c, opts);
        if (!c.revalidated) {
            auto& inst = rep.instances[c.instance.index];
            inst.status = Status::InconclusiveNumeric;
            inst.note = "candidate did not survive re-validation";
            c.instance = inst;
        }
    }

    for (const auto& inst : rep.instances) {
        ++rep.status_counts[inst.status];
        if (inst.status == Status::Holds && inst.strictly_monotone) ++rep.holds_strict;
        if (inst.status == Status::ViolationCandidate && inst.relaxed_holds) ++rep.candidates_relaxed;
        ++rep.cluster_histogram[inst.cluster_size];
    }
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

}  // namespace distlap
