#include "distlap/classify.hpp"

#include "distlap/matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace distlap {

namespace {

struct Walk {
    bool weak = true;    // every step >= -slack in the requested direction
    bool strict = true;  // every step > slack
    std::optional<std::pair<int, int>> witness;         // first step breaking `weak`
    std::optional<std::pair<int, int>> strict_witness;  // first step breaking `strict`
};

// Walks the component of `start` that avoids `from`, checking the steps
// parent -> child (starting with from -> start) against `direction`.
Walk walk_branch(const Tree& t, const std::vector<double>& g, int from, int start, int direction, double slack) {
    Walk w;
    std::vector<std::pair<int, int>> stack{{from, start}};
    while (!stack.empty()) {
        const auto [parent, child] = stack.back();
        stack.pop_back();
        const double step = direction * (g[child - 1] - g[parent - 1]);
        if (step <= slack && w.strict) {
            w.strict = false;
            w.strict_witness = std::pair{parent, child};
        }
        if (step < -slack && w.weak) {
            w.weak = false;
            w.witness = std::pair{parent, child};
        }
        for (int next : t.neighbors(child)) {
            if (next != parent) stack.emplace_back(child, next);
        }
    }
    return w;
}

}  // namespace

CaseClassification classify(const Tree& t, std::span<const double> f, std::optional<double> zero_tol) {
    const int n = t.n();
    if (static_cast<int>(f.size()) != n) throw std::invalid_argument("vector length does not match tree size");
    const double fmax = norm_inf(f);
    if (!(fmax > 0.0)) throw std::invalid_argument("cannot classify the zero vector");
    const double z = zero_tol.value_or(1e-8 * fmax);
    if (z < 0.0) throw std::invalid_argument("zero tolerance must be nonnegative");

    CaseClassification out;
    out.zero_threshold_used = z;
    std::vector<double> g(f.begin(), f.end());
    bool has_zero = false;
    for (double& v : g) {
        if (std::fabs(v) <= z) {
            v = 0.0;
            has_zero = true;
        }
    }
    auto at = [&](int v) { return g[v - 1]; };

    if (!has_zero) {
        for (const Edge& e : t.edges()) {
            if ((at(e.u) > 0.0) != (at(e.v) > 0.0)) {
                if (++out.sign_change_edges == 1) {
                    out.characteristic_edge = at(e.u) > 0.0 ? e : Edge{e.v, e.u};
                }
            }
        }
        if (out.sign_change_edges != 1) {
            out.characteristic_edge.reset();
            out.reason = ViolationReason::SignChangeEdges;
            return out;
        }
        const Edge ce = *out.characteristic_edge;
        bool strict = true;
        for (const auto& [root, other, dir] : {std::tuple{ce.u, ce.v, 1}, std::tuple{ce.v, ce.u, -1}}) {
            for (int next : t.neighbors(root)) {
                if (next == other) continue;
                const Walk w = walk_branch(t, g, root, next, dir, z);
                if (!w.strict) {
                    out.reason = ViolationReason::NonMonotonePath;
                    out.witness = w.strict_witness;
                    return out;
                }
                strict = strict && w.strict;
            }
        }
        out.strictly_monotone = strict;
        out.outcome = Outcome::CaseI;
        return out;
    }

    int u = 0;
    for (int v = 1; v <= n; ++v) {
        if (at(v) != 0.0) continue;
        for (int w : t.neighbors(v)) {
            if (at(w) != 0.0) {
                if (++out.zero_boundary_vertices == 1) u = v;
                break;
            }
        }
    }
    if (out.zero_boundary_vertices != 1) {
        out.reason = ViolationReason::ZeroVertexAmbiguity;
        return out;
    }

    bool strict = true;
    for (int w : t.neighbors(u)) {
        if (at(w) == 0.0) {
            // A zero neighbor of the unique boundary vertex heads an
            // identically zero branch; anything else would be a second
            // boundary vertex.
            continue;
        }
        const int dir = at(w) > 0.0 ? 1 : -1;
        const Walk walk = walk_branch(t, g, u, w, dir, z);
        if (!walk.weak) {
            out.reason = ViolationReason::NonMonotonePath;
            out.witness = walk.witness;
            return out;
        }
        strict = strict && walk.strict;
    }
    out.characteristic_vertex = u;
    out.strictly_monotone = strict;
    out.outcome = Outcome::CaseII;
    return out;
}

CaseClassification classify_relaxed(const Tree& t, std::span<const double> f, std::optional<double> zero_tol) {
    CaseClassification out = classify(t, f, zero_tol);
    if (out.holds()) return out;
    const int n = t.n();
    const double z = out.zero_threshold_used;
    std::vector<double> g(f.begin(), f.end());
    for (double& v : g) {
        if (std::fabs(v) <= z) v = 0.0;
    }
    out = CaseClassification{};
    out.zero_threshold_used = z;
    auto at = [&](int v) { return g[v - 1]; };

    std::vector<int> zeros;
    for (int v = 1; v <= n; ++v) {
        if (at(v) == 0.0) zeros.push_back(v);
    }
    if (zeros.empty()) {
        for (const Edge& e : t.edges()) {
            if ((at(e.u) > 0.0) != (at(e.v) > 0.0) && ++out.sign_change_edges == 1) {
                out.characteristic_edge = at(e.u) > 0.0 ? e : Edge{e.v, e.u};
            }
        }
        if (out.sign_change_edges != 1) {
            out.characteristic_edge.reset();
            out.reason = ViolationReason::SignChangeEdges;
            return out;
        }
        const Edge ce = *out.characteristic_edge;
        for (const auto& [root, other, dir] : {std::tuple{ce.u, ce.v, 1}, std::tuple{ce.v, ce.u, -1}}) {
            for (int next : t.neighbors(root)) {
                if (next == other) continue;
                const Walk w = walk_branch(t, g, root, next, dir, z);
                if (!w.weak) {
                    out.reason = ViolationReason::NonMonotonePath;
                    out.witness = w.witness;
                    return out;
                }
            }
        }
        out.outcome = Outcome::CaseI;
        return out;
    }

    // The zero set must be connected.
    std::vector<char> seen(n + 1, 0);
    std::vector<int> stack{zeros.front()};
    seen[zeros.front()] = 1;
    std::size_t reached = 0;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        ++reached;
        for (int w : t.neighbors(v)) {
            if (!seen[w] && at(w) == 0.0) {
                seen[w] = 1;
                stack.push_back(w);
            }
        }
    }
    for (int v : zeros) {
        for (int w : t.neighbors(v)) {
            if (at(w) != 0.0) {
                if (++out.zero_boundary_vertices == 1) out.characteristic_vertex = v;
                break;
            }
        }
    }
    if (reached != zeros.size()) {
        out.characteristic_vertex.reset();
        out.reason = ViolationReason::ZeroVertexAmbiguity;
        return out;
    }
    for (int v : zeros) {
        for (int w : t.neighbors(v)) {
            if (at(w) == 0.0) continue;
            const Walk walk = walk_branch(t, g, v, w, at(w) > 0.0 ? 1 : -1, z);
            if (!walk.weak) {
                out.characteristic_vertex.reset();
                out.reason = ViolationReason::NonMonotonePath;
                out.witness = walk.witness;
                return out;
            }
        }
    }
    out.outcome = Outcome::CaseII;
    return out;
}

Monotonicity is_monotone(std::span<const double> f, std::optional<double> slack) {
    const double s = slack.value_or(1e-10 * norm_inf(f));
    bool up = true;
    bool down = true;
    for (std::size_t i = 1; i < f.size(); ++i) {
        const double d = f[i] - f[i - 1];
        if (d < -s) up = false;
        if (d > s) down = false;
    }
    if (up && down) return Monotonicity::Both;
    if (up) return Monotonicity::Nondecreasing;
    if (down) return Monotonicity::Nonincreasing;
    return Monotonicity::Neither;
}

const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::CaseI: return "CaseI";
        case Outcome::CaseII: return "CaseII";
        case Outcome::Violation: return "Violation";
    }
    return "?";
}

const char* to_string(ViolationReason r) {
    switch (r) {
        case ViolationReason::None: return "none";
        case ViolationReason::SignChangeEdges: return "sign-change-edges";
        case ViolationReason::NonMonotonePath: return "non-monotone-path";
        case ViolationReason::ZeroVertexAmbiguity: return "zero-vertex-ambiguity";
    }
    return "?";
}

const char* to_string(Monotonicity m) {
    switch (m) {
        case Monotonicity::Nondecreasing: return "nondecreasing";
        case Monotonicity::Nonincreasing: return "nonincreasing";
        case Monotonicity::Both: return "both";
        case Monotonicity::Neither: return "neither";
    }
    return "?";
}

}  // namespace distlap
