#include "distlap/conditions.hpp"

#include "distlap/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace distlap {

namespace {

void require_canonical(const SymMatrix& a) {
    for (std::size_t i = 0; i < a.n(); ++i) {
        if (a(i, i) != 0.0) throw std::invalid_argument("condition predicates require a zero diagonal");
        for (std::size_t j = 0; j < a.n(); ++j) {
            if (i != j && a(i, j) < 0.0) throw std::invalid_argument("condition predicates require nonnegative entries");
        }
    }
}

// true when `hi` dominates `lo` as the condition demands.
bool dominates(double hi, double lo, bool strict, double slack) {
    return strict ? hi - lo > slack : hi - lo >= -slack;
}

}  // namespace

ConditionResult check_condition(const SymMatrix& a, Condition cond, const Tree* tree) {
    const int n = static_cast<int>(a.n());
    if (cond.needs_tree()) {
        if (tree == nullptr) throw std::invalid_argument("tree condition needs a tree");
        if (tree->n() != n) throw std::invalid_argument("tree size does not match matrix dimension");
    } else if (tree != nullptr) {
        throw std::invalid_argument("path conditions take no tree");
    }
    require_canonical(a);
    const double slack = a.exact() ? 0.0 : 1e-12 * a.max_abs();
    auto at = [&](int i, int j) { return a(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)); };

    // "a_ij >= a_ik" is the increasing direction; decreasing kinds flip it.
    auto holds = [&](int i, int j, int k, bool ij_at_least_ik) {
        return ij_at_least_ik ? dominates(at(i, j), at(i, k), cond.strict, slack)
                              : dominates(at(i, k), at(i, j), cond.strict, slack);
    };

    if (cond.needs_tree()) {
        const auto d = distance_table(*tree);
        auto dist = [&](int u, int v) { return d[static_cast<std::size_t>(u - 1) * n + (v - 1)]; };
        const bool ij_ge_ik = cond.kind == ConditionKind::Conj2Tree;
        for (int i = 1; i <= n; ++i) {
            for (int j = 1; j <= n; ++j) {
                if (j == i) continue;
                for (int k : tree->neighbors(j)) {
                    if (k == i || dist(i, j) <= dist(i, k)) continue;
                    if (!holds(i, j, k, ij_ge_ik)) return {false, Triple{i, j, k}};
                }
            }
        }
        return {};
    }

    const bool path_one = cond.kind == ConditionKind::PathI;
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            for (int k = 1; k <= n; ++k) {
                if (i == j || j == k || i == k) continue;
                if (j < k && k < i) {
                    if (!holds(i, j, k, path_one)) return {false, Triple{i, j, k}};
                } else if (i < j && j < k) {
                    if (!holds(i, j, k, !path_one)) return {false, Triple{i, j, k}};
                }
            }
        }
    }
    return {};
}

SymMatrix distance_transform(const Tree& t, std::span<const std::int64_t> g) {
    const auto d = distance_table(t);
    const std::size_t n = static_cast<std::size_t>(t.n());
    for (int dist : d) {
        if (dist > 0 && static_cast<std::size_t>(dist) > g.size()) throw std::invalid_argument("transform shorter than tree diameter");
    }
    return SymMatrix::build(n, [&](std::size_t i, std::size_t j) {
        const int dist = d[i * n + j];
        return dist == 0 ? 0.0 : static_cast<double>(g[static_cast<std::size_t>(dist) - 1]);
    });
}

namespace {

SymMatrix gen_transform(Condition cond, const Tree& t, CounterRng& rng) {
    const auto d = distance_table(t);
    const int diam = std::max(1, *std::max_element(d.begin(), d.end()));
    std::vector<std::int64_t> g(static_cast<std::size_t>(diam));
    const std::int64_t min_step = cond.strict ? 1 : 0;
    g[0] = rng.between(0, 3);
    for (int s = 1; s < diam; ++s) g[s] = g[s - 1] + rng.between(min_step, 3);
    if (cond.decreasing()) std::reverse(g.begin(), g.end());
    return distance_transform(t, g);
}

class Repairer {
public:
    Repairer(std::size_t n) : n_(n), a_(n * n, 0) {}

    std::int64_t& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }

    // Raises (i, j) and (j, i) to at least `bound`; reports whether it moved.
    bool raise(std::size_t i, std::size_t j, std::int64_t bound) {
        if (at(i, j) >= bound) return false;
        at(i, j) = bound;
        at(j, i) = bound;
        return true;
    }

    SymMatrix finish() const {
        return SymMatrix::build(n_, [&](std::size_t i, std::size_t j) { return static_cast<double>(a_[i * n_ + j]); });
    }

private:
    std::size_t n_;
    std::vector<std::int64_t> a_;
};

// One sweep of tree-kind repairs, each row walked outward from its root by BFS.
bool repair_tree_pass(Repairer& r, const Tree& t, Condition cond) {
    const int n = t.n();
    const std::int64_t bump = cond.strict ? 1 : 0;
    bool changed = false;
    std::vector<int> order(n), parent(n);
    for (int root = 0; root < n; ++root) {
        std::fill(parent.begin(), parent.end(), -1);
        parent[root] = root;
        int head = 0, tail = 0;
        order[tail++] = root;
        while (head < tail) {
            const int v = order[head++];
            for (int w1 : t.neighbors(v + 1)) {
                const int w = w1 - 1;
                if (parent[w] < 0) {
                    parent[w] = v;
                    order[tail++] = w;
                }
            }
        }
        if (!cond.decreasing()) {
            // entries grow away from the root
            for (int idx = 1; idx < n; ++idx) {
                const int v = order[idx];
                const int p = parent[v];
                if (p == root) continue;
                changed |= r.raise(root, v, r.at(root, p) + bump);
            }
        } else {
            // entries shrink away from the root: lift the nearer entry
            for (int idx = n - 1; idx >= 1; --idx) {
                const int v = order[idx];
                const int p = parent[v];
                if (p == root) continue;
                changed |= r.raise(root, p, r.at(root, v) + bump);
            }
        }
    }
    return changed;
}

// Path kinds only need consecutive columns of each row.
bool repair_path_pass(Repairer& r, std::size_t n, Condition cond) {
    const std::int64_t bump = cond.strict ? 1 : 0;
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (cond.kind == ConditionKind::PathI) {
            for (std::size_t j = i; j-- > 1;) changed |= r.raise(i, j - 1, r.at(i, j) + bump);
            for (std::size_t j = i + 1; j + 1 < n; ++j) changed |= r.raise(i, j + 1, r.at(i, j) + bump);
        } else {
            for (std::size_t j = 0; j + 1 < i; ++j) changed |= r.raise(i, j + 1, r.at(i, j) + bump);
            for (std::size_t j = n - 1; j > i + 1; --j) changed |= r.raise(i, j - 1, r.at(i, j) + bump);
        }
    }
    return changed;
}

SymMatrix gen_repaired(Condition cond, const Tree& t, CounterRng& rng) {
    const std::size_t n = static_cast<std::size_t>(t.n());
    Repairer r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) r.raise(i, j, rng.between(0, 9));

    constexpr int kMaxPasses = 50;
    bool settled = false;
    for (int pass = 0; pass < kMaxPasses && !settled; ++pass) {
        settled = cond.needs_tree() ? !repair_tree_pass(r, t, cond) : !repair_path_pass(r, n, cond);
    }
    if (!settled) throw NumericError("repair did not reach a fixpoint in 50 passes");
    return r.finish();
}

}  // namespace

SymMatrix gen_condition_matrix(Condition cond, const Tree& support, std::uint64_t seed, Family family) {
    if (support.n() < 2) throw std::invalid_argument("condition generators need n >= 2");
    if (!cond.needs_tree()) {
        const auto e = support.canonical_edges();
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i].u != static_cast<int>(i) + 1 || e[i].v != static_cast<int>(i) + 2) {
                throw std::invalid_argument("path conditions need the natural-order path as support");
            }
        }
    }
    CounterRng rng(seed);
    SymMatrix a = family == Family::DistanceTransform ? gen_transform(cond, support, rng) : gen_repaired(cond, support, rng);

    const ConditionResult check = check_condition(a, cond, cond.needs_tree() ? &support : nullptr);
    if (!check) throw NumericError("generated matrix violates " + to_string(cond.kind));
    return a;
}

SymMatrix gen_condition_matrix(Condition cond, int n, std::uint64_t seed, Family family) {
    if (cond.needs_tree()) throw std::invalid_argument("tree conditions need an explicit tree");
    return gen_condition_matrix(cond, path_graph(n), seed, family);
}

std::string to_string(ConditionKind k) {
    switch (k) {
        case ConditionKind::Conj1Tree: return "conj1-tree";
        case ConditionKind::Conj2Tree: return "conj2-tree";
        case ConditionKind::PathI: return "path-i";
        case ConditionKind::PathII: return "path-ii";
    }
    return "?";
}

std::optional<ConditionKind> parse_condition_kind(const std::string& s) {
    for (auto k : {ConditionKind::Conj1Tree, ConditionKind::Conj2Tree, ConditionKind::PathI, ConditionKind::PathII}) {
        if (to_string(k) == s) return k;
    }
    return std::nullopt;
}

std::string to_string(Family f) { return f == Family::DistanceTransform ? "transform" : "repaired"; }

}  // namespace distlap
