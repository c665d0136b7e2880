#include "distlap/tree.hpp"

#include "distlap/rng.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>

namespace distlap {

namespace {

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

}  // namespace

Tree Tree::from_edges(int n, std::vector<Edge> edges) {
    if (n < 1) throw std::invalid_argument("a tree needs at least one vertex");
    if (static_cast<int>(edges.size()) != n - 1) {
        throw std::invalid_argument("a tree on " + std::to_string(n) + " vertices needs " + std::to_string(n - 1) +
                                    " edges, got " + std::to_string(edges.size()));
    }
    DisjointSets sets(n);
    Tree t;
    t.n_ = n;
    t.adj_.assign(n, {});
    for (const Edge& e : edges) {
        if (e.u < 1 || e.u > n || e.v < 1 || e.v > n) throw std::invalid_argument("edge label out of range 1..n");
        if (e.u == e.v) throw std::invalid_argument("self-loop in edge list");
        if (!sets.unite(e.u - 1, e.v - 1)) throw std::invalid_argument("edge list contains a cycle");
        t.adj_[e.u - 1].push_back(e.v);
        t.adj_[e.v - 1].push_back(e.u);
    }
    for (auto& a : t.adj_) std::sort(a.begin(), a.end());
    t.edges_ = std::move(edges);
    return t;
}

bool Tree::adjacent(int u, int v) const {
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Tree::canonical_edges() const {
    std::vector<Edge> out;
    out.reserve(edges_.size());
    for (const Edge& e : edges_) out.push_back({std::min(e.u, e.v), std::max(e.u, e.v)});
    std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
    return out;
}

Tree path_graph(int n) {
    if (n < 1) throw std::invalid_argument("path needs n >= 1");
    std::vector<Edge> e;
    for (int i = 1; i < n; ++i) e.push_back({i, i + 1});
    return Tree::from_edges(n, std::move(e));
}

Tree star_graph(int n) {
    if (n < 2) throw std::invalid_argument("star needs n >= 2");
    std::vector<Edge> e;
    for (int i = 2; i <= n; ++i) e.push_back({1, i});
    return Tree::from_edges(n, std::move(e));
}

Tree prufer_decode(const PruferSeq& seq) {
    const int n = seq.n;
    if (n < 2) throw std::invalid_argument("Prufer decoding needs n >= 2");
    if (static_cast<int>(seq.entries.size()) != n - 2) throw std::invalid_argument("Prufer sequence must have n-2 entries");
    std::vector<int> degree(n + 1, 1);
    for (int v : seq.entries) {
        if (v < 1 || v > n) throw std::invalid_argument("Prufer entry out of range 1..n");
        ++degree[v];
    }
    std::vector<Edge> edges;
    edges.reserve(n - 1);
    int ptr = 1;
    while (degree[ptr] != 1) ++ptr;
    int leaf = ptr;
    for (int v : seq.entries) {
        edges.push_back({leaf, v});
        if (--degree[v] == 1 && v < ptr) {
            leaf = v;
        } else {
            ++ptr;
            while (degree[ptr] != 1) ++ptr;
            leaf = ptr;
        }
    }
    edges.push_back({leaf, n});
    return Tree::from_edges(n, std::move(edges));
}

PruferSeq prufer_encode(const Tree& t) {
    const int n = t.n();
    if (n < 2) throw std::invalid_argument("Prufer encoding needs n >= 2");
    std::vector<int> parent(n + 1, 0);
    // Root at n; parent[v] is v's neighbor on the path to n.
    std::vector<int> stack{n};
    std::vector<bool> seen(n + 1, false);
    seen[n] = true;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w : t.neighbors(v)) {
            if (!seen[w]) {
                seen[w] = true;
                parent[w] = v;
                stack.push_back(w);
            }
        }
    }
    std::vector<int> degree(n + 1);
    for (int v = 1; v <= n; ++v) degree[v] = t.degree(v);

    PruferSeq seq{n, {}};
    seq.entries.reserve(n - 2);
    int ptr = 1;
    while (degree[ptr] != 1) ++ptr;
    int leaf = ptr;
    for (int i = 0; i < n - 2; ++i) {
        const int next = parent[leaf];
        seq.entries.push_back(next);
        if (--degree[next] == 1 && next < ptr) {
            leaf = next;
        } else {
            ++ptr;
            while (degree[ptr] != 1) ++ptr;
            leaf = ptr;
        }
    }
    return seq;
}

std::uint64_t labeled_tree_count(int n) {
    if (n < 1) throw std::invalid_argument("tree size must be positive");
    if (n <= 2) return 1;
    std::uint64_t c = 1;
    for (int i = 0; i < n - 2; ++i) c *= static_cast<std::uint64_t>(n);
    return c;
}

PruferSeq prufer_at(int n, std::uint64_t index) {
    if (n < 2 || n > kMaxEnumerationSize) throw std::invalid_argument("enumeration supports 2 <= n <= 9");
    if (index >= labeled_tree_count(n)) throw std::out_of_range("tree index beyond n^(n-2)");
    PruferSeq seq{n, std::vector<int>(n - 2)};
    for (int i = n - 3; i >= 0; --i) {
        seq.entries[i] = static_cast<int>(index % n) + 1;
        index /= n;
    }
    return seq;
}

void enumerate_trees(int n, const std::function<void(const Tree&)>& visit) {
    if (n < 2 || n > kMaxEnumerationSize) throw std::invalid_argument("enumeration supports 2 <= n <= 9");
    PruferSeq seq{n, std::vector<int>(n - 2, 1)};
    for (;;) {
        visit(prufer_decode(seq));
        int i = n - 3;
        while (i >= 0 && seq.entries[i] == n) seq.entries[i--] = 1;
        if (i < 0) return;
        ++seq.entries[i];
    }
}

Tree random_tree(int n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("random_tree needs n >= 2");
    CounterRng rng(seed);
    PruferSeq seq{n, std::vector<int>(n - 2)};
    for (int& v : seq.entries) v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n))) + 1;
    return prufer_decode(seq);
}

SymMatrix adjacency_matrix(const Tree& t) {
    return SymMatrix::build(static_cast<std::size_t>(t.n()), [&](std::size_t i, std::size_t j) {
        return t.adjacent(static_cast<int>(i) + 1, static_cast<int>(j) + 1) ? 1.0 : 0.0;
    });
}

std::vector<int> distance_table(const Tree& t) {
    const int n = t.n();
    std::vector<int> d(static_cast<std::size_t>(n) * n, -1);
    std::vector<int> queue(n);
    for (int s = 0; s < n; ++s) {
        int* row = d.data() + static_cast<std::size_t>(s) * n;
        row[s] = 0;
        int head = 0, tail = 0;
        queue[tail++] = s + 1;
        while (head < tail) {
            const int v = queue[head++];
            for (int w : t.neighbors(v)) {
                if (row[w - 1] < 0) {
                    row[w - 1] = row[v - 1] + 1;
                    queue[tail++] = w;
                }
            }
        }
    }
    return d;
}

SymMatrix distance_matrix(const Tree& t) {
    const auto d = distance_table(t);
    const std::size_t n = static_cast<std::size_t>(t.n());
    return SymMatrix::build(n, [&](std::size_t i, std::size_t j) { return d[i * n + j]; });
}

Tree read_tree(std::istream& in) {
    std::string line;
    int n = -1;
    std::vector<Edge> edges;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ss(line);
        if (n < 0) {
            if (!(ss >> n) || n < 1) throw std::invalid_argument("tree file: first line must be a positive vertex count");
        } else {
            Edge e;
            if (!(ss >> e.u >> e.v)) throw std::invalid_argument("tree file: bad edge on line " + std::to_string(line_no));
            edges.push_back(e);
        }
        std::string rest;
        if (ss >> rest) throw std::invalid_argument("tree file: trailing data on line " + std::to_string(line_no));
    }
    if (n < 0) throw std::invalid_argument("tree file is empty");
    return Tree::from_edges(n, std::move(edges));
}

void write_tree(std::ostream& out, const Tree& t) {
    out << t.n() << '\n';
    for (const Edge& e : t.edges()) out << e.u << ' ' << e.v << '\n';
}

}  // namespace distlap
