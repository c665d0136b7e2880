#pragma once

#include "distlap/matrix.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace distlap {

// Vertices are labeled 1..n throughout the public interface.
struct Edge {
    int u = 0;
    int v = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

// Labeled tree on {1, ..., n}. Construction validates that the edge list has
// n-1 edges over those labels and forms a connected acyclic graph.
class Tree {
public:
    static Tree from_edges(int n, std::vector<Edge> edges);

    int n() const { return n_; }
    std::span<const Edge> edges() const { return edges_; }
    std::span<const int> neighbors(int v) const { return adj_.at(v - 1); }
    int degree(int v) const { return static_cast<int>(adj_.at(v - 1).size()); }
    bool adjacent(int u, int v) const;

    // Edge list with each pair ordered (min, max), sorted; equal for equal trees.
    std::vector<Edge> canonical_edges() const;

private:
    Tree() = default;

    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
};

Tree path_graph(int n);
// Center 1 joined to 2..n.
Tree star_graph(int n);

struct PruferSeq {
    int n = 2;                // tree size, entries.size() == n - 2
    std::vector<int> entries;  // labels in 1..n
};

// Repeatedly joins the smallest leaf not in the remaining sequence to the
// sequence head; the last two vertices form the final edge.
Tree prufer_decode(const PruferSeq& seq);
PruferSeq prufer_encode(const Tree& t);

inline constexpr int kMaxEnumerationSize = 9;

// n^(n-2).
std::uint64_t labeled_tree_count(int n);
// The index-th labeled tree in lexicographic Prufer order, 0-based. Lets
// parallel workers partition the enumeration by index.
PruferSeq prufer_at(int n, std::uint64_t index);
// Emits every labeled tree on n vertices exactly once, lexicographic Prufer
// order; 2 <= n <= kMaxEnumerationSize.
void enumerate_trees(int n, const std::function<void(const Tree&)>& visit);

// Uniform labeled tree from a uniformly random Prufer sequence drawn with a
// counter-based generator; same (n, seed) gives the same tree.
Tree random_tree(int n, std::uint64_t seed);

SymMatrix adjacency_matrix(const Tree& t);
// All-pairs path lengths by breadth-first search from every vertex.
SymMatrix distance_matrix(const Tree& t);
// Distances as integers, row-major n x n, 0-based indices.
std::vector<int> distance_table(const Tree& t);

// First line n, then one "u v" edge per line.
Tree read_tree(std::istream& in);
void write_tree(std::ostream& out, const Tree& t);

}  // namespace distlap
