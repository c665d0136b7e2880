#pragma once

#include "distlap/matrix.hpp"
#include "distlap/tree.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace distlap {

// Monotonicity hypotheses on a symmetric nonnegative matrix A.
//
//   Conj1Tree    a_ij <= a_ik whenever j ~ k in the tree and d_ij > d_ik
//   Conj2Tree    a_ij >= a_ik under the same side condition
//   PathI        a_ij >= a_ik if j < k < i, and a_ij <= a_ik if i < j < k
//   PathII       a_ij <= a_ik if j < k < i, and a_ij >= a_ik if i < j < k
//
// i, j, k are distinct. `strict` turns every inequality strict. Ties
// d_ij == d_ik impose nothing.
enum class ConditionKind { Conj1Tree, Conj2Tree, PathI, PathII };

struct Condition {
    ConditionKind kind = ConditionKind::Conj2Tree;
    bool strict = false;

    bool needs_tree() const { return kind == ConditionKind::Conj1Tree || kind == ConditionKind::Conj2Tree; }
    // Conj1Tree and PathII want A to shrink with distance.
    bool decreasing() const { return kind == ConditionKind::Conj1Tree || kind == ConditionKind::PathII; }
};

struct Triple {
    int i = 0;
    int j = 0;
    int k = 0;  // 1-based
    friend bool operator==(const Triple&, const Triple&) = default;
};

struct ConditionResult {
    bool pass = true;
    std::optional<Triple> violation;  // first violating (i, j, k) in scan order

    explicit operator bool() const { return pass; }
};

// Tests every ordered triple meeting the side conditions. Requires a zero
// diagonal and nonnegative off-diagonal entries, and a tree of matching size
// exactly when the kind is a tree condition (std::invalid_argument otherwise).
// Exact comparisons on exact input; 1e-12 * max|entry| slack otherwise.
ConditionResult check_condition(const SymMatrix& a, Condition cond, const Tree* tree = nullptr);

enum class Family { DistanceTransform, RepairedRandom };

// a_ij = g(d_ij) with g[d - 1] the value at distance d; zero diagonal.
SymMatrix distance_transform(const Tree& t, std::span<const std::int64_t> g);

// Random integer matrix satisfying `cond` on `support` (a path in natural
// order for the path kinds), deterministic in `seed`.
//
// DistanceTransform draws a random monotone integer step function of the
// distance. RepairedRandom draws random entries in [0, 9] and raises deficient
// entries until a fixpoint or 50 passes; the result is validated and a
// NumericError thrown if it still violates the condition.
SymMatrix gen_condition_matrix(Condition cond, const Tree& support, std::uint64_t seed, Family family);
SymMatrix gen_condition_matrix(Condition cond, int n, std::uint64_t seed, Family family);

std::string to_string(ConditionKind k);
std::optional<ConditionKind> parse_condition_kind(const std::string& s);
std::string to_string(Family f);

}  // namespace distlap
