#pragma once

#include "distlap/tree.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>

namespace distlap {

enum class Outcome { CaseI, CaseII, Violation };

enum class ViolationReason {
    None,
    SignChangeEdges,      // no zeros, but not exactly one edge with opposite signs
    NonMonotonePath,      // a path from the characteristic edge/vertex breaks monotonicity
    ZeroVertexAmbiguity,  // zeros present, but not exactly one zero next to a nonzero
};

// Fiedler-type structure of a vector on a tree.
//
// Case I: no zero components, exactly one edge {u1, u2} with f(u1) > 0 >
// f(u2); values strictly increase along every path leaving u1 away from u2
// and strictly decrease along every path leaving u2 away from u1.
//
// Case II: exactly one zero vertex u adjacent to a nonzero vertex; every
// branch at u is nondecreasing, nonincreasing or identically zero.
struct CaseClassification {
    Outcome outcome = Outcome::Violation;
    std::optional<Edge> characteristic_edge;  // {u1 (positive), u2 (negative)}
    std::optional<int> characteristic_vertex;
    ViolationReason reason = ViolationReason::None;
    int sign_change_edges = 0;
    int zero_boundary_vertices = 0;  // zero vertices adjacent to a nonzero one
    std::optional<std::pair<int, int>> witness;  // (parent, child) breaking monotonicity
    double zero_threshold_used = 0.0;
    // Every monotone step exceeds the zero threshold. Case I requires it;
    // for Case II it is recorded alongside the weak verdict.
    bool strictly_monotone = false;

    bool holds() const { return outcome != Outcome::Violation; }
};

// Components with |f(v)| <= zero_tol are zero; default zero_tol is
// 1e-8 * ||f||_inf. Throws std::invalid_argument on a zero vector or length
// mismatch.
CaseClassification classify(const Tree& t, std::span<const double> f, std::optional<double> zero_tol = std::nullopt);

// Relaxed reading of the same structure, for separating ties and zero
// plateaus from genuine failures: Case I with weakly monotone branches, and
// Case II with a connected zero set instead of a single zero vertex (every
// branch leaving it weakly monotone). Anything the strict test accepts, this
// accepts too; characteristic_vertex is the smallest zero boundary vertex.
CaseClassification classify_relaxed(const Tree& t, std::span<const double> f, std::optional<double> zero_tol = std::nullopt);

enum class Monotonicity { Nondecreasing, Nonincreasing, Both, Neither };

// Default slack 1e-10 * ||f||_inf; Both means numerically constant.
Monotonicity is_monotone(std::span<const double> f, std::optional<double> slack = std::nullopt);

const char* to_string(Outcome o);
const char* to_string(ViolationReason r);
const char* to_string(Monotonicity m);

}  // namespace distlap
