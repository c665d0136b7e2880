#pragma once

// Search for trees and matrices on which the monotone-matrix conjectures
// fail: for every instance, find an eigenvector of the target eigenvalue of
// A^L with the characteristic edge/vertex structure, or record why not.

#include "distlap/classify.hpp"
#include "distlap/conditions.hpp"
#include "distlap/eigh.hpp"
#include "distlap/tree.hpp"
#include "distlap/verify.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace distlap {

enum class ConjectureKind { Conj1, Conj2 };  // lambda_2 / lambda_n

enum class MatrixFamily { Adjacency, Distance, DistanceTransform, RepairedRandom };

struct TreeSource {
    bool exhaustive = true;
    int n = 4;
    std::uint64_t count = 0;  // random trees only
};

struct SearchTolerances {
    double zero = 1e-8;         // classification zero threshold, relative to ||f||_inf
    double cluster = 1e-8;      // eigenvalue clustering, relative to max(1, ||A^L||_inf)
    double eig = 1e-12;         // Jacobi stopping tolerance
    double refine = 1e-13;      // residual target for refinement, relative to scale
    double tightened_zero = 1e-10;  // zero threshold after refinement
};

struct SearchConfig {
    ConjectureKind kind = ConjectureKind::Conj2;
    TreeSource trees;
    MatrixFamily family = MatrixFamily::Distance;
    std::uint64_t master_seed = 0;
    int trials = 1;      // matrices per tree; generated families only
    int samples = 1000;  // random eigenspace combinations for clusters of size <= 3
    int workers = 1;
    SearchTolerances tol;
};

// Throws std::invalid_argument describing the first problem.
void validate(const SearchConfig& cfg);

// The matrix the conjecture's hypothesis is stated for.
Condition hypothesis(ConjectureKind kind);

struct InstanceResult {
    std::uint64_t index = 0;
    std::string tree_id;  // "prufer:..." or "seed:<hex>"
    Status status = Status::InconclusiveNumeric;
    double eigenvalue = 0.0;
    std::size_t cluster_size = 0;
    Outcome outcome = Outcome::Violation;
    bool strictly_monotone = false;
    // Candidates only: the vector passes the relaxed structure test, so the
    // failure comes from ties or a zero plateau.
    bool relaxed_holds = false;
    // "vector", "refined", "basis:<k>", "combination:<k>" or empty.
    std::string resolved_by;
    std::string note;
};

// Everything needed to re-check a candidate from scratch.
struct CandidateRecord {
    InstanceResult instance;
    std::vector<Edge> edges;
    int n = 0;
    std::vector<double> matrix;  // row-major A
    std::vector<double> vector;  // refined eigenvector, unit 2-norm
    double refinement_residual = 0.0;
    CaseClassification classification;
    bool revalidated = false;
};

struct EvaluationOptions {
    ConjectureKind kind = ConjectureKind::Conj2;
    int samples = 1000;
    SearchTolerances tol;
};

struct Evaluation {
    InstanceResult result;
    // The vector the verdict rests on (accepted, refined or last tried) and
    // its classification; empty when the eigensolver failed.
    std::vector<double> vector;
    std::optional<CaseClassification> classification;
    std::optional<CandidateRecord> candidate;
};

// One instance: eigendecompose A^L, take the target cluster and look for a
// well-structured eigenvector in it. `combination_seed` drives the random
// eigenspace combinations.
Evaluation evaluate_instance(const Tree& t, const SymMatrix& a, const EvaluationOptions& opts,
                             std::uint64_t combination_seed);

// Recomputes A^L, the target cluster, the stored vector's residual and its
// classification; true when the record still describes a violation.
bool revalidate(const CandidateRecord& c, const EvaluationOptions& opts);

// Number of random combinations tried for a cluster of dimension d.
int combination_budget(int samples, std::size_t d);

struct SearchReport {
    SearchConfig config;
    std::vector<InstanceResult> instances;  // by index
    std::vector<CandidateRecord> candidates;
    std::map<Status, std::uint64_t> status_counts;
    std::uint64_t holds_strict = 0;
    std::uint64_t candidates_relaxed = 0;  // surviving candidates passing the relaxed test
    std::map<std::size_t, std::uint64_t> cluster_histogram;
    double wall_seconds = 0.0;
    std::string simd;

    std::uint64_t total() const { return instances.size(); }
    std::uint64_t count(Status s) const;
    std::uint64_t surviving_candidates() const;
};

SearchReport search_conjecture(const SearchConfig& cfg);

std::string to_string(ConjectureKind k);
std::string to_string(MatrixFamily f);
std::optional<ConjectureKind> parse_conjecture_kind(const std::string& s);
std::optional<MatrixFamily> parse_matrix_family(const std::string& s);
// "exhaustive:N" or "random:N:COUNT".
std::optional<TreeSource> parse_tree_source(const std::string& s);
std::string to_string(const TreeSource& t);

}  // namespace distlap
