#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "c4free/cube.hpp"
#include "json.hpp"

namespace c4free {

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(int iterations, double residual);
  double residual() const { return residual_; }

 private:
  double residual_;
};

struct DegreeSequence {
  std::map<int, std::uint64_t> counts;  // degree -> number of vertices, zeros included
  std::uint64_t degree_sum() const;
};

std::vector<int> vertex_degrees(const EdgeSet& edges);
DegreeSequence degree_sequence(const EdgeSet& edges);

struct DimensionProfile {
  std::vector<std::uint64_t> raw;     // e_i for direction i
  std::vector<std::uint64_t> sorted;  // descending
};

DimensionProfile dimension_profile(const EdgeSet& edges);

// Shannon entropy in bits of the normalised profile.
double profile_entropy(std::span<const std::uint64_t> profile);

Eigen::SparseMatrix<double> adjacency_matrix(const EdgeSet& edges);

template <typename Scalar>
struct PowerIteration {
  Scalar eigenvalue{};
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> vector;
  int iterations = 0;
  Scalar residual{};
};

// Dominant eigenpair of a symmetric positive semidefinite operator. The start
// vector must not be orthogonal to the dominant eigenspace.
// Stops when ||Mx - (x'Mx)x|| <= tol.
template <typename Scalar>
PowerIteration<Scalar> power_iteration(const Eigen::SparseMatrix<Scalar>& m,
                                       const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& start,
                                       Scalar tol, int max_iterations) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  PowerIteration<Scalar> out;
  Vec x = start.normalized();
  Vec y(m.rows());
  for (out.iterations = 1; out.iterations <= max_iterations; ++out.iterations) {
    y.noalias() = m * x;
    out.eigenvalue = x.dot(y);
    out.residual = (y - out.eigenvalue * x).norm();
    if (out.residual <= tol) break;
    const Scalar norm = y.norm();
    if (norm == Scalar(0)) break;
    x = y / norm;
  }
  if (out.residual > tol) throw ConvergenceError(max_iterations, static_cast<double>(out.residual));
  out.vector = std::move(x);
  return out;
}

struct SpectrumSummary {
  double lambda_max = 0.0;
  double lambda_min = 0.0;
  int iterations = 0;
  double residual = 0.0;
};

// Extreme adjacency eigenvalues via power iteration on A + nI and nI - A.
// The second run starts from the parity-signed ones vector, which overlaps the
// signed Perron vector of every component (subgraphs of Q_n are bipartite).
SpectrumSummary spectrum(const EdgeSet& edges, double tol = 1e-9, int max_iterations = 50000);

// Tr(A^4) by exact common-neighbour counting.
std::int64_t trace_a4(const EdgeSet& edges);
// sum deg^2 + sum_{uv in E} (deg u + deg v) - 2|E|; equals trace_a4 iff C4-free.
std::int64_t trace_formula(const EdgeSet& edges);

std::uint64_t hamming(const EdgeSet& a, const EdgeSet& b);

struct DistanceStats {
  std::uint64_t min = 0;
  std::uint64_t max = 0;
  double mean = 0.0;
  double median = 0.0;
  std::uint64_t pairs = 0;
};

// Unordered pairs of distinct corpus members drawn uniformly with replacement.
DistanceStats distance_stats(std::span<const EdgeSet> corpus, std::uint64_t sample_pairs,
                             std::uint64_t seed);

// (n + 0.9 sqrt n) 2^(n-2)
double bhn_estimate(int n);

struct ProfileType {
  std::vector<std::uint64_t> profile;
  std::uint64_t frequency = 0;
  double mean_lambda_max = 0.0;
  double entropy = 0.0;
};

// Groups by sorted dimension profile; most frequent first, ties by the
// lexicographically larger profile.
std::vector<ProfileType> classify_corpus(std::span<const EdgeSet> corpus);

nlohmann::json report(const EdgeSet& edges);
nlohmann::json corpus_report(std::span<const EdgeSet> corpus, std::uint64_t sample_pairs,
                             std::uint64_t seed);

}  // namespace c4free
