#pragma once

// Reference computations that deliberately avoid the library's cycle tables,
// incidence lists and incremental bookkeeping.

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "c4free/cube.hpp"

namespace c4free::oracle {

using VertexPair = std::pair<Vertex, Vertex>;

// Edges of Q_n as vertex pairs, generated from the adjacency rule alone.
inline std::vector<VertexPair> cube_edges(int n) {
  std::vector<VertexPair> out;
  for (Vertex v = 0; v < (Vertex{1} << n); ++v)
    for (int i = 0; i < n; ++i) {
      const Vertex u = v ^ (Vertex{1} << i);
      if (v < u) out.emplace_back(v, u);
    }
  return out;
}

inline std::vector<VertexPair> pairs_of(const EdgeSet& edges) {
  std::vector<VertexPair> out;
  for (EdgeId e : edges.ids()) {
    const auto [u, v] = edge_endpoints(edges.dim(), e);
    out.emplace_back(u, v);
  }
  return out;
}

inline std::vector<std::vector<int>> adjacency(int n, const std::vector<VertexPair>& pairs) {
  std::vector<std::vector<int>> adj(std::size_t{1} << n, std::vector<int>(std::size_t{1} << n, 0));
  for (auto [u, v] : pairs) adj[u][v] = adj[v][u] = 1;
  return adj;
}

// Number of 4-cycles of an arbitrary graph: for each unordered vertex pair
// {a, c} with k common neighbours there are C(k, 2) cycles having a and c
// opposite; each cycle has two such diagonals.
inline std::uint64_t count_four_cycles(int n, const std::vector<VertexPair>& pairs) {
  const auto adj = adjacency(n, pairs);
  const std::size_t size = adj.size();
  std::uint64_t total = 0;
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t c = a + 1; c < size; ++c) {
      std::uint64_t k = 0;
      for (std::size_t b = 0; b < size; ++b) k += adj[a][b] && adj[b][c] ? 1 : 0;
      total += k * (k - 1) / 2;
    }
  return total / 2;
}

inline std::uint64_t count_four_cycles(const EdgeSet& edges) {
  return count_four_cycles(edges.dim(), pairs_of(edges));
}

// Largest C4-free subset of Q_n by trying every subset (n <= 3).
inline std::uint64_t brute_force_max(int n) {
  const auto all = cube_edges(n);
  std::uint64_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << all.size()); ++mask) {
    const auto size = static_cast<std::uint64_t>(std::popcount(mask));
    if (size <= best) continue;
    std::vector<VertexPair> chosen;
    for (std::size_t k = 0; k < all.size(); ++k)
      if ((mask >> k) & 1u) chosen.push_back(all[k]);
    if (count_four_cycles(n, chosen) == 0) best = size;
  }
  return best;
}

inline Eigen::MatrixXd dense_adjacency(const EdgeSet& edges) {
  const Eigen::Index size = Eigen::Index{1} << edges.dim();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(size, size);
  for (auto [u, v] : pairs_of(edges)) a(u, v) = a(v, u) = 1.0;
  return a;
}

// Tr(A^4) from a dense matrix power; exact in double for these sizes.
inline std::int64_t dense_trace_a4(const EdgeSet& edges) {
  const Eigen::MatrixXd a = dense_adjacency(edges);
  const Eigen::MatrixXd a2 = a * a;
  return static_cast<std::int64_t>(std::llround((a2 * a2).trace()));
}

// Extreme eigenvalues from a full symmetric eigendecomposition.
inline std::pair<double, double> dense_extreme_eigenvalues(const EdgeSet& edges) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense_adjacency(edges), Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.maxCoeff(), ev.minCoeff()};
}

inline EdgeSet random_subset(int n, double density, std::mt19937_64& rng) {
  EdgeSet s(n);
  std::bernoulli_distribution keep(density);
  for (EdgeId e = 0; e < s.capacity(); ++e)
    if (keep(rng)) s.insert(e);
  return s;
}

}  // namespace c4free::oracle
