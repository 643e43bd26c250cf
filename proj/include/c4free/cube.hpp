#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace c4free {

// Vertices of Q_n are bitmasks; coordinate i is bit i.
using Vertex = std::uint32_t;
// Canonical edge index: direction * 2^(n-1) + base with bit `direction` removed.
using EdgeId = std::uint32_t;
// Canonical four-cycle index: colex_rank(i, j) * 2^(n-2) + base with bits i, j removed.
using C4Id = std::uint32_t;

inline constexpr int kMinDim = 2;
inline constexpr int kMaxDim = 16;

class InvalidDimension : public std::invalid_argument {
 public:
  explicit InvalidDimension(int n);
};

class NotAnEdge : public std::invalid_argument {
 public:
  NotAnEdge(Vertex u, Vertex v, int n);
};

struct DimParams {
  std::uint64_t vertex_count;
  std::uint64_t edge_count;
  std::uint64_t c4_count;
  friend bool operator==(const DimParams&, const DimParams&) = default;
};

void check_dim(int n);
DimParams dim_params(int n);

// Removes bit i from b, shifting the higher bits down by one.
constexpr std::uint32_t compress(std::uint32_t b, int i) {
  const std::uint32_t low = b & ((1u << i) - 1u);
  return ((b >> (i + 1)) << i) | low;
}

// Inverse of compress: inserts a zero at bit position i.
constexpr std::uint32_t expand(std::uint32_t c, int i) {
  const std::uint32_t low = c & ((1u << i) - 1u);
  return ((c >> i) << (i + 1)) | low;
}

// Removes bits i < j from b.
constexpr std::uint32_t compress2(std::uint32_t b, int i, int j) {
  return compress(compress(b, j), i);
}

constexpr std::uint32_t expand2(std::uint32_t c, int i, int j) {
  return expand(expand(c, i), j);
}

constexpr std::uint32_t colex_pair_rank(int i, int j) {
  return static_cast<std::uint32_t>(j * (j - 1) / 2 + i);
}

EdgeId edge_id(int n, Vertex u, Vertex v);

struct Endpoints {
  Vertex low;   // endpoint with bit `direction` clear
  Vertex high;
};

Endpoints edge_endpoints(int n, EdgeId id);
int edge_direction(int n, EdgeId id);

struct FourCycle {
  int i = 0;
  int j = 0;
  Vertex base = 0;
  // b, b^e_i, b^e_j, b^e_i^e_j
  std::array<Vertex, 4> vertices{};
  // sides: {b, b^e_i}, {b, b^e_j}, {b^e_i, b^e_i^e_j}, {b^e_j, b^e_i^e_j}
  std::array<EdgeId, 4> edges{};
  C4Id id = 0;
};

FourCycle make_four_cycle(int n, int i, int j, Vertex base);

// Lexicographic by (i, j, base).
std::vector<FourCycle> enumerate_c4(int n);

// Entry e lists the n-1 cycles through edge e, ordered by the partner direction.
std::vector<std::vector<C4Id>> edge_c4_incidence(int n);

// Immutable per-dimension tables. Obtain through Hypercube::get(n); instances
// are built once per process and shared.
class Hypercube {
 public:
  static const Hypercube& get(int n);

  explicit Hypercube(int n);

  int dim() const { return n_; }
  const DimParams& params() const { return params_; }
  std::uint64_t vertex_count() const { return params_.vertex_count; }
  std::uint64_t edge_count() const { return params_.edge_count; }
  std::uint64_t c4_count() const { return params_.c4_count; }

  // Canonical (i, j, base) order.
  std::span<const FourCycle> cycles() const { return cycles_; }
  const FourCycle& cycle(C4Id id) const { return cycles_[position_[id]]; }
  std::size_t position_of(C4Id id) const { return position_[id]; }

  std::span<const C4Id> incident_cycles(EdgeId e) const {
    const std::size_t k = static_cast<std::size_t>(n_ - 1);
    return {incidence_.data() + static_cast<std::size_t>(e) * k, k};
  }

 private:
  int n_;
  DimParams params_;
  std::vector<FourCycle> cycles_;
  std::vector<std::uint32_t> position_;
  std::vector<C4Id> incidence_;
};

// Fixed-dimension bit set over canonical edge ids.
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(int n);

  static EdgeSet full(int n);
  static EdgeSet from_ids(int n, std::span<const EdgeId> ids);

  int dim() const { return n_; }
  std::uint64_t capacity() const { return edge_count_; }

  bool contains(EdgeId e) const { return (words_[e >> 6] >> (e & 63)) & 1u; }
  void insert(EdgeId e) { words_[e >> 6] |= bit(e); }
  void erase(EdgeId e) { words_[e >> 6] &= ~bit(e); }
  void toggle(EdgeId e) { words_[e >> 6] ^= bit(e); }

  std::uint64_t size() const;
  bool empty() const { return size() == 0; }

  // Present edge ids in increasing order.
  std::vector<EdgeId> ids() const;

  std::span<const std::uint64_t> words() const { return words_; }

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;
  friend auto operator<=>(const EdgeSet& a, const EdgeSet& b) {
    if (a.n_ != b.n_) return a.n_ <=> b.n_;
    return a.words_ <=> b.words_;
  }

 private:
  static std::uint64_t bit(EdgeId e) { return std::uint64_t{1} << (e & 63); }

  int n_ = 0;
  std::uint64_t edge_count_ = 0;
  std::vector<std::uint64_t> words_;
};

struct EdgeSetHash {
  std::size_t operator()(const EdgeSet& e) const noexcept;
};

// Element of Aut(Q_n): v -> permute_bits(v, perm) ^ mask, where bit i of v
// moves to bit perm[i].
struct Automorphism {
  std::vector<int> perm;
  Vertex mask = 0;

  static Automorphism identity(int n);
  int dim() const { return static_cast<int>(perm.size()); }
  Vertex apply(Vertex v) const;
  EdgeId apply_edge(EdgeId e) const;
};

Vertex permute_bits(Vertex v, std::span<const int> perm);

Automorphism random_automorphism(int n, std::mt19937_64& rng);
EdgeSet apply_automorphism(const Automorphism& a, const EdgeSet& edges);

}  // namespace c4free
