#include "c4free/cube.hpp"

#include <algorithm>
#include <bit>
#include <memory>
#include <mutex>
#include <numeric>

namespace c4free {

InvalidDimension::InvalidDimension(int n)
    : std::invalid_argument("invalid dimension " + std::to_string(n) + ", expected " +
                            std::to_string(kMinDim) + " <= n <= " + std::to_string(kMaxDim)) {}

NotAnEdge::NotAnEdge(Vertex u, Vertex v, int n)
    : std::invalid_argument("vertices " + std::to_string(u) + " and " + std::to_string(v) +
                            " are not adjacent in Q_" + std::to_string(n)) {}

void check_dim(int n) {
  if (n < kMinDim || n > kMaxDim) throw InvalidDimension(n);
}

DimParams dim_params(int n) {
  check_dim(n);
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  return {std::uint64_t{1} << n, static_cast<std::uint64_t>(n) << (n - 1),
          pairs << (n - 2)};
}

EdgeId edge_id(int n, Vertex u, Vertex v) {
  check_dim(n);
  const Vertex limit = Vertex{1} << n;
  const Vertex diff = u ^ v;
  if (u >= limit || v >= limit || !std::has_single_bit(diff)) throw NotAnEdge(u, v, n);
  const int i = std::countr_zero(diff);
  const Vertex base = std::min(u, v);
  return (static_cast<EdgeId>(i) << (n - 1)) + compress(base, i);
}

int edge_direction(int n, EdgeId id) { return static_cast<int>(id >> (n - 1)); }

Endpoints edge_endpoints(int n, EdgeId id) {
  check_dim(n);
  if (static_cast<std::uint64_t>(id) >= dim_params(n).edge_count)
    throw std::out_of_range("edge id " + std::to_string(id) + " out of range for Q_" +
                            std::to_string(n));
  const int i = edge_direction(n, id);
  const Vertex base = expand(id & ((EdgeId{1} << (n - 1)) - 1), i);
  return {base, base | (Vertex{1} << i)};
}

FourCycle make_four_cycle(int n, int i, int j, Vertex base) {
  FourCycle c;
  c.i = i;
  c.j = j;
  c.base = base;
  const Vertex ei = Vertex{1} << i;
  const Vertex ej = Vertex{1} << j;
  c.vertices = {base, base ^ ei, base ^ ej, base ^ ei ^ ej};
  c.edges = {edge_id(n, c.vertices[0], c.vertices[1]), edge_id(n, c.vertices[0], c.vertices[2]),
             edge_id(n, c.vertices[1], c.vertices[3]), edge_id(n, c.vertices[2], c.vertices[3])};
  c.id = (colex_pair_rank(i, j) << (n - 2)) + compress2(base, i, j);
  return c;
}

std::vector<FourCycle> enumerate_c4(int n) {
  check_dim(n);
  std::vector<FourCycle> out;
  out.reserve(dim_params(n).c4_count);
  const std::uint32_t bases = std::uint32_t{1} << (n - 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (std::uint32_t c = 0; c < bases; ++c)
        out.push_back(make_four_cycle(n, i, j, expand2(c, i, j)));
  // expand2 is monotone, so the inner loop already visits bases in increasing order.
  return out;
}

std::vector<std::vector<C4Id>> edge_c4_incidence(int n) {
  const Hypercube& cube = Hypercube::get(n);
  std::vector<std::vector<C4Id>> out(cube.edge_count());
  for (EdgeId e = 0; e < cube.edge_count(); ++e) {
    auto span = cube.incident_cycles(e);
    out[e].assign(span.begin(), span.end());
  }
  return out;
}

Hypercube::Hypercube(int n) : n_(n), params_(dim_params(n)), cycles_(enumerate_c4(n)) {
  position_.resize(params_.c4_count);
  for (std::size_t p = 0; p < cycles_.size(); ++p) position_[cycles_[p].id] = static_cast<std::uint32_t>(p);

  // For edge e in direction i with base b, the partner direction j gives the
  // cycle on pair (min(i,j), max(i,j)) whose base is b with bit j cleared.
  const std::size_t k = static_cast<std::size_t>(n - 1);
  incidence_.resize(params_.edge_count * k);
  for (EdgeId e = 0; e < params_.edge_count; ++e) {
    const auto [b, _] = edge_endpoints(n, e);
    const int i = edge_direction(n, e);
    std::size_t slot = static_cast<std::size_t>(e) * k;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const Vertex base = b & ~(Vertex{1} << j);
      const int lo = std::min(i, j);
      const int hi = std::max(i, j);
      incidence_[slot++] = (colex_pair_rank(lo, hi) << (n - 2)) + compress2(base, lo, hi);
    }
  }
}

const Hypercube& Hypercube::get(int n) {
  check_dim(n);
  static std::array<std::once_flag, kMaxDim + 1> flags;
  static std::array<std::unique_ptr<const Hypercube>, kMaxDim + 1> cubes;
  std::call_once(flags[n], [n] { cubes[n] = std::make_unique<const Hypercube>(n); });
  return *cubes[n];
}

EdgeSet::EdgeSet(int n) : n_(n), edge_count_(dim_params(n).edge_count) {
  words_.assign((edge_count_ + 63) / 64, 0);
}

EdgeSet EdgeSet::full(int n) {
  EdgeSet s(n);
  for (EdgeId e = 0; e < s.edge_count_; ++e) s.insert(e);
  return s;
}

EdgeSet EdgeSet::from_ids(int n, std::span<const EdgeId> ids) {
  EdgeSet s(n);
  for (EdgeId e : ids) {
    if (e >= s.edge_count_) throw std::out_of_range("edge id " + std::to_string(e) + " out of range");
    s.insert(e);
  }
  return s;
}

std::uint64_t EdgeSet::size() const {
  std::uint64_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::uint64_t>(std::popcount(w));
  return total;
}

std::vector<EdgeId> EdgeSet::ids() const {
  std::vector<EdgeId> out;
  out.reserve(size());
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits) {
      out.push_back(static_cast<EdgeId>(w * 64 + std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

std::size_t EdgeSetHash::operator()(const EdgeSet& e) const noexcept {
  // FNV-1a over the words.
  std::uint64_t h = 1469598103934665603ull ^ static_cast<std::uint64_t>(e.dim());
  for (std::uint64_t w : e.words()) {
    h ^= w;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

Automorphism Automorphism::identity(int n) {
  check_dim(n);
  Automorphism a;
  a.perm.resize(n);
  std::iota(a.perm.begin(), a.perm.end(), 0);
  return a;
}

Vertex permute_bits(Vertex v, std::span<const int> perm) {
  Vertex out = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    if ((v >> i) & 1u) out |= Vertex{1} << perm[i];
  return out;
}

Vertex Automorphism::apply(Vertex v) const { return permute_bits(v, perm) ^ mask; }

EdgeId Automorphism::apply_edge(EdgeId e) const {
  const int n = dim();
  const auto [u, v] = edge_endpoints(n, e);
  return edge_id(n, apply(u), apply(v));
}

Automorphism random_automorphism(int n, std::mt19937_64& rng) {
  Automorphism a = Automorphism::identity(n);
  std::shuffle(a.perm.begin(), a.perm.end(), rng);
  a.mask = static_cast<Vertex>(rng() & ((std::uint64_t{1} << n) - 1));
  return a;
}

EdgeSet apply_automorphism(const Automorphism& a, const EdgeSet& edges) {
  if (a.dim() != edges.dim())
    throw std::invalid_argument("automorphism and edge set have different dimensions");
  std::vector<int> sorted = a.perm;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < a.dim(); ++i)
    if (sorted[i] != i) throw std::invalid_argument("automorphism perm is not a permutation");
  if (a.mask >> a.dim()) throw std::invalid_argument("automorphism mask out of range");
  EdgeSet out(edges.dim());
  for (EdgeId e : edges.ids()) out.insert(a.apply_edge(e));
  return out;
}

}  // namespace c4free
