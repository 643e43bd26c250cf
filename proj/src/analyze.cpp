#include "c4free/analyze.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>

#include "c4free/verify.hpp"

namespace c4free {

using nlohmann::json;

ConvergenceError::ConvergenceError(int iterations, double residual)
    : std::runtime_error("power iteration did not converge in " + std::to_string(iterations) +
                         " iterations (residual " + std::to_string(residual) + ")"),
      residual_(residual) {}

std::uint64_t DegreeSequence::degree_sum() const {
  std::uint64_t sum = 0;
  for (const auto& [deg, count] : counts) sum += static_cast<std::uint64_t>(deg) * count;
  return sum;
}

namespace {

std::vector<std::vector<Vertex>> adjacency_lists(const EdgeSet& edges) {
  std::vector<std::vector<Vertex>> adj(std::size_t{1} << edges.dim());
  for (EdgeId e : edges.ids()) {
    const auto [u, v] = edge_endpoints(edges.dim(), e);
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

void require_same_dim(const EdgeSet& a, const EdgeSet& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("edge sets live in Q_" + std::to_string(a.dim()) + " and Q_" +
                            std::to_string(b.dim()));
}

}  // namespace

std::vector<int> vertex_degrees(const EdgeSet& edges) {
  std::vector<int> deg(std::size_t{1} << edges.dim(), 0);
  for (EdgeId e : edges.ids()) {
    const auto [u, v] = edge_endpoints(edges.dim(), e);
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

DegreeSequence degree_sequence(const EdgeSet& edges) {
  DegreeSequence seq;
  for (int d : vertex_degrees(edges)) ++seq.counts[d];
  return seq;
}

DimensionProfile dimension_profile(const EdgeSet& edges) {
  DimensionProfile p;
  p.raw.assign(static_cast<std::size_t>(edges.dim()), 0);
  for (EdgeId e : edges.ids()) ++p.raw[static_cast<std::size_t>(edge_direction(edges.dim(), e))];
  p.sorted = p.raw;
  std::sort(p.sorted.begin(), p.sorted.end(), std::greater<>());
  return p;
}

double profile_entropy(std::span<const std::uint64_t> profile) {
  const double total = static_cast<double>(std::accumulate(profile.begin(), profile.end(), std::uint64_t{0}));
  if (total == 0.0) throw std::invalid_argument("entropy of an all-zero profile is undefined");
  double h = 0.0;
  for (std::uint64_t e : profile) {
    if (e == 0) continue;
    const double p = static_cast<double>(e) / total;
    h -= p * std::log2(p);
  }
  return h;
}

Eigen::SparseMatrix<double> adjacency_matrix(const EdgeSet& edges) {
  const auto size = static_cast<Eigen::Index>(std::size_t{1} << edges.dim());
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(2 * edges.size());
  for (EdgeId e : edges.ids()) {
    const auto [u, v] = edge_endpoints(edges.dim(), e);
    entries.emplace_back(u, v, 1.0);
    entries.emplace_back(v, u, 1.0);
  }
  Eigen::SparseMatrix<double> a(size, size);
  a.setFromTriplets(entries.begin(), entries.end());
  return a;
}

SpectrumSummary spectrum(const EdgeSet& edges, double tol, int max_iterations) {
  if (edges.empty()) throw std::invalid_argument("spectrum requires a nonempty edge set");
  const double n = edges.dim();
  const Eigen::SparseMatrix<double> a = adjacency_matrix(edges);
  Eigen::SparseMatrix<double> identity(a.rows(), a.cols());
  identity.setIdentity();

  const Eigen::SparseMatrix<double> shifted = a + n * identity;
  const Eigen::SparseMatrix<double> reflected = n * identity - a;
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(a.rows());
  Eigen::VectorXd signed_ones(a.rows());
  for (Eigen::Index v = 0; v < a.rows(); ++v)
    signed_ones[v] = std::popcount(static_cast<std::uint32_t>(v)) % 2 ? -1.0 : 1.0;
  const auto top = power_iteration<double>(shifted, ones, tol, max_iterations);
  const auto bottom = power_iteration<double>(reflected, signed_ones, tol, max_iterations);

  SpectrumSummary s;
  s.lambda_max = top.eigenvalue - n;
  s.lambda_min = n - bottom.eigenvalue;
  s.iterations = top.iterations + bottom.iterations;
  s.residual = std::max(top.residual, bottom.residual);
  return s;
}

std::int64_t trace_a4(const EdgeSet& edges) {
  const auto adj = adjacency_lists(edges);
  std::vector<std::int64_t> walks(adj.size(), 0);
  std::vector<Vertex> touched;
  std::int64_t total = 0;
  for (Vertex u = 0; u < adj.size(); ++u) {
    // walks[v] = number of 2-walks u -> w -> v; summing squares counts closed 4-walks at u.
    for (Vertex w : adj[u])
      for (Vertex v : adj[w]) {
        if (walks[v]++ == 0) touched.push_back(v);
      }
    for (Vertex v : touched) {
      total += walks[v] * walks[v];
      walks[v] = 0;
    }
    touched.clear();
  }
  return total;
}

std::int64_t trace_formula(const EdgeSet& edges) {
  const std::vector<int> deg = vertex_degrees(edges);
  std::int64_t total = 0;
  for (int d : deg) total += static_cast<std::int64_t>(d) * d;
  for (EdgeId e : edges.ids()) {
    const auto [u, v] = edge_endpoints(edges.dim(), e);
    total += deg[u] + deg[v];
  }
  return total - 2 * static_cast<std::int64_t>(edges.size());
}

std::uint64_t hamming(const EdgeSet& a, const EdgeSet& b) {
  require_same_dim(a, b);
  std::uint64_t d = 0;
  const auto wa = a.words();
  const auto wb = b.words();
  for (std::size_t k = 0; k < wa.size(); ++k) d += static_cast<std::uint64_t>(std::popcount(wa[k] ^ wb[k]));
  return d;
}

DistanceStats distance_stats(std::span<const EdgeSet> corpus, std::uint64_t sample_pairs,
                             std::uint64_t seed) {
  if (corpus.size() < 2) throw std::invalid_argument("distance statistics need at least two solutions");
  if (sample_pairs == 0) throw std::invalid_argument("sample_pairs must be positive");
  for (const EdgeSet& e : corpus) require_same_dim(corpus[0], e);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> first(0, corpus.size() - 1);
  std::uniform_int_distribution<std::size_t> second(0, corpus.size() - 2);
  std::vector<std::uint64_t> d;
  d.reserve(sample_pairs);
  for (std::uint64_t k = 0; k < sample_pairs; ++k) {
    const std::size_t i = first(rng);
    std::size_t j = second(rng);
    if (j >= i) ++j;
    d.push_back(hamming(corpus[i], corpus[j]));
  }
  std::sort(d.begin(), d.end());
  DistanceStats s;
  s.pairs = sample_pairs;
  s.min = d.front();
  s.max = d.back();
  s.mean = static_cast<double>(std::accumulate(d.begin(), d.end(), std::uint64_t{0})) /
           static_cast<double>(d.size());
  const std::size_t mid = d.size() / 2;
  s.median = d.size() % 2 ? static_cast<double>(d[mid])
                          : 0.5 * static_cast<double>(d[mid - 1] + d[mid]);
  return s;
}

double bhn_estimate(int n) {
  if (n < 1) throw std::invalid_argument("bhn_estimate requires n >= 1");
  return 0.5 * (n + 0.9 * std::sqrt(static_cast<double>(n))) * std::ldexp(1.0, n - 1);
}

std::vector<ProfileType> classify_corpus(std::span<const EdgeSet> corpus) {
  if (corpus.empty()) return {};
  for (const EdgeSet& e : corpus) {
    require_same_dim(corpus[0], e);
    if (e.size() != corpus[0].size())
      throw std::invalid_argument("classification needs solutions with equal edge counts");
  }
  struct Accum {
    std::uint64_t count = 0;
    double lambda_sum = 0.0;
  };
  std::map<std::vector<std::uint64_t>, Accum> groups;
  for (const EdgeSet& e : corpus) {
    Accum& a = groups[dimension_profile(e).sorted];
    ++a.count;
    a.lambda_sum += e.empty() ? 0.0 : spectrum(e).lambda_max;
  }
  std::vector<ProfileType> types;
  for (const auto& [profile, acc] : groups) {
    ProfileType t;
    t.profile = profile;
    t.frequency = acc.count;
    t.mean_lambda_max = acc.lambda_sum / static_cast<double>(acc.count);
    t.entropy = corpus[0].empty() ? 0.0 : profile_entropy(profile);
    types.push_back(std::move(t));
  }
  std::sort(types.begin(), types.end(), [](const ProfileType& a, const ProfileType& b) {
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    return a.profile > b.profile;
  });
  return types;
}

namespace {

json degree_json(const DegreeSequence& seq) {
  json out = json::object();
  for (const auto& [deg, count] : seq.counts) out[std::to_string(deg)] = count;
  return out;
}

}  // namespace

json report(const EdgeSet& edges) {
  const int n = edges.dim();
  const std::uint64_t m = edges.size();
  const Verdict verdict = is_c4_free(edges);
  json r;
  r["n"] = n;
  r["edges"] = m;
  r["edge_capacity"] = edges.capacity();
  r["density"] = static_cast<double>(m) / static_cast<double>(edges.capacity());
  r["cycles_checked"] = verdict.cycles_checked;
  r["violations"] = verdict.violation_count;
  r["free"] = verdict.free;
  r["first_violation"] = verdict.first_violation ? json(*verdict.first_violation) : json(nullptr);
  if (verdict.free) {
    r["locally_maximal"] = is_locally_maximal(edges);
    json hist = json::object();
    const auto h = nonedge_creation_histogram(edges);
    for (std::size_t k = 0; k < h.size(); ++k) hist[std::to_string(k)] = h[k];
    r["nonedge_histogram"] = hist;
  } else {
    r["locally_maximal"] = nullptr;
    r["nonedge_histogram"] = nullptr;
  }

  const DegreeSequence seq = degree_sequence(edges);
  r["degree_sequence"] = degree_json(seq);
  bool support = true;
  for (const auto& [deg, count] : seq.counts) support = support && deg >= n - 3 && deg <= n - 1;
  r["degree_support_n_minus_3_to_n_minus_1"] = support;

  const DimensionProfile profile = dimension_profile(edges);
  r["dimension_profile"] = {{"raw", profile.raw}, {"sorted", profile.sorted}};
  r["profile_entropy"] = m ? json(profile_entropy(profile.sorted)) : json(nullptr);

  if (m) {
    const SpectrumSummary s = spectrum(edges);
    r["spectrum"] = {{"lambda_max", s.lambda_max},
                     {"lambda_min", s.lambda_min},
                     {"sum", s.lambda_max + s.lambda_min},
                     {"iterations", s.iterations},
                     {"residual", s.residual}};
  } else {
    r["spectrum"] = nullptr;
  }

  const std::int64_t a4 = trace_a4(edges);
  const std::int64_t formula = trace_formula(edges);
  r["trace"] = {{"a4", a4}, {"formula", formula}, {"difference", a4 - formula}, {"equality", a4 == formula}};

  const double bhn = bhn_estimate(n);
  r["bhn"] = {{"estimate", bhn},
              {"delta", static_cast<double>(m) - bhn},
              {"relative_percent", 100.0 * (static_cast<double>(m) - bhn) / bhn}};
  return r;
}

json corpus_report(std::span<const EdgeSet> corpus, std::uint64_t sample_pairs, std::uint64_t seed) {
  json r;
  r["size"] = corpus.size();
  if (corpus.empty()) return r;
  const int n = corpus[0].dim();
  r["n"] = n;

  std::map<std::uint64_t, std::uint64_t> by_size;
  for (const EdgeSet& e : corpus) {
    require_same_dim(corpus[0], e);
    ++by_size[e.size()];
  }
  json sizes = json::object();
  for (const auto& [m, count] : by_size) sizes[std::to_string(m)] = count;
  r["edge_counts"] = sizes;

  // Classification and coverage are taken over the largest solutions only.
  const std::uint64_t top = by_size.rbegin()->first;
  std::vector<EdgeSet> best;
  for (const EdgeSet& e : corpus)
    if (e.size() == top) best.push_back(e);
  r["classified_edges"] = top;

  json types = json::array();
  std::uint64_t rank = 0;
  for (const ProfileType& t : classify_corpus(best))
    types.push_back({{"rank", ++rank},
                     {"profile", t.profile},
                     {"frequency", t.frequency},
                     {"entropy", t.entropy},
                     {"mean_lambda_max", t.mean_lambda_max}});
  r["types"] = types;

  std::map<std::string, std::uint64_t> degree_sequences;
  for (const EdgeSet& e : best) degree_sequences[degree_json(degree_sequence(e)).dump()]++;
  json seqs = json::array();
  for (const auto& [text, count] : degree_sequences)
    seqs.push_back({{"degrees", json::parse(text)}, {"count", count}});
  r["degree_sequences"] = seqs;

  EdgeSet covered(n);
  for (const EdgeSet& e : best)
    for (EdgeId id : e.ids()) covered.insert(id);
  r["edge_coverage"] = {{"covered", covered.size()},
                        {"total", covered.capacity()},
                        {"all_covered", covered.size() == covered.capacity()}};

  if (best.size() >= 2) {
    const DistanceStats d = distance_stats(best, sample_pairs, seed);
    r["distances"] = {{"pairs", d.pairs}, {"min", d.min}, {"max", d.max}, {"mean", d.mean}, {"median", d.median}};
  } else {
    r["distances"] = nullptr;
  }
  return r;
}

}  // namespace c4free
