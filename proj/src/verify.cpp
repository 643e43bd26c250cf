#include "c4free/verify.hpp"

#include <string>

namespace c4free {

AlreadyPresent::AlreadyPresent(EdgeId e)
    : std::invalid_argument("edge " + std::to_string(e) + " is already present") {}

NotC4Free::NotC4Free(std::uint64_t violations)
    : std::invalid_argument("edge set is not C4-free (" + std::to_string(violations) +
                            " complete four-cycles)") {}

bool cycle_complete(const FourCycle& c, const EdgeSet& edges) {
  return edges.contains(c.edges[0]) && edges.contains(c.edges[1]) && edges.contains(c.edges[2]) &&
         edges.contains(c.edges[3]);
}

Verdict is_c4_free(const EdgeSet& edges) {
  const Hypercube& cube = Hypercube::get(edges.dim());
  Verdict v;
  for (const FourCycle& c : cube.cycles()) {
    ++v.cycles_checked;
    if (!cycle_complete(c, edges)) continue;
    if (!v.first_violation) v.first_violation = c.id;
    ++v.violation_count;
  }
  v.free = v.violation_count == 0;
  return v;
}

std::uint64_t count_violations(const EdgeSet& edges) {
  const Hypercube& cube = Hypercube::get(edges.dim());
  std::uint64_t total = 0;
  for (const FourCycle& c : cube.cycles()) total += cycle_complete(c, edges) ? 1 : 0;
  return total;
}

int c4s_created_by_adding(const EdgeSet& edges, EdgeId e) {
  if (edges.contains(e)) throw AlreadyPresent(e);
  const Hypercube& cube = Hypercube::get(edges.dim());
  int created = 0;
  for (C4Id id : cube.incident_cycles(e)) {
    const FourCycle& c = cube.cycle(id);
    int others = 0;
    for (EdgeId side : c.edges) others += (side != e && edges.contains(side)) ? 1 : 0;
    created += others == 3 ? 1 : 0;
  }
  return created;
}

namespace {

void require_free(const EdgeSet& edges) {
  const std::uint64_t v = count_violations(edges);
  if (v != 0) throw NotC4Free(v);
}

}  // namespace

bool is_locally_maximal(const EdgeSet& edges) {
  require_free(edges);
  const std::uint64_t m = edges.capacity();
  for (EdgeId e = 0; e < m; ++e)
    if (!edges.contains(e) && c4s_created_by_adding(edges, e) == 0) return false;
  return true;
}

std::vector<std::uint64_t> nonedge_creation_histogram(const EdgeSet& edges) {
  require_free(edges);
  std::vector<std::uint64_t> hist(static_cast<std::size_t>(edges.dim()), 0);
  const std::uint64_t m = edges.capacity();
  for (EdgeId e = 0; e < m; ++e)
    if (!edges.contains(e)) ++hist[static_cast<std::size_t>(c4s_created_by_adding(edges, e))];
  return hist;
}

}  // namespace c4free
