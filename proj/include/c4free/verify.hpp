#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "c4free/cube.hpp"

namespace c4free {

class AlreadyPresent : public std::invalid_argument {
 public:
  explicit AlreadyPresent(EdgeId e);
};

// Raised when an operation defined only for C4-free sets gets a set with violations.
class NotC4Free : public std::invalid_argument {
 public:
  explicit NotC4Free(std::uint64_t violations);
};

struct Verdict {
  bool free = true;
  std::optional<C4Id> first_violation;  // first complete cycle in canonical order
  std::uint64_t violation_count = 0;
  std::uint64_t cycles_checked = 0;
};

// Full scan over every four-cycle of Q_n.
Verdict is_c4_free(const EdgeSet& edges);

std::uint64_t count_violations(const EdgeSet& edges);

bool cycle_complete(const FourCycle& c, const EdgeSet& edges);

// Number of cycles through e whose other three sides are present. Requires e absent.
int c4s_created_by_adding(const EdgeSet& edges, EdgeId e);

bool is_locally_maximal(const EdgeSet& edges);

// Index k holds the number of non-edges whose addition completes exactly k cycles (0 <= k <= n-1).
std::vector<std::uint64_t> nonedge_creation_histogram(const EdgeSet& edges);

}  // namespace c4free
