#pragma once

#include <cstdint>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "c4free/cube.hpp"

namespace c4free {

enum class Phase { kPenalty, kSwap };

std::string to_string(Phase p);
Phase parse_phase(const std::string& s);

class InvalidMove : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidInit : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidConfig : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// One annealing run.
struct SAConfig {
  int n = 6;
  double lambda = 0.6;
  double t0 = 1.0;
  double t1 = 0.01;
  std::uint64_t steps = 1'000'000;
  Phase phase = Phase::kPenalty;
  std::uint64_t target_edges = 0;  // swap phase only
  std::uint64_t seed = 0;
  // Penalty phase: after annealing, strip violated cycles from the lowest-f
  // state and refill greedily; the result competes with the tracked best.
  bool polish = true;

  void validate() const;
};

// Edge set plus per-cycle present-edge counters, maintained incrementally.
class SearchState {
 public:
  explicit SearchState(int n);
  explicit SearchState(const EdgeSet& init);

  int dim() const { return edges_.dim(); }
  const EdgeSet& edges() const { return edges_; }
  std::uint64_t violations() const { return violations_; }
  std::uint64_t edge_count() const { return edge_count_; }
  std::span<const std::uint8_t> present_counts() const { return present_; }

  // Change in violations if e were toggled.
  int toggle_delta(EdgeId e) const {
    const bool present = edges_.contains(e);
    int delta = 0;
    for (C4Id c : cube_->incident_cycles(e)) {
      if (present)
        delta -= present_[c] == 4 ? 1 : 0;
      else
        delta += present_[c] == 3 ? 1 : 0;
    }
    return delta;
  }

  void apply_toggle(EdgeId e) {
    const bool present = edges_.contains(e);
    edges_.toggle(e);
    for (C4Id c : cube_->incident_cycles(e)) {
      if (present) {
        violations_ -= present_[c] == 4 ? 1 : 0;
        --present_[c];
      } else {
        ++present_[c];
        violations_ += present_[c] == 4 ? 1 : 0;
      }
    }
    edge_count_ = present ? edge_count_ - 1 : edge_count_ + 1;
  }

  // Removes e_out and adds e_in; throws InvalidMove unless e_out is present and e_in absent.
  void apply_swap(EdgeId e_out, EdgeId e_in);

  // Recomputes counters from scratch and compares with the incremental values.
  bool consistent() const;

 private:
  const Hypercube* cube_;
  EdgeSet edges_;
  std::vector<std::uint8_t> present_;
  std::uint64_t violations_ = 0;
  std::uint64_t edge_count_ = 0;
};

struct TraceSummary {
  std::uint64_t accepted = 0;
  std::uint64_t improvements = 0;
  std::uint64_t final_violations = 0;
  std::uint64_t final_edges = 0;
  double final_temperature = 0.0;
  double min_objective = 0.0;
  bool polished_better = false;
};

struct SearchResult {
  EdgeSet best;
  std::uint64_t violations = 0;
  std::uint64_t edges = 0;
  double objective = 0.0;
  std::uint64_t best_step = 0;
  std::uint64_t seed = 0;
  TraceSummary trace;
};

// Phase 1: minimise -|E| + lambda * V by single-edge toggles. Starts from
// `init` when given, otherwise from the empty set.
SearchResult penalty_anneal(const SAConfig& config, const std::optional<EdgeSet>& init = std::nullopt,
                            std::ostream* progress = nullptr);

// Phase 2: minimise V at fixed |E| = target_edges by swap moves.
SearchResult swap_anneal(const SAConfig& config, const EdgeSet& init,
                         std::ostream* progress = nullptr);

// Greedy repair: drop edges until no cycle is complete, then add every edge
// that completes nothing, in random order.
EdgeSet make_c4_free(const EdgeSet& edges, std::mt19937_64& rng);

// Adds absent edges, each completing as few cycles as possible, until |E| = target.
EdgeSet pad_to_target(const EdgeSet& edges, std::uint64_t target, std::mt19937_64& rng);

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct CampaignConfig {
  int n = 6;
  Range lambda{0.30, 0.90};
  Range t0{0.20, 4.00};
  Range t1{0.001, 0.030};
  std::uint64_t steps = 1'000'000;
  Phase phase = Phase::kPenalty;
  std::uint64_t target_edges = 0;
  std::uint64_t seed = 0;
  int trials = 1;
  int workers = 1;
  bool polish = true;
  std::optional<EdgeSet> init;  // required for the swap phase

  void validate() const;
};

struct SolutionRecord {
  int n = 0;
  EdgeSet edges;
  std::uint64_t seed = 0;
  int trial = 0;
  Phase phase = Phase::kPenalty;
  std::uint64_t step = 0;
  std::uint64_t violations = 0;
  bool verified = false;
};

struct TrialOutcome {
  int trial = 0;
  std::uint64_t seed = 0;
  double lambda = 0.0;
  double t0 = 0.0;
  double t1 = 0.0;
  SearchResult result;
  bool recorded = false;  // certified and new to the corpus
};

// Distinct certified solutions; insertion is deduplicated on the exact edge set.
class Corpus {
 public:
  // Returns false for a duplicate. Throws NotC4Free for an uncertifiable set.
  bool add(SolutionRecord record);
  const std::vector<SolutionRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }

 private:
  std::mutex mu_;
  std::unordered_set<EdgeSet, EdgeSetHash> seen_;
  std::vector<SolutionRecord> records_;
};

struct CampaignResult {
  std::vector<TrialOutcome> trials;
  std::vector<SolutionRecord> corpus;
  EdgeSet incumbent;
  std::uint64_t incumbent_violations = 0;
};

std::uint64_t trial_seed(std::uint64_t seed, int trial);

// Trial 0 starts from the empty set (penalty) or `init` (swap); every later
// trial starts from a random automorphism image of the incumbent. With
// workers > 1, trials run in batches that share the incumbent as of the batch
// start, so results depend on (seed, workers) only.
CampaignResult run_campaign(const CampaignConfig& config, std::ostream* progress = nullptr);

}  // namespace c4free
