#include "c4free/search.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <ostream>
#include <tuple>

#include "c4free/verify.hpp"

namespace c4free {

std::string to_string(Phase p) { return p == Phase::kPenalty ? "penalty" : "swap"; }

Phase parse_phase(const std::string& s) {
  if (s == "penalty") return Phase::kPenalty;
  if (s == "swap") return Phase::kSwap;
  throw InvalidConfig("unknown phase '" + s + "', expected penalty or swap");
}

void SAConfig::validate() const {
  check_dim(n);
  if (!(t0 > t1 && t1 > 0.0)) throw InvalidConfig("temperatures must satisfy t0 > t1 > 0");
  if (steps < 1) throw InvalidConfig("steps must be >= 1");
  if (phase == Phase::kPenalty && !(lambda > 0.0)) throw InvalidConfig("lambda must be positive");
  if (phase == Phase::kSwap && target_edges > dim_params(n).edge_count)
    throw InvalidConfig("target edge count exceeds |E(Q_n)|");
}

SearchState::SearchState(int n) : SearchState(EdgeSet(n)) {}

SearchState::SearchState(const EdgeSet& init)
    : cube_(&Hypercube::get(init.dim())), edges_(init), present_(cube_->c4_count(), 0) {
  for (const FourCycle& c : cube_->cycles()) {
    std::uint8_t count = 0;
    for (EdgeId e : c.edges) count += edges_.contains(e) ? 1 : 0;
    present_[c.id] = count;
    violations_ += count == 4 ? 1 : 0;
  }
  edge_count_ = edges_.size();
}

void SearchState::apply_swap(EdgeId e_out, EdgeId e_in) {
  if (e_out >= edges_.capacity() || e_in >= edges_.capacity())
    throw InvalidMove("swap edge id out of range");
  if (!edges_.contains(e_out)) throw InvalidMove("swap removes edge " + std::to_string(e_out) + " which is absent");
  if (edges_.contains(e_in)) throw InvalidMove("swap adds edge " + std::to_string(e_in) + " which is present");
  apply_toggle(e_out);
  apply_toggle(e_in);
}

bool SearchState::consistent() const {
  const SearchState fresh(edges_);
  return fresh.violations_ == violations_ && fresh.edge_count_ == edge_count_ &&
         fresh.present_ == present_;
}

namespace {

double objective(std::uint64_t m, std::uint64_t v, double lambda) {
  return -static_cast<double>(m) + lambda * static_cast<double>(v);
}

// Lexicographic: C4-free first, then more edges, then lower objective.
auto rank_key(std::uint64_t m, std::uint64_t v, double f) {
  return std::make_tuple(v == 0 ? 0 : 1, -static_cast<std::int64_t>(m), f);
}

class DecadeLogger {
 public:
  DecadeLogger(std::ostream* out, double t0, std::string tag)
      : out_(out), next_(t0 / 10.0), tag_(std::move(tag)) {}

  void tick(double temperature, std::uint64_t step, std::uint64_t m, std::uint64_t v) {
    if (!out_ || temperature > next_) return;
    while (next_ >= temperature) next_ /= 10.0;
    *out_ << tag_ << " step=" << step << " T=" << temperature << " m=" << m << " V=" << v << '\n';
  }

 private:
  std::ostream* out_;
  double next_;
  std::string tag_;
};

}  // namespace

EdgeSet make_c4_free(const EdgeSet& edges, std::mt19937_64& rng) {
  const Hypercube& cube = Hypercube::get(edges.dim());
  SearchState state(edges);
  std::vector<EdgeId> worst;
  while (state.violations() > 0) {
    int best = 0;
    worst.clear();
    for (EdgeId e : state.edges().ids()) {
      int complete = 0;
      for (C4Id c : cube.incident_cycles(e)) complete += state.present_counts()[c] == 4 ? 1 : 0;
      if (complete > best) {
        best = complete;
        worst.clear();
      }
      if (complete == best && complete > 0) worst.push_back(e);
    }
    std::uniform_int_distribution<std::size_t> pick(0, worst.size() - 1);
    state.apply_toggle(worst[pick(rng)]);
  }
  std::vector<EdgeId> absent;
  for (EdgeId e = 0; e < cube.edge_count(); ++e)
    if (!state.edges().contains(e)) absent.push_back(e);
  std::shuffle(absent.begin(), absent.end(), rng);
  for (EdgeId e : absent)
    if (state.toggle_delta(e) == 0) state.apply_toggle(e);
  return state.edges();
}

EdgeSet pad_to_target(const EdgeSet& edges, std::uint64_t target, std::mt19937_64& rng) {
  const Hypercube& cube = Hypercube::get(edges.dim());
  if (target > cube.edge_count()) throw InvalidInit("target exceeds |E(Q_n)|");
  if (edges.size() > target) throw InvalidInit("initial set already exceeds the target");
  SearchState state(edges);
  std::vector<EdgeId> cheapest;
  while (state.edge_count() < target) {
    int best = cube.dim();
    cheapest.clear();
    for (EdgeId e = 0; e < cube.edge_count(); ++e) {
      if (state.edges().contains(e)) continue;
      const int d = state.toggle_delta(e);
      if (d < best) {
        best = d;
        cheapest.clear();
      }
      if (d == best) cheapest.push_back(e);
    }
    std::uniform_int_distribution<std::size_t> pick(0, cheapest.size() - 1);
    state.apply_toggle(cheapest[pick(rng)]);
  }
  return state.edges();
}

SearchResult penalty_anneal(const SAConfig& config, const std::optional<EdgeSet>& init,
                            std::ostream* progress) {
  config.validate();
  if (config.phase != Phase::kPenalty) throw InvalidConfig("penalty_anneal requires phase = penalty");
  if (init && init->dim() != config.n) throw InvalidInit("initial set has the wrong dimension");

  const Hypercube& cube = Hypercube::get(config.n);
  std::mt19937_64 rng(config.seed);
  std::uniform_int_distribution<EdgeId> pick_edge(0, static_cast<EdgeId>(cube.edge_count() - 1));
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  SearchState state = init ? SearchState(*init) : SearchState(config.n);
  const double lambda = config.lambda;
  double f = objective(state.edge_count(), state.violations(), lambda);

  SearchResult result;
  result.seed = config.seed;
  result.best = state.edges();
  result.violations = state.violations();
  result.edges = state.edge_count();
  result.objective = f;

  EdgeSet lowest = state.edges();
  double lowest_f = f;

  const double ratio = std::pow(config.t1 / config.t0, 1.0 / static_cast<double>(config.steps));
  double temperature = config.t0;
  DecadeLogger logger(progress, config.t0, "penalty seed=" + std::to_string(config.seed));

  for (std::uint64_t step = 1; step <= config.steps; ++step) {
    const EdgeId e = pick_edge(rng);
    const int dv = state.toggle_delta(e);
    const int dm = state.edges().contains(e) ? -1 : 1;
    const double df = -dm + lambda * dv;
    if (df <= 0.0 || unit(rng) < std::exp(-df / temperature)) {
      state.apply_toggle(e);
      f = objective(state.edge_count(), state.violations(), lambda);
      ++result.trace.accepted;
      // Ties go to the latest state so that restarts report what they reached
      // rather than the automorphic copy they started from.
      const auto key = rank_key(state.edge_count(), state.violations(), f);
      const auto best_key = rank_key(result.edges, result.violations, result.objective);
      if (key <= best_key) {
        if (key < best_key) ++result.trace.improvements;
        result.best = state.edges();
        result.violations = state.violations();
        result.edges = state.edge_count();
        result.objective = f;
        result.best_step = step;
      }
      if (f < lowest_f) {
        lowest_f = f;
        lowest = state.edges();
      }
    }
    temperature *= ratio;
    logger.tick(temperature, step, state.edge_count(), state.violations());
  }

  result.trace.final_violations = state.violations();
  result.trace.final_edges = state.edge_count();
  result.trace.final_temperature = temperature;
  result.trace.min_objective = lowest_f;

  if (config.polish) {
    for (const EdgeSet* source : {static_cast<const EdgeSet*>(&lowest), &state.edges()}) {
      EdgeSet repaired = make_c4_free(*source, rng);
      const std::uint64_t m = repaired.size();
      if (rank_key(m, 0, -static_cast<double>(m)) <
          rank_key(result.edges, result.violations, result.objective)) {
        result.best = std::move(repaired);
        result.violations = 0;
        result.edges = m;
        result.objective = -static_cast<double>(m);
        result.best_step = config.steps;
        result.trace.polished_better = true;
      }
    }
  }
  return result;
}

SearchResult swap_anneal(const SAConfig& config, const EdgeSet& init, std::ostream* progress) {
  config.validate();
  if (config.phase != Phase::kSwap) throw InvalidConfig("swap_anneal requires phase = swap");
  if (init.dim() != config.n) throw InvalidInit("initial set has the wrong dimension");
  if (init.size() != config.target_edges)
    throw InvalidInit("initial set has " + std::to_string(init.size()) + " edges, target is " +
                      std::to_string(config.target_edges));

  const Hypercube& cube = Hypercube::get(config.n);
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  SearchState state(init);
  SearchResult result;
  result.seed = config.seed;
  result.best = state.edges();
  result.violations = state.violations();
  result.edges = state.edge_count();
  result.objective = static_cast<double>(state.violations());
  result.trace.final_violations = state.violations();
  result.trace.final_edges = state.edge_count();
  result.trace.final_temperature = config.t0;
  result.trace.min_objective = result.objective;
  if (state.violations() == 0 || state.edge_count() == 0 || state.edge_count() == cube.edge_count())
    return result;

  // present[0..m) and absent[0..E-m) with slot[e] giving e's index in its list.
  std::vector<EdgeId> present;
  std::vector<EdgeId> absent;
  std::vector<std::uint32_t> slot(cube.edge_count());
  for (EdgeId e = 0; e < cube.edge_count(); ++e) {
    auto& list = state.edges().contains(e) ? present : absent;
    slot[e] = static_cast<std::uint32_t>(list.size());
    list.push_back(e);
  }
  std::uniform_int_distribution<std::size_t> pick_present(0, present.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_absent(0, absent.size() - 1);

  const double ratio = std::pow(config.t1 / config.t0, 1.0 / static_cast<double>(config.steps));
  double temperature = config.t0;
  DecadeLogger logger(progress, config.t0, "swap seed=" + std::to_string(config.seed));

  std::uint64_t step = 1;
  for (; step <= config.steps; ++step) {
    const std::size_t pi = pick_present(rng);
    const std::size_t ai = pick_absent(rng);
    const EdgeId out = present[pi];
    const EdgeId in = absent[ai];
    const int d_out = state.toggle_delta(out);
    state.apply_toggle(out);
    const int dv = d_out + state.toggle_delta(in);
    if (dv <= 0 || unit(rng) < std::exp(-dv / temperature)) {
      state.apply_toggle(in);
      present[pi] = in;
      absent[ai] = out;
      slot[in] = static_cast<std::uint32_t>(pi);
      slot[out] = static_cast<std::uint32_t>(ai);
      ++result.trace.accepted;
      if (state.violations() < result.violations) {
        result.best = state.edges();
        result.violations = state.violations();
        result.objective = static_cast<double>(state.violations());
        result.best_step = step;
        ++result.trace.improvements;
        if (result.violations == 0) break;
      }
    } else {
      state.apply_toggle(out);
    }
    temperature *= ratio;
    logger.tick(temperature, step, state.edge_count(), state.violations());
  }

  result.trace.final_violations = state.violations();
  result.trace.final_edges = state.edge_count();
  result.trace.final_temperature = temperature;
  result.trace.min_objective = result.objective;
  return result;
}

void CampaignConfig::validate() const {
  check_dim(n);
  auto check_range = [](const Range& r, const char* name) {
    if (!(r.lo > 0.0 && r.lo <= r.hi))
      throw InvalidConfig(std::string(name) + " range must satisfy 0 < lo <= hi");
  };
  check_range(lambda, "lambda");
  check_range(t0, "t0");
  check_range(t1, "t1");
  if (!(t1.hi < t0.lo)) throw InvalidConfig("t1 range must lie strictly below the t0 range");
  if (steps < 1) throw InvalidConfig("steps must be >= 1");
  if (trials < 1) throw InvalidConfig("trials must be >= 1");
  if (workers < 1) throw InvalidConfig("workers must be >= 1");
  if (phase == Phase::kSwap) {
    if (!init) throw InvalidConfig("swap phase requires an initial edge set");
    if (init->dim() != n) throw InvalidInit("initial set has the wrong dimension");
    if (init->size() != target_edges)
      throw InvalidInit("initial set has " + std::to_string(init->size()) + " edges, target is " +
                        std::to_string(target_edges));
  }
}

bool Corpus::add(SolutionRecord record) {
  const Verdict verdict = is_c4_free(record.edges);
  if (!verdict.free) throw NotC4Free(verdict.violation_count);
  record.verified = true;
  record.violations = 0;
  std::lock_guard lock(mu_);
  if (!seen_.insert(record.edges).second) return false;
  records_.push_back(std::move(record));
  return true;
}

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
  return seed ^ static_cast<std::uint64_t>(trial);
}

namespace {

TrialOutcome run_trial(const CampaignConfig& config, int trial, const EdgeSet& incumbent,
                       std::ostream* progress) {
  TrialOutcome out;
  out.trial = trial;
  out.seed = trial_seed(config.seed, trial);
  std::mt19937_64 rng(out.seed);
  auto sample = [&rng](const Range& r) {
    return std::uniform_real_distribution<double>(r.lo, r.hi)(rng);
  };
  out.lambda = sample(config.lambda);
  out.t0 = sample(config.t0);
  out.t1 = sample(config.t1);

  std::optional<EdgeSet> start;
  if (trial == 0) {
    if (config.phase == Phase::kSwap) start = *config.init;
  } else {
    start = apply_automorphism(random_automorphism(config.n, rng), incumbent);
  }

  SAConfig sa;
  sa.n = config.n;
  sa.lambda = out.lambda;
  sa.t0 = out.t0;
  sa.t1 = out.t1;
  sa.steps = config.steps;
  sa.phase = config.phase;
  sa.target_edges = config.target_edges;
  sa.seed = rng();
  sa.polish = config.polish;
  out.result = config.phase == Phase::kPenalty ? penalty_anneal(sa, start, progress)
                                               : swap_anneal(sa, *start, progress);
  out.result.seed = out.seed;
  return out;
}

}  // namespace

CampaignResult run_campaign(const CampaignConfig& config, std::ostream* progress) {
  config.validate();
  CampaignResult campaign;
  Corpus corpus;
  campaign.incumbent = config.phase == Phase::kSwap ? *config.init : EdgeSet(config.n);
  campaign.incumbent_violations = count_violations(campaign.incumbent);
  std::uint64_t incumbent_m = campaign.incumbent.size();

  for (int first = 0; first < config.trials; first += config.workers) {
    const int last = std::min(config.trials, first + config.workers);
    std::vector<TrialOutcome> batch;
    if (config.workers == 1) {
      batch.push_back(run_trial(config, first, campaign.incumbent, progress));
    } else {
      std::vector<std::future<TrialOutcome>> pending;
      for (int t = first; t < last; ++t)
        pending.push_back(std::async(std::launch::async, run_trial, std::cref(config), t,
                                     std::cref(campaign.incumbent), nullptr));
      for (auto& p : pending) batch.push_back(p.get());
    }
    for (TrialOutcome& outcome : batch) {
      const SearchResult& r = outcome.result;
      if (rank_key(r.edges, r.violations, static_cast<double>(r.violations)) <
          rank_key(incumbent_m, campaign.incumbent_violations,
                   static_cast<double>(campaign.incumbent_violations))) {
        campaign.incumbent = r.best;
        campaign.incumbent_violations = r.violations;
        incumbent_m = r.edges;
      }
      if (r.violations == 0) {
        SolutionRecord rec;
        rec.n = config.n;
        rec.edges = r.best;
        rec.seed = outcome.seed;
        rec.trial = outcome.trial;
        rec.phase = config.phase;
        rec.step = r.best_step;
        outcome.recorded = corpus.add(std::move(rec));
      }
      if (progress)
        *progress << "trial " << outcome.trial << " seed=" << outcome.seed << " m=" << r.edges
                  << " V=" << r.violations << (outcome.recorded ? " recorded" : "") << '\n';
      campaign.trials.push_back(std::move(outcome));
    }
  }
  campaign.corpus = corpus.records();
  return campaign;
}

}  // namespace c4free
