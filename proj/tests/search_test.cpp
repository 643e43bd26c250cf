#include "c4free/search.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "c4free/verify.hpp"
#include "oracles.hpp"

namespace c4free {
namespace {

SAConfig penalty_config(int n, std::uint64_t steps, std::uint64_t seed) {
  SAConfig c;
  c.n = n;
  c.lambda = 0.7;
  c.t0 = 2.0;
  c.t1 = 0.01;
  c.steps = steps;
  c.seed = seed;
  return c;
}

TEST(SearchState, EmptyStateDeltaIsZero) {
  const SearchState s(6);
  for (EdgeId e = 0; e < 192; ++e) EXPECT_EQ(s.toggle_delta(e), 0);
  EXPECT_EQ(s.violations(), 0u);
  EXPECT_EQ(s.edge_count(), 0u);
}

TEST(SearchState, CompletingACycle) {
  const FourCycle c = make_four_cycle(2, 0, 1, 0);
  SearchState s(2);
  for (int k = 0; k < 3; ++k) s.apply_toggle(c.edges[k]);
  EXPECT_EQ(s.toggle_delta(c.edges[3]), 1);
  s.apply_toggle(c.edges[3]);
  EXPECT_EQ(s.violations(), 1u);
  EXPECT_EQ(s.toggle_delta(c.edges[0]), -1);
}

TEST(SearchState, ToggleIsAnInvolution) {
  std::mt19937_64 rng(20);
  SearchState s(oracle::random_subset(6, 0.7, rng));
  const SearchState before = s;
  for (EdgeId e : {EdgeId{0}, EdgeId{17}, EdgeId{191}}) {
    s.apply_toggle(e);
    s.apply_toggle(e);
    EXPECT_EQ(s.edges(), before.edges());
    EXPECT_EQ(s.violations(), before.violations());
    EXPECT_TRUE(std::equal(s.present_counts().begin(), s.present_counts().end(),
                           before.present_counts().begin()));
  }
}

TEST(SearchState, DeltaIsAntisymmetric) {
  std::mt19937_64 rng(21);
  SearchState s(oracle::random_subset(6, 0.6, rng));
  std::uniform_int_distribution<EdgeId> pick(0, 191);
  for (int k = 0; k < 10'000; ++k) {
    const EdgeId e = pick(rng);
    const int forward = s.toggle_delta(e);
    const std::uint64_t v = s.violations();
    s.apply_toggle(e);
    ASSERT_EQ(static_cast<std::int64_t>(s.violations()), static_cast<std::int64_t>(v) + forward);
    ASSERT_EQ(s.toggle_delta(e), -forward);
  }
}

TEST(SearchState, IncrementalMatchesRecountAfterLongRandomWalk) {
  std::mt19937_64 rng(22);
  SearchState s(6);
  std::uniform_int_distribution<EdgeId> pick(0, 191);
  for (int k = 0; k < 100'000; ++k) s.apply_toggle(pick(rng));
  EXPECT_EQ(s.violations(), count_violations(s.edges()));
  EXPECT_EQ(s.edge_count(), s.edges().size());
  EXPECT_TRUE(s.consistent());
}

TEST(SearchState, SwapPreservesEdgeCount) {
  std::mt19937_64 rng(23);
  SearchState s(oracle::random_subset(6, 0.5, rng));
  const std::uint64_t m = s.edge_count();
  std::uniform_int_distribution<EdgeId> pick(0, 191);
  for (int k = 0; k < 10'000; ++k) {
    EdgeId out = pick(rng), in = pick(rng);
    while (!s.edges().contains(out)) out = pick(rng);
    while (s.edges().contains(in)) in = pick(rng);
    s.apply_swap(out, in);
    ASSERT_EQ(s.edge_count(), m);
  }
  EXPECT_TRUE(s.consistent());
}

TEST(SearchState, SwapRejectsInvalidMoves) {
  SearchState s(3);
  s.apply_toggle(0);
  EXPECT_THROW(s.apply_swap(1, 2), InvalidMove);  // 1 absent
  EXPECT_THROW(s.apply_swap(0, 0), InvalidMove);  // 0 present
  EXPECT_THROW(s.apply_swap(0, 99), InvalidMove);
  EXPECT_TRUE(s.consistent());
}

TEST(PenaltyAnneal, Q4ReachesKnownOptimum) {
  const SearchResult r = penalty_anneal(penalty_config(4, 1'000'000, 7));
  EXPECT_EQ(r.violations, 0u);
  EXPECT_EQ(r.edges, 24u);
  EXPECT_TRUE(is_c4_free(r.best).free);
}

TEST(PenaltyAnneal, Q5ReachesKnownOptimum) {
  bool hit = false;
  for (std::uint64_t seed = 1; seed <= 5 && !hit; ++seed) {
    const SearchResult r = penalty_anneal(penalty_config(5, 3'000'000, seed));
    EXPECT_EQ(r.violations, 0u);
    hit = r.edges == 56;
  }
  EXPECT_TRUE(hit);
}

TEST(PenaltyAnneal, DeterministicGivenSeed) {
  const SearchResult a = penalty_anneal(penalty_config(5, 200'000, 99));
  const SearchResult b = penalty_anneal(penalty_config(5, 200'000, 99));
  EXPECT_EQ(a.best, b.best);
  EXPECT_EQ(a.best_step, b.best_step);
  EXPECT_EQ(a.trace.accepted, b.trace.accepted);
  const SearchResult c = penalty_anneal(penalty_config(5, 200'000, 100));
  EXPECT_NE(a.trace.accepted, c.trace.accepted);
}

TEST(PenaltyAnneal, ReportedResultIsSelfConsistent) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    SAConfig cfg = penalty_config(5, 100'000, seed);
    cfg.lambda = 0.3;
    cfg.polish = seed % 2 == 0;
    const SearchResult r = penalty_anneal(cfg);
    EXPECT_EQ(r.edges, r.best.size());
    EXPECT_EQ(r.violations, count_violations(r.best));
    if (r.violations == 0) {
      EXPECT_TRUE(is_c4_free(r.best).free);
    }
  }
}

TEST(PenaltyAnneal, NeverWorseThanItsStart) {
  std::mt19937_64 rng(24);
  const EdgeSet start = make_c4_free(oracle::random_subset(6, 0.5, rng), rng);
  const SearchResult r = penalty_anneal(penalty_config(6, 50'000, 3), start);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_GE(r.edges, start.size());
}

TEST(PenaltyAnneal, LogsOneLinePerTemperatureDecade) {
  std::ostringstream log;
  SAConfig cfg = penalty_config(4, 10'000, 1);
  cfg.t0 = 1.0;
  cfg.t1 = 0.0005;
  penalty_anneal(cfg, std::nullopt, &log);
  const std::string text = log.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
}

TEST(PenaltyAnneal, ValidatesConfig) {
  SAConfig cfg = penalty_config(4, 10, 1);
  cfg.t1 = 5.0;
  EXPECT_THROW(penalty_anneal(cfg), InvalidConfig);
  cfg = penalty_config(4, 0, 1);
  EXPECT_THROW(penalty_anneal(cfg), InvalidConfig);
  cfg = penalty_config(4, 10, 1);
  EXPECT_THROW(penalty_anneal(cfg, EdgeSet(5)), InvalidInit);
  cfg.phase = Phase::kSwap;
  EXPECT_THROW(penalty_anneal(cfg), InvalidConfig);
}

SAConfig swap_config(int n, std::uint64_t target, std::uint64_t steps, std::uint64_t seed) {
  SAConfig c;
  c.n = n;
  c.phase = Phase::kSwap;
  c.target_edges = target;
  c.t0 = 1.0;
  c.t1 = 0.01;
  c.steps = steps;
  c.seed = seed;
  return c;
}

TEST(SwapAnneal, FreeInitReturnsImmediately) {
  std::mt19937_64 rng(25);
  const EdgeSet init = make_c4_free(EdgeSet(5), rng);
  const SearchResult r = swap_anneal(swap_config(5, init.size(), 1000, 1), init);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_EQ(r.best, init);
  EXPECT_EQ(r.trace.accepted, 0u);
}

TEST(SwapAnneal, RejectsCardinalityMismatch) {
  EXPECT_THROW(swap_anneal(swap_config(4, 10, 100, 1), EdgeSet(4)), InvalidInit);
}

TEST(SwapAnneal, RepairsAPaddedSetBelowTheOptimum) {
  // The 20 lowest edge ids of Q4 (optimum 24) contain complete (0,1) cycles.
  EdgeSet init(4);
  for (EdgeId e = 0; e < 20; ++e) init.insert(e);
  ASSERT_GT(count_violations(init), 0u);
  const SearchResult r = swap_anneal(swap_config(4, 20, 200'000, 2), init);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_EQ(r.best.size(), 20u);
  EXPECT_TRUE(is_c4_free(r.best).free);
}

TEST(SwapAnneal, CannotBeatTheKnownOptimum) {
  // Q4 at 25 edges: ex(Q4, C4) = 24, so V never reaches 0.
  std::mt19937_64 rng(27);
  const SearchResult base = penalty_anneal(penalty_config(4, 300'000, 4));
  ASSERT_EQ(base.edges, 24u);
  const EdgeSet init = pad_to_target(base.best, 25, rng);
  const SearchResult r = swap_anneal(swap_config(4, 25, 200'000, 3), init);
  EXPECT_GE(r.violations, 1u);
  EXPECT_EQ(r.best.size(), 25u);
  EXPECT_EQ(count_violations(r.best), r.violations);
}

TEST(PadToTarget, AddsCheapestEdges) {
  std::mt19937_64 rng(28);
  const EdgeSet e = pad_to_target(EdgeSet(4), 10, rng);
  EXPECT_EQ(e.size(), 10u);
  EXPECT_EQ(count_violations(e), 0u);
  EXPECT_THROW(pad_to_target(EdgeSet::full(4), 10, rng), InvalidInit);
}

TEST(Corpus, DeduplicatesAndCertifies) {
  Corpus corpus;
  SolutionRecord rec;
  rec.n = 3;
  rec.edges = EdgeSet(3);
  rec.edges.insert(0);
  EXPECT_TRUE(corpus.add(rec));
  EXPECT_FALSE(corpus.add(rec));
  EXPECT_EQ(corpus.size(), 1u);
  EXPECT_TRUE(corpus.records()[0].verified);
  rec.edges = EdgeSet::full(3);
  EXPECT_THROW(corpus.add(rec), NotC4Free);
}

TEST(Campaign, Q4TwentyTrialsAllOptimalAndCertified) {
  CampaignConfig cfg;
  cfg.n = 4;
  cfg.steps = 200'000;
  cfg.trials = 20;
  cfg.seed = 5;
  const CampaignResult r = run_campaign(cfg);
  ASSERT_EQ(r.trials.size(), 20u);
  ASSERT_FALSE(r.corpus.empty());
  for (const SolutionRecord& rec : r.corpus) {
    EXPECT_EQ(rec.edges.size(), 24u);
    EXPECT_TRUE(rec.verified);
    EXPECT_TRUE(is_c4_free(rec.edges).free);
  }
  // Per-trial parameters lie in the configured ranges.
  for (const TrialOutcome& t : r.trials) {
    EXPECT_GE(t.lambda, 0.30);
    EXPECT_LE(t.lambda, 0.90);
    EXPECT_GE(t.t0, 0.20);
    EXPECT_LE(t.t0, 4.00);
    EXPECT_GE(t.t1, 0.001);
    EXPECT_LE(t.t1, 0.030);
    EXPECT_EQ(t.seed, trial_seed(5, t.trial));
  }
  // Distinct edge sets only.
  for (std::size_t a = 0; a < r.corpus.size(); ++a)
    for (std::size_t b = a + 1; b < r.corpus.size(); ++b) EXPECT_NE(r.corpus[a].edges, r.corpus[b].edges);
}

TEST(Campaign, DeterministicForFixedSeedAndWorkers) {
  CampaignConfig cfg;
  cfg.n = 5;
  cfg.steps = 100'000;
  cfg.trials = 4;
  cfg.seed = 77;
  const CampaignResult a = run_campaign(cfg);
  const CampaignResult b = run_campaign(cfg);
  ASSERT_EQ(a.corpus.size(), b.corpus.size());
  for (std::size_t k = 0; k < a.corpus.size(); ++k) EXPECT_EQ(a.corpus[k].edges, b.corpus[k].edges);

  cfg.workers = 2;
  const CampaignResult c = run_campaign(cfg);
  const CampaignResult d = run_campaign(cfg);
  ASSERT_EQ(c.corpus.size(), d.corpus.size());
  for (std::size_t k = 0; k < c.corpus.size(); ++k) EXPECT_EQ(c.corpus[k].edges, d.corpus[k].edges);
}

TEST(Campaign, IncumbentNeverWorsens) {
  CampaignConfig cfg;
  cfg.n = 5;
  cfg.steps = 50'000;
  cfg.trials = 6;
  cfg.seed = 8;
  const CampaignResult r = run_campaign(cfg);
  std::uint64_t best = 0;
  for (const TrialOutcome& t : r.trials) best = std::max(best, t.result.violations == 0 ? t.result.edges : 0);
  EXPECT_EQ(r.incumbent.size(), best);
  EXPECT_EQ(r.incumbent_violations, 0u);
  // Later trials start from an automorphic image of the incumbent, so they never end below it.
  std::uint64_t running = 0;
  for (const TrialOutcome& t : r.trials) {
    if (t.trial > 0) {
      EXPECT_GE(t.result.edges, running);
    }
    running = std::max(running, t.result.edges);
  }
}

TEST(Campaign, SwapPhaseRequiresInit) {
  CampaignConfig cfg;
  cfg.n = 4;
  cfg.phase = Phase::kSwap;
  cfg.target_edges = 25;
  EXPECT_THROW(run_campaign(cfg), InvalidConfig);
  cfg.init = EdgeSet(4);
  EXPECT_THROW(run_campaign(cfg), InvalidInit);
}

TEST(Campaign, ValidatesRanges) {
  CampaignConfig cfg;
  cfg.t1 = {0.5, 0.6};
  cfg.t0 = {0.2, 4.0};
  EXPECT_THROW(run_campaign(cfg), InvalidConfig);
  cfg = CampaignConfig{};
  cfg.trials = 0;
  EXPECT_THROW(run_campaign(cfg), InvalidConfig);
}

TEST(Phase, ParsesNames) {
  EXPECT_EQ(parse_phase("penalty"), Phase::kPenalty);
  EXPECT_EQ(parse_phase("swap"), Phase::kSwap);
  EXPECT_EQ(to_string(Phase::kSwap), "swap");
  EXPECT_THROW(parse_phase("tabu"), InvalidConfig);
}

}  // namespace
}  // namespace c4free
