#include "c4free/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>

#include "CLI11.hpp"
#include "c4free/analyze.hpp"
#include "c4free/cube.hpp"
#include "c4free/exact_ilp.hpp"
#include "c4free/search.hpp"
#include "c4free/solution_io.hpp"
#include "c4free/verify.hpp"
#include "json.hpp"

namespace c4free {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Optimum values used to cross-check an external solver when exact_max is too slow.
std::optional<std::int64_t> known_optimum(int n) {
  switch (n) {
    case 5: return 56;
    case 6: return 132;
    default: return std::nullopt;
  }
}

std::vector<EdgeSet> load_inputs(const std::vector<std::string>& paths, std::optional<int> n) {
  std::vector<EdgeSet> corpus;
  for (const std::string& p : paths) {
    if (fs::is_directory(p)) {
      for (LoadedSolution& s : load_run_directory(p)) corpus.push_back(std::move(s.edges));
    } else {
      if (!n) throw UsageError("--n is required when reading solution files directly");
      corpus.push_back(read_solution(p, *n));
    }
  }
  return corpus;
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

int threads_from_env() {
  const char* raw = std::getenv(kThreadsEnv);
  if (!raw || !*raw) return 1;
  try {
    const int w = std::stoi(raw);
    if (w < 1) throw UsageError("");
    return w;
  } catch (const std::exception&) {
    throw UsageError(std::string(kThreadsEnv) + " must be a positive integer");
  }
}

Range range_from_json(const json& j, const char* key) {
  if (!j.is_array() || j.size() != 2) throw UsageError(std::string("config key '") + key + "' must be [lo, hi]");
  return {j[0].get<double>(), j[1].get<double>()};
}

struct SearchFlags {
  int n = 6;
  int trials = 1;
  std::uint64_t steps = 1'000'000;
  std::uint64_t seed = 0;
  std::vector<double> lambda{0.30, 0.90};
  std::vector<double> t0{0.20, 4.00};
  std::vector<double> t1{0.001, 0.030};
  std::string phase = "penalty";
  std::uint64_t target = 0;
  std::string init;
  std::string out;
  std::string config;
  bool no_polish = false;
  bool quiet = false;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Four-cycle-free subgraphs of the hypercube Q_n", "c4free"};
  app.require_subcommand(1);
  const auto dim_check = CLI::Range(kMinDim, kMaxDim);

  // enumerate
  int enum_n = 0;
  bool enum_list = false;
  auto* enumerate = app.add_subcommand("enumerate", "Count vertices, edges and four-cycles of Q_n");
  enumerate->add_option("--n", enum_n, "Dimension")->required()->check(dim_check);
  enumerate->add_flag("--list", enum_list, "Also print every four-cycle");

  // verify
  int verify_n = 0;
  std::string verify_file;
  bool verify_json = false;
  auto* verify = app.add_subcommand("verify", "Certify that a solution file is C4-free");
  verify->add_option("--n", verify_n, "Dimension")->required()->check(dim_check);
  verify->add_option("file", verify_file, "Solution file (JSONL)")->required();
  verify->add_flag("--json", verify_json, "Print the verdict as JSON");

  // search
  SearchFlags sf;
  auto* search = app.add_subcommand("search", "Run a simulated annealing campaign");
  auto* o_n = search->add_option("--n", sf.n, "Dimension")->check(dim_check);
  auto* o_trials = search->add_option("--trials", sf.trials, "Number of trials");
  auto* o_steps = search->add_option("--steps", sf.steps, "Annealing steps per trial");
  auto* o_seed = search->add_option("--seed", sf.seed, "Campaign seed (generated and printed if omitted)");
  auto* o_lambda = search->add_option("--lambda", sf.lambda, "Penalty weight range lo hi")->expected(2);
  auto* o_t0 = search->add_option("--t0", sf.t0, "Initial temperature range lo hi")->expected(2);
  auto* o_t1 = search->add_option("--t1", sf.t1, "Final temperature range lo hi")->expected(2);
  auto* o_phase = search->add_option("--phase", sf.phase, "penalty or swap");
  auto* o_target = search->add_option("--target", sf.target, "Target edge count (required for swap)");
  auto* o_init = search->add_option("--init", sf.init, "Initial solution for the swap phase");
  auto* o_out = search->add_option("--out", sf.out, "Run directory");
  search->add_option("--config", sf.config, "JSON config file; flags override it");
  auto* o_no_polish = search->add_flag("--no-polish", sf.no_polish, "Skip the greedy repair after each penalty trial");
  search->add_flag("--quiet", sf.quiet, "No progress output");

  // exact
  int exact_n = 0;
  std::uint64_t node_limit = 1'000'000'000;
  std::string exact_out;
  auto* exact = app.add_subcommand("exact", "Branch-and-bound maximum for small n");
  exact->add_option("--n", exact_n, "Dimension")->required()->check(dim_check);
  exact->add_option("--node-limit", node_limit, "Node budget");
  exact->add_option("--out", exact_out, "Write the witness here");

  // ilp
  int ilp_n = 0;
  std::string ilp_out;
  std::string ilp_value;
  auto* ilp = app.add_subcommand("ilp", "Write the integer program as free-format MPS");
  ilp->add_option("--n", ilp_n, "Dimension")->required()->check(dim_check);
  ilp->add_option("--out", ilp_out, "MPS path")->required();
  ilp->add_option("--solution-value", ilp_value, "File with an external solver's optimum");

  // analyze
  int analyze_n = 0;
  std::string analyze_file;
  auto* analyze = app.add_subcommand("analyze", "Structural report for one solution");
  analyze->add_option("--n", analyze_n, "Dimension")->required()->check(dim_check);
  analyze->add_option("file", analyze_file, "Solution file")->required();

  // classify / distances
  std::optional<int> corpus_n;
  std::vector<std::string> corpus_paths;
  std::uint64_t pairs = 5000;
  std::uint64_t corpus_seed = 0;
  auto* classify = app.add_subcommand("classify", "Dimension-profile classification of a corpus");
  auto* distances = app.add_subcommand("distances", "Hamming distance statistics of a corpus");
  for (CLI::App* sub : {classify, distances}) {
    sub->add_option("--n", corpus_n, "Dimension for bare solution files")->check(dim_check);
    sub->add_option("inputs", corpus_paths, "Run directories or solution files")->required();
    sub->add_option("--pairs", pairs, "Sampled pairs for distance statistics");
    sub->add_option("--seed", corpus_seed, "Sampling seed");
  }

  // barrier
  int barrier_n = 0;
  std::string barrier_file;
  int barrier_trials = 0;
  std::uint64_t barrier_steps = 1'000'000;
  std::uint64_t barrier_seed = 0;
  std::uint64_t barrier_target = 0;
  auto* barrier = app.add_subcommand("barrier", "Non-edge analysis and swap search one edge above a solution");
  barrier->add_option("--n", barrier_n, "Dimension")->required()->check(dim_check);
  barrier->add_option("file", barrier_file, "Solution file")->required();
  barrier->add_option("--trials", barrier_trials, "Swap-phase trials at the target");
  barrier->add_option("--steps", barrier_steps, "Steps per swap trial");
  auto* o_barrier_seed = barrier->add_option("--seed", barrier_seed, "Seed for the swap trials");
  barrier->add_option("--target", barrier_target, "Target edge count (default |E| + 1)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*enumerate) {
      const DimParams p = dim_params(enum_n);
      const Hypercube& cube = Hypercube::get(enum_n);
      json r{{"n", enum_n},
             {"vertices", p.vertex_count},
             {"edges", p.edge_count},
             {"c4_count", p.c4_count},
             {"enumerated", cube.cycles().size()}};
      if (enum_list) {
        json cycles = json::array();
        for (const FourCycle& c : cube.cycles())
          cycles.push_back({{"id", c.id}, {"i", c.i}, {"j", c.j}, {"base", c.base},
                            {"vertices", c.vertices}, {"edges", c.edges}});
        r["cycles"] = cycles;
      }
      out << r.dump(2) << '\n';
      return kExitOk;
    }

    if (*verify) {
      const EdgeSet edges = read_solution(verify_file, verify_n);
      const Verdict v = is_c4_free(edges);
      if (verify_json) {
        out << json{{"n", verify_n},
                    {"edges", edges.size()},
                    {"cycles_checked", v.cycles_checked},
                    {"violations", v.violation_count},
                    {"free", v.free},
                    {"first_violation", v.first_violation ? json(*v.first_violation) : json(nullptr)}}
                   .dump(2)
            << '\n';
      } else {
        out << v.cycles_checked << " cycles checked, " << v.violation_count << " violations\n";
        if (v.first_violation) {
          const FourCycle& c = Hypercube::get(verify_n).cycle(*v.first_violation);
          out << "first violation: c4 " << c.id << " (directions " << c.i << "," << c.j << "; base "
              << c.base << ")\n";
        }
      }
      return v.free ? kExitOk : kExitViolation;
    }

    if (*search) {
      CampaignConfig cfg;
      std::string out_dir;
      std::string init_path;
      std::optional<std::uint64_t> seed;
      cfg.n = sf.n;
      if (!sf.config.empty()) {
        std::ifstream in(sf.config);
        if (!in) throw std::ios_base::failure("cannot open config " + sf.config);
        const json j = json::parse(in);
        if (j.contains("n")) cfg.n = j["n"].get<int>();
        if (j.contains("trials")) cfg.trials = j["trials"].get<int>();
        if (j.contains("steps")) cfg.steps = j["steps"].get<std::uint64_t>();
        if (j.contains("seed")) seed = j["seed"].get<std::uint64_t>();
        if (j.contains("lambda")) cfg.lambda = range_from_json(j["lambda"], "lambda");
        if (j.contains("t0")) cfg.t0 = range_from_json(j["t0"], "t0");
        if (j.contains("t1")) cfg.t1 = range_from_json(j["t1"], "t1");
        if (j.contains("phase")) cfg.phase = parse_phase(j["phase"].get<std::string>());
        if (j.contains("target")) cfg.target_edges = j["target"].get<std::uint64_t>();
        if (j.contains("init")) init_path = j["init"].get<std::string>();
        if (j.contains("out")) out_dir = j["out"].get<std::string>();
        if (j.contains("polish")) cfg.polish = j["polish"].get<bool>();
      }
      if (o_n->count()) cfg.n = sf.n;
      if (o_trials->count()) cfg.trials = sf.trials;
      if (o_steps->count()) cfg.steps = sf.steps;
      if (o_seed->count()) seed = sf.seed;
      if (o_lambda->count()) cfg.lambda = {sf.lambda[0], sf.lambda[1]};
      if (o_t0->count()) cfg.t0 = {sf.t0[0], sf.t0[1]};
      if (o_t1->count()) cfg.t1 = {sf.t1[0], sf.t1[1]};
      if (o_phase->count()) cfg.phase = parse_phase(sf.phase);
      if (o_target->count()) cfg.target_edges = sf.target;
      if (o_init->count()) init_path = sf.init;
      if (o_out->count()) out_dir = sf.out;
      if (o_no_polish->count()) cfg.polish = false;
      check_dim(cfg.n);
      if (out_dir.empty()) throw UsageError("search needs --out (or \"out\" in the config)");
      if (!seed) {
        seed = fresh_seed();
        err << "seed: " << *seed << '\n';
      }
      cfg.seed = *seed;
      cfg.workers = threads_from_env();

      if (cfg.phase == Phase::kSwap) {
        if (init_path.empty()) throw UsageError("swap phase needs --init");
        if (cfg.target_edges == 0) throw UsageError("swap phase needs --target");
        EdgeSet init = read_solution(init_path, cfg.n);
        std::mt19937_64 pad_rng(cfg.seed);
        cfg.init = pad_to_target(init, cfg.target_edges, pad_rng);
      }

      const CampaignResult result = run_campaign(cfg, sf.quiet ? nullptr : &err);
      write_run_directory(out_dir, cfg, result);

      // Read back what was written and certify it again.
      std::uint64_t reverified = 0;
      for (const LoadedSolution& s : load_run_directory(out_dir))
        reverified += is_c4_free(s.edges).free ? 1 : 0;

      out << json{{"out", out_dir},
                  {"n", cfg.n},
                  {"seed", cfg.seed},
                  {"trials", cfg.trials},
                  {"best_m", result.incumbent.size()},
                  {"best_V", result.incumbent_violations},
                  {"solutions", result.corpus.size()},
                  {"reverified", reverified}}
                 .dump(2)
          << '\n';
      if (reverified != result.corpus.size()) return kExitIo;
      if (result.incumbent_violations > 0) return kExitViolation;
      if (cfg.target_edges > 0 && result.incumbent.size() < cfg.target_edges) return kExitViolation;
      return kExitOk;
    }

    if (*exact) {
      const ExactResult r = exact_max(exact_n, node_limit);
      if (!exact_out.empty()) write_solution(r.witness, fs::path(exact_out));
      out << json{{"n", r.n}, {"optimum", r.optimum}, {"proven", r.proven}, {"nodes", r.nodes_explored}}.dump(2)
          << '\n';
      return kExitOk;
    }

    if (*ilp) {
      const IlpModel model = build_ilp(ilp_n);
      {
        std::ofstream mps(ilp_out, std::ios::binary);
        if (!mps) throw std::ios_base::failure("cannot open " + ilp_out + " for writing");
        write_mps(model, mps);
      }
      json r{{"n", ilp_n},
             {"path", ilp_out},
             {"variables", model.variable_count},
             {"constraints", model.constraints.size()}};
      int code = kExitOk;
      if (!ilp_value.empty()) {
        std::ifstream in(ilp_value);
        if (!in) throw std::ios_base::failure("cannot open " + ilp_value);
        const std::int64_t external = read_solution_value(in);
        std::optional<std::int64_t> reference;
        std::string source;
        if (ilp_n <= 4) {
          const ExactResult ex = exact_max(ilp_n, node_limit);
          if (ex.proven) {
            reference = static_cast<std::int64_t>(ex.optimum);
            source = "exact_max";
          }
        }
        if (!reference && known_optimum(ilp_n)) {
          reference = known_optimum(ilp_n);
          source = "known value";
        }
        r["external_optimum"] = external;
        r["reference"] = reference ? json(*reference) : json(nullptr);
        r["reference_source"] = source;
        r["matches"] = reference ? json(*reference == external) : json(nullptr);
        if (reference && *reference != external) code = kExitViolation;
      }
      out << r.dump(2) << '\n';
      return code;
    }

    if (*analyze) {
      const EdgeSet edges = read_solution(analyze_file, analyze_n);
      const json r = report(edges);
      out << r.dump(2) << '\n';
      return r["free"].get<bool>() ? kExitOk : kExitViolation;
    }

    if (*classify || *distances) {
      const std::vector<EdgeSet> corpus = load_inputs(corpus_paths, corpus_n);
      if (*classify) {
        out << corpus_report(corpus, pairs, corpus_seed).dump(2) << '\n';
      } else {
        if (corpus.size() < 2) throw UsageError("distances needs at least two solutions");
        const DistanceStats d = distance_stats(corpus, pairs, corpus_seed);
        out << json{{"solutions", corpus.size()},
                    {"pairs", d.pairs},
                    {"min", d.min},
                    {"max", d.max},
                    {"mean", d.mean},
                    {"median", d.median}}
                   .dump(2)
            << '\n';
      }
      return kExitOk;
    }

    if (*barrier) {
      const EdgeSet edges = read_solution(barrier_file, barrier_n);
      const Verdict v = is_c4_free(edges);
      if (!v.free) {
        out << json{{"free", false}, {"violations", v.violation_count}}.dump(2) << '\n';
        return kExitViolation;
      }
      const auto hist = nonedge_creation_histogram(edges);
      json h = json::object();
      for (std::size_t k = 0; k < hist.size(); ++k) h[std::to_string(k)] = hist[k];
      json r{{"n", barrier_n},
             {"edges", edges.size()},
             {"nonedges", edges.capacity() - edges.size()},
             {"locally_maximal", is_locally_maximal(edges)},
             {"nonedge_histogram", h}};
      if (barrier_trials > 0) {
        if (!o_barrier_seed->count()) {
          barrier_seed = fresh_seed();
          err << "seed: " << barrier_seed << '\n';
        }
        CampaignConfig cfg;
        cfg.n = barrier_n;
        cfg.phase = Phase::kSwap;
        cfg.target_edges = barrier_target ? barrier_target : edges.size() + 1;
        cfg.trials = barrier_trials;
        cfg.steps = barrier_steps;
        cfg.seed = barrier_seed;
        cfg.workers = threads_from_env();
        std::mt19937_64 pad_rng(cfg.seed);
        cfg.init = pad_to_target(edges, cfg.target_edges, pad_rng);
        const CampaignResult result = run_campaign(cfg);
        json trials = json::array();
        std::uint64_t floor = UINT64_MAX;
        for (const TrialOutcome& t : result.trials) {
          trials.push_back({{"trial", t.trial}, {"seed", t.seed}, {"min_V", t.result.violations}});
          floor = std::min(floor, t.result.violations);
        }
        r["swap"] = {{"target", cfg.target_edges}, {"seed", cfg.seed}, {"trials", trials}, {"min_V", floor}};
      }
      out << r.dump(2) << '\n';
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidDimension& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidConfig& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace c4free
