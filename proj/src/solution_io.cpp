#include "c4free/solution_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "c4free/verify.hpp"

namespace c4free {

using nlohmann::json;

SolutionParseError::SolutionParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

SolutionValidationError::SolutionValidationError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

EdgeSet parse_solution(std::istream& in, int n) {
  check_dim(n);
  EdgeSet edges(n);
  const std::int64_t limit = std::int64_t{1} << n;
  std::string text;
  std::size_t lineno = 0;
  while (std::getline(in, text)) {
    ++lineno;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    json value;
    try {
      value = json::parse(text);
    } catch (const json::parse_error& e) {
      throw SolutionParseError(lineno, "malformed JSON: " + std::string(e.what()));
    }
    if (!value.is_array() || value.size() != 2 || !value[0].is_number_integer() ||
        !value[1].is_number_integer())
      throw SolutionParseError(lineno, "expected a two-element integer array");
    const auto u = value[0].get<std::int64_t>();
    const auto v = value[1].get<std::int64_t>();
    if (u < 0 || v < 0 || u >= limit || v >= limit)
      throw SolutionValidationError(lineno, "vertex out of range for Q_" + std::to_string(n));
    if (u >= v) throw SolutionValidationError(lineno, "edge must be written as [u, v] with u < v");
    EdgeId id = 0;
    try {
      id = edge_id(n, static_cast<Vertex>(u), static_cast<Vertex>(v));
    } catch (const NotAnEdge& e) {
      throw SolutionValidationError(lineno, e.what());
    }
    if (edges.contains(id)) throw SolutionValidationError(lineno, "duplicate edge");
    edges.insert(id);
  }
  if (in.bad()) throw std::ios_base::failure("error reading solution");
  return edges;
}

EdgeSet read_solution(const std::filesystem::path& path, int n) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path.string());
  return parse_solution(in, n);
}

void write_solution(const EdgeSet& edges, std::ostream& out) {
  for (EdgeId e : edges.ids()) {
    const auto [u, v] = edge_endpoints(edges.dim(), e);
    out << '[' << u << ", " << v << "]\n";
  }
  out.flush();
  if (!out) throw std::ios_base::failure("failed writing solution");
}

void write_solution(const EdgeSet& edges, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open " + path.string() + " for writing");
  write_solution(edges, out);
}

namespace {

std::string solution_file_name(int trial) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "solutions/trial_%04d.jsonl", trial);
  return buf;
}

}  // namespace

json campaign_manifest(const CampaignConfig& config, const CampaignResult& result) {
  json m;
  m["n"] = config.n;
  m["phase"] = to_string(config.phase);
  m["seed"] = config.seed;
  m["trials"] = config.trials;
  m["steps"] = config.steps;
  m["workers"] = config.workers;
  m["polish"] = config.polish;
  m["target_edges"] = config.target_edges;
  m["ranges"] = {{"lambda", {config.lambda.lo, config.lambda.hi}},
                 {"t0", {config.t0.lo, config.t0.hi}},
                 {"t1", {config.t1.lo, config.t1.hi}}};

  json solutions = json::array();
  for (const SolutionRecord& rec : result.corpus)
    solutions.push_back({{"file", solution_file_name(rec.trial)},
                         {"trial", rec.trial},
                         {"seed", rec.seed},
                         {"m", rec.edges.size()},
                         {"V", rec.violations},
                         {"step", rec.step},
                         {"verified", rec.verified}});
  m["solutions"] = solutions;

  json trials = json::array();
  for (const TrialOutcome& t : result.trials)
    trials.push_back({{"trial", t.trial},
                      {"seed", t.seed},
                      {"lambda", t.lambda},
                      {"t0", t.t0},
                      {"t1", t.t1},
                      {"m", t.result.edges},
                      {"V", t.result.violations},
                      {"best_step", t.result.best_step},
                      {"accepted", t.result.trace.accepted},
                      {"recorded", t.recorded}});
  m["trial_results"] = trials;
  m["best"] = {{"m", result.incumbent.size()}, {"V", result.incumbent_violations}};
  return m;
}

void write_run_directory(const std::filesystem::path& root, const CampaignConfig& config,
                         const CampaignResult& result) {
  std::filesystem::create_directories(root / "solutions");
  for (const SolutionRecord& rec : result.corpus)
    write_solution(rec.edges, root / solution_file_name(rec.trial));
  std::ofstream out(root / "manifest.json", std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write manifest in " + root.string());
  out << campaign_manifest(config, result).dump(2) << '\n';
  out.flush();
  if (!out) throw std::ios_base::failure("failed writing manifest in " + root.string());
}

std::vector<LoadedSolution> load_run_directory(const std::filesystem::path& root) {
  std::ifstream in(root / "manifest.json");
  if (!in) throw std::ios_base::failure("cannot open " + (root / "manifest.json").string());
  json manifest;
  try {
    manifest = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SolutionParseError(0, "malformed manifest: " + std::string(e.what()));
  }
  const int n = manifest.at("n").get<int>();
  std::vector<LoadedSolution> out;
  for (const json& entry : manifest.at("solutions")) {
    const std::filesystem::path file = root / entry.at("file").get<std::string>();
    out.push_back({file, read_solution(file, n)});
  }
  return out;
}

}  // namespace c4free
