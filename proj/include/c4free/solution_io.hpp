#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "c4free/cube.hpp"
#include "c4free/search.hpp"
#include "json.hpp"

namespace c4free {

// Malformed JSON on a line.
class SolutionParseError : public std::runtime_error {
 public:
  SolutionParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Well-formed line that is not a valid, new edge of Q_n.
class SolutionValidationError : public std::runtime_error {
 public:
  SolutionValidationError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// JSONL: one edge per line as [u, v] with u < v. Blank lines are ignored.
EdgeSet parse_solution(std::istream& in, int n);
EdgeSet read_solution(const std::filesystem::path& path, int n);

// Edges in id order, one "[u, v]" line each.
void write_solution(const EdgeSet& edges, std::ostream& out);
void write_solution(const EdgeSet& edges, const std::filesystem::path& path);

// Run directory layout: manifest.json plus solutions/trial_NNNN.jsonl per recorded solution.
nlohmann::json campaign_manifest(const CampaignConfig& config, const CampaignResult& result);
void write_run_directory(const std::filesystem::path& root, const CampaignConfig& config,
                         const CampaignResult& result);

struct LoadedSolution {
  std::filesystem::path file;
  EdgeSet edges;
};

// Every solution listed in root/manifest.json.
std::vector<LoadedSolution> load_run_directory(const std::filesystem::path& root);

}  // namespace c4free
