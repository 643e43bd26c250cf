#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "c4free/cube.hpp"

namespace c4free {

struct ExactResult {
  int n = 0;
  std::uint64_t optimum = 0;
  EdgeSet witness;
  std::uint64_t nodes_explored = 0;
  // False when the node limit stopped the search; optimum is then only a lower bound.
  bool proven = false;
};

// Depth-first include/exclude branch and bound over edges in id order. Bound
// is |chosen| + |undecided|, which is practical up to n = 4.
ExactResult exact_max(int n, std::uint64_t node_limit);

struct IlpConstraint {
  C4Id cycle = 0;
  std::array<EdgeId, 4> vars{};
  int rhs = 3;
};

// maximize sum x_e  s.t.  x_a + x_b + x_c + x_d <= 3 per four-cycle, x binary.
struct IlpModel {
  int n = 0;
  std::uint64_t variable_count = 0;
  std::vector<IlpConstraint> constraints;  // canonical cycle order
};

IlpModel build_ilp(int n);

std::string mps_column_name(EdgeId e);
std::string mps_row_name(C4Id c);

// Free-format MPS with OBJSENSE MAX and binary bounds. Byte-deterministic.
// Throws std::ios_base::failure if the stream goes bad.
void write_mps(const IlpModel& model, std::ostream& out);

// What a minimal reader recovers from an MPS file; used for round-trip checks.
struct MpsSummary {
  std::string name;
  std::string sense;  // "MAX" or "MIN"
  std::string objective_row;
  std::vector<std::string> le_rows;
  std::set<std::string> columns;
  std::set<std::string> integer_columns;
  std::set<std::string> binary_columns;
  std::map<std::string, double> rhs;
  // row -> column -> coefficient
  std::map<std::string, std::map<std::string, double>> coefficients;
};

class MpsParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

MpsSummary read_mps(std::istream& in);

// Parses a solver's objective value: a file holding a single integer.
std::int64_t read_solution_value(std::istream& in);

}  // namespace c4free
