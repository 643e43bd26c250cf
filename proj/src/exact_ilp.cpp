#include "c4free/exact_ilp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "c4free/search.hpp"

namespace c4free {

namespace {

class BranchAndBound {
 public:
  BranchAndBound(int n, std::uint64_t node_limit)
      : cube_(Hypercube::get(n)), state_(n), best_(n), node_limit_(node_limit) {}

  ExactResult run() {
    const bool complete = visit(0);
    ExactResult r;
    r.n = cube_.dim();
    r.optimum = best_m_;
    r.witness = best_;
    r.nodes_explored = nodes_;
    r.proven = complete;
    return r;
  }

 private:
  // Returns false once the node limit is hit.
  bool visit(EdgeId next) {
    if (++nodes_ > node_limit_) return false;
    const std::uint64_t chosen = state_.edge_count();
    if (chosen > best_m_) {
      best_m_ = chosen;
      best_ = state_.edges();
    }
    const std::uint64_t undecided = cube_.edge_count() - next;
    if (undecided == 0 || chosen + undecided <= best_m_) return true;

    if (state_.toggle_delta(next) == 0) {
      state_.apply_toggle(next);
      const bool ok = visit(next + 1);
      state_.apply_toggle(next);
      if (!ok) return false;
    }
    return visit(next + 1);
  }

  const Hypercube& cube_;
  SearchState state_;
  EdgeSet best_;
  std::uint64_t best_m_ = 0;
  std::uint64_t nodes_ = 0;
  std::uint64_t node_limit_;
};

}  // namespace

ExactResult exact_max(int n, std::uint64_t node_limit) {
  check_dim(n);
  if (node_limit == 0) throw std::invalid_argument("node_limit must be positive");
  return BranchAndBound(n, node_limit).run();
}

IlpModel build_ilp(int n) {
  const Hypercube& cube = Hypercube::get(n);
  IlpModel model;
  model.n = n;
  model.variable_count = cube.edge_count();
  model.constraints.reserve(cube.c4_count());
  for (const FourCycle& c : cube.cycles()) model.constraints.push_back({c.id, c.edges, 3});
  return model;
}

std::string mps_column_name(EdgeId e) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "X%06u", static_cast<unsigned>(e));
  return buf;
}

std::string mps_row_name(C4Id c) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "C%06u", static_cast<unsigned>(c));
  return buf;
}

void write_mps(const IlpModel& model, std::ostream& out) {
  // Rows touching each column, in the order the rows are declared.
  std::vector<std::vector<C4Id>> rows_of(model.variable_count);
  for (const IlpConstraint& c : model.constraints)
    for (EdgeId e : c.vars) rows_of.at(e).push_back(c.cycle);

  out << "NAME C4FREE_Q" << model.n << '\n';
  out << "OBJSENSE\n    MAX\n";
  out << "ROWS\n N OBJ\n";
  for (const IlpConstraint& c : model.constraints) out << " L " << mps_row_name(c.cycle) << '\n';
  out << "COLUMNS\n";
  out << "    MARKER 'MARKER' 'INTORG'\n";
  for (EdgeId e = 0; e < model.variable_count; ++e) {
    const std::string col = mps_column_name(e);
    out << "    " << col << " OBJ 1\n";
    for (C4Id row : rows_of[e]) out << "    " << col << ' ' << mps_row_name(row) << " 1\n";
  }
  out << "    MARKER 'MARKER' 'INTEND'\n";
  out << "RHS\n";
  for (const IlpConstraint& c : model.constraints)
    out << "    RHS " << mps_row_name(c.cycle) << ' ' << c.rhs << '\n';
  out << "BOUNDS\n";
  for (EdgeId e = 0; e < model.variable_count; ++e) out << " BV BND " << mps_column_name(e) << '\n';
  out << "ENDATA\n";
  out.flush();
  if (!out) throw std::ios_base::failure("failed writing MPS output");
}

MpsSummary read_mps(std::istream& in) {
  MpsSummary s;
  std::string line;
  std::string section;
  bool integer_block = false;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& why) {
    throw MpsParseError("MPS line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '*') continue;
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (line[0] != ' ' && line[0] != '\t') {
      section = tok[0];
      if (section == "NAME") s.name = tok.size() > 1 ? tok[1] : "";
      if (section == "OBJSENSE" && tok.size() > 1) s.sense = tok[1];
      if (section == "ENDATA") break;
      continue;
    }
    if (section == "OBJSENSE") {
      s.sense = tok[0];
    } else if (section == "ROWS") {
      if (tok.size() != 2) fail("ROWS entry needs type and name");
      if (tok[0] == "N")
        s.objective_row = tok[1];
      else if (tok[0] == "L")
        s.le_rows.push_back(tok[1]);
      else
        fail("unsupported row type " + tok[0]);
    } else if (section == "COLUMNS") {
      if (tok.size() >= 3 && tok[1] == "'MARKER'") {
        integer_block = tok[2] == "'INTORG'";
        continue;
      }
      if (tok.size() != 3 && tok.size() != 5) fail("COLUMNS entry has wrong field count");
      s.columns.insert(tok[0]);
      if (integer_block) s.integer_columns.insert(tok[0]);
      for (std::size_t k = 1; k + 1 < tok.size(); k += 2)
        s.coefficients[tok[k]][tok[0]] = std::stod(tok[k + 1]);
    } else if (section == "RHS") {
      if (tok.size() != 3 && tok.size() != 5) fail("RHS entry has wrong field count");
      for (std::size_t k = 1; k + 1 < tok.size(); k += 2) s.rhs[tok[k]] = std::stod(tok[k + 1]);
    } else if (section == "BOUNDS") {
      if (tok.size() < 3) fail("BOUNDS entry too short");
      if (tok[0] == "BV") s.binary_columns.insert(tok[2]);
    }
  }
  if (section != "ENDATA") fail("missing ENDATA");
  return s;
}

std::int64_t read_solution_value(std::istream& in) {
  std::string token;
  if (!(in >> token)) throw std::invalid_argument("solution value file is empty");
  std::size_t used = 0;
  const double value = std::stod(token, &used);
  std::string extra;
  if (used != token.size() || (in >> extra))
    throw std::invalid_argument("solution value file must hold a single number");
  // Solvers often print integral optima as e.g. 132.0.
  const auto rounded = static_cast<std::int64_t>(value >= 0 ? value + 0.5 : value - 0.5);
  if (std::abs(value - static_cast<double>(rounded)) > 1e-6)
    throw std::invalid_argument("solution value " + token + " is not integral");
  return rounded;
}

}  // namespace c4free
