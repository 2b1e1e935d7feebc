#ifndef SOSLYAP_CNF_HPP
#define SOSLYAP_CNF_HPP

#include <array>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace soslyap {

// ONE-IN-THREE 3SAT instance: DIMACS syntax restricted to exactly three
// literals per clause. Note the semantics differ from plain SAT -- a clause
// is satisfied only when exactly one of its literals is true.
struct CnfInstance {
  int nvars = 0;
  std::vector<std::array<int, 3>> clauses;  // signed 1-based indices
};

// DIMACS-style parser: "p cnf <nvars> <nclauses>" header, 'c' comments,
// clauses as whitespace-separated literals terminated by 0. Errors carry
// line numbers.
inline CnfInstance parse_cnf(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  CnfInstance inst;
  bool have_header = false;
  int declared_clauses = -1;
  std::vector<int> current;
  int clause_line = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c") continue;
    if (tok == "p") {
      std::string fmt;
      if (have_header || !(ls >> fmt >> inst.nvars >> declared_clauses) ||
          fmt != "cnf" || inst.nvars <= 0 || declared_clauses < 0)
        throw std::runtime_error("line " + std::to_string(lineno) +
                                 ": malformed DIMACS header");
      have_header = true;
      continue;
    }
    if (!have_header)
      throw std::runtime_error("line " + std::to_string(lineno) +
                               ": clause before 'p cnf' header");
    ls.clear();
    ls.str(line);
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        if (current.size() != 3)
          throw std::runtime_error(
              "line " + std::to_string(clause_line ? clause_line : lineno) +
              ": clause with " + std::to_string(current.size()) +
              " literals (exactly 3 required)");
        inst.clauses.push_back({current[0], current[1], current[2]});
        current.clear();
        clause_line = 0;
      } else {
        if (std::abs(lit) > inst.nvars)
          throw std::runtime_error("line " + std::to_string(lineno) +
                                   ": literal " + std::to_string(lit) +
                                   " out of range");
        if (current.empty()) clause_line = lineno;
        current.push_back(lit);
      }
    }
    if (ls.fail() && !ls.eof())
      throw std::runtime_error("line " + std::to_string(lineno) +
                               ": unreadable token");
  }
  if (!current.empty())
    throw std::runtime_error("line " + std::to_string(clause_line) +
                             ": unterminated clause");
  if (inst.clauses.empty())
    throw std::runtime_error("instance has no clauses");
  if (declared_clauses >= 0 &&
      declared_clauses != static_cast<int>(inst.clauses.size()))
    throw std::runtime_error("header declares " + std::to_string(declared_clauses) +
                             " clauses, found " +
                             std::to_string(inst.clauses.size()));
  return inst;
}

inline std::string cnf_to_string(const CnfInstance& inst) {
  std::string out = "p cnf " + std::to_string(inst.nvars) + " " +
                    std::to_string(inst.clauses.size()) + "\n";
  for (const auto& cl : inst.clauses)
    out += std::to_string(cl[0]) + " " + std::to_string(cl[1]) + " " +
           std::to_string(cl[2]) + " 0\n";
  return out;
}

struct OneInThreeResult {
  bool satisfiable = false;
  std::vector<int> assignment;  // 0/1 values, lexicographically least witness
};

// Exhaustive oracle over all 2^n assignments; x1 is the most significant
// position, so the first hit is the lexicographically least witness.
inline OneInThreeResult one_in_three_brute_force(const CnfInstance& inst) {
  if (inst.nvars > 24)
    throw std::invalid_argument("one_in_three_brute_force: nvars > 24");
  const int n = inst.nvars;
  OneInThreeResult res;
  for (uint64_t code = 0; code < (uint64_t{1} << n); ++code) {
    bool ok = true;
    for (const auto& cl : inst.clauses) {
      int trues = 0;
      for (int lit : cl) {
        int var = std::abs(lit) - 1;
        int val = (code >> (n - 1 - var)) & 1;  // x1 = MSB
        trues += (lit > 0) ? val : 1 - val;
      }
      if (trues != 1) { ok = false; break; }
    }
    if (ok) {
      res.satisfiable = true;
      res.assignment.resize(n);
      for (int i = 0; i < n; ++i) res.assignment[i] = (code >> (n - 1 - i)) & 1;
      return res;
    }
  }
  return res;
}

}  // namespace soslyap

#endif
