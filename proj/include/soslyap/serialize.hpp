#ifndef SOSLYAP_SERIALIZE_HPP
#define SOSLYAP_SERIALIZE_HPP

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "soslyap/sos.hpp"

namespace soslyap {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string float_str(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

// --- certificates --------------------------------------------------------
//
// Basis monomials as exponent vectors; Gram entries as decimal strings for
// floating certificates and "num/den" strings for exact rational ones.

inline Json certificate_to_json(const SosCertificate& cert, size_t nvars) {
  Json j;
  j["kind"] = "sos-certificate";
  j["nvars"] = nvars;
  j["coeff_type"] = cert.is_rational() ? "rational" : "float";
  Json basis = Json::array();
  for (const auto& m : cert.basis.monomials) basis.push_back(m.exps);
  j["basis"] = std::move(basis);
  Json gram = Json::array();
  const size_t n = cert.basis.size();
  for (size_t i = 0; i < n; ++i) {
    Json row = Json::array();
    for (size_t k = 0; k < n; ++k)
      row.push_back(cert.is_rational()
                        ? rat_to_string((*cert.gram_rational)(i, k))
                        : detail::float_str((*cert.gram_float)(i, k)));
    gram.push_back(std::move(row));
  }
  j["gram"] = std::move(gram);
  if (cert.squares) {
    Json sq = Json::array();
    for (const auto& q : *cert.squares) sq.push_back(q.to_string());
    j["squares"] = std::move(sq);
  }
  return j;
}

inline SosCertificate certificate_from_json(const Json& j) {
  SosCertificate cert;
  size_t nvars = j.at("nvars").get<size_t>();
  for (const auto& exps : j.at("basis")) {
    Monomial m(nvars);
    if (exps.size() != nvars)
      throw std::runtime_error("certificate basis monomial of wrong length");
    for (size_t i = 0; i < nvars; ++i) m.exps[i] = exps[i].get<uint32_t>();
    cert.basis.monomials.push_back(std::move(m));
  }
  const size_t n = cert.basis.size();
  bool rational = j.at("coeff_type").get<std::string>() == "rational";
  const auto& gram = j.at("gram");
  if (gram.size() != n) throw std::runtime_error("certificate gram size mismatch");
  if (rational) {
    RatMatrix q(n, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t k = 0; k < n; ++k)
        q(i, k) = rat_from_string(gram[i][k].get<std::string>());
    if (!q.is_symmetric()) throw std::runtime_error("certificate gram not symmetric");
    cert.gram_rational = std::move(q);
  } else {
    SymMatrix q(n);
    for (size_t i = 0; i < n; ++i)
      for (size_t k = 0; k <= i; ++k)
        q.set(i, k, std::stod(gram[i][k].get<std::string>()));
    cert.gram_float = std::move(q);
  }
  if (j.contains("squares")) {
    std::vector<Polynomial> sq;
    for (const auto& s : j["squares"])
      sq.push_back(parse_polynomial(s.get<std::string>(), nvars));
    cert.squares = std::move(sq);
  }
  return cert;
}

// --- SDP problems and solutions -----------------------------------------

inline Json sdp_problem_to_json(const SdpProblem& prob) {
  Json j;
  j["kind"] = "sdp-problem";
  j["block_dims"] = prob.block_dims;
  Json cons = Json::array();
  for (const auto& c : prob.constraints) {
    Json jc;
    jc["rhs"] = c.rhs;
    Json blocks = Json::array();
    for (const auto& blk : c.blocks) {
      Json entries = Json::array();
      for (auto& [i, k, v] : blk.entries) entries.push_back(Json::array({i, k, v}));
      blocks.push_back(std::move(entries));
    }
    jc["blocks"] = std::move(blocks);
    cons.push_back(std::move(jc));
  }
  j["constraints"] = std::move(cons);
  if (prob.objective) {
    Json blocks = Json::array();
    for (const auto& blk : *prob.objective) {
      Json entries = Json::array();
      for (auto& [i, k, v] : blk.entries) entries.push_back(Json::array({i, k, v}));
      blocks.push_back(std::move(entries));
    }
    j["objective"] = std::move(blocks);
  } else {
    j["objective"] = nullptr;
  }
  return j;
}

inline SdpProblem sdp_problem_from_json(const Json& j) {
  SdpProblem prob;
  prob.block_dims = j.at("block_dims").get<std::vector<int>>();
  for (const auto& jc : j.at("constraints")) {
    SdpConstraint c;
    c.rhs = jc.at("rhs").get<double>();
    for (const auto& entries : jc.at("blocks")) {
      SparseSym blk;
      for (const auto& e : entries)
        blk.add(e[0].get<int>(), e[1].get<int>(), e[2].get<double>());
      c.blocks.push_back(std::move(blk));
    }
    prob.constraints.push_back(std::move(c));
  }
  if (!j.at("objective").is_null()) {
    std::vector<SparseSym> obj;
    for (const auto& entries : j["objective"]) {
      SparseSym blk;
      for (const auto& e : entries)
        blk.add(e[0].get<int>(), e[1].get<int>(), e[2].get<double>());
      obj.push_back(std::move(blk));
    }
    prob.objective = std::move(obj);
  }
  return prob;
}

inline Json sdp_solution_to_json(const SdpSolution& sol) {
  Json j;
  j["kind"] = "sdp-solution";
  j["status"] = to_string(sol.status);
  j["objective_value"] = sol.objective_value;
  Json primal = Json::array();
  for (const auto& x : sol.primal) {
    Json m = Json::array();
    for (int i = 0; i < x.rows(); ++i) {
      Json row = Json::array();
      for (int k = 0; k < x.cols(); ++k) row.push_back(x(i, k));
      m.push_back(std::move(row));
    }
    primal.push_back(std::move(m));
  }
  j["primal"] = std::move(primal);
  j["dual"] = sol.dual;
  j["residuals"] = Json{{"primal", sol.primal_residual},
                        {"dual", sol.dual_residual},
                        {"gap", sol.gap},
                        {"min_primal_eig", sol.min_primal_eig}};
  j["iterations"] = sol.iterations;
  if (!sol.message.empty()) j["message"] = sol.message;
  return j;
}

// --- misc ----------------------------------------------------------------

inline uint64_t fnv1a64(const std::string& data) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string fnv1a64_hex(const std::string& data) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(data)));
  return buf;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << data;
}

}  // namespace soslyap

#endif
