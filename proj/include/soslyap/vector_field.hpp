#ifndef SOSLYAP_VECTOR_FIELD_HPP
#define SOSLYAP_VECTOR_FIELD_HPP

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "soslyap/polynomial.hpp"

namespace soslyap {

// Polynomial vector field xdot = f(x): n polynomials over n variables.
struct VectorField {
  size_t nvars = 0;
  std::vector<Polynomial> components;

  VectorField() = default;
  explicit VectorField(std::vector<Polynomial> comps) {
    if (comps.empty()) throw std::invalid_argument("empty vector field");
    nvars = comps.size();
    for (const auto& p : comps)
      if (p.nvars() != nvars)
        throw std::invalid_argument(
            "vector field components must be n polynomials over n variables");
    components = std::move(comps);
  }

  // Common degree when every component is homogeneous of one degree. The
  // zero polynomial fits any degree.
  std::optional<int> homogeneous_degree() const {
    int d = -1;
    for (const auto& p : components) {
      if (!p.is_homogeneous()) return std::nullopt;
      if (p.is_zero()) continue;
      if (d < 0) d = p.degree();
      else if (d != p.degree()) return std::nullopt;
    }
    return d < 0 ? 0 : d;
  }

  bool is_homogeneous() const { return homogeneous_degree().has_value(); }

  bool vanishes_at_origin() const {
    std::vector<Rat> origin(nvars, Rat(0));
    for (const auto& p : components)
      if (p.evaluate(origin) != 0) return false;
    return true;
  }

  int degree() const {
    int d = -1;
    for (const auto& p : components) d = std::max(d, p.degree());
    return d;
  }

  std::vector<Rat> evaluate(const std::vector<Rat>& x) const {
    std::vector<Rat> out;
    out.reserve(nvars);
    for (const auto& p : components) out.push_back(p.evaluate(x));
    return out;
  }

  std::vector<double> evaluate(const std::vector<double>& x) const {
    std::vector<double> out;
    out.reserve(nvars);
    for (const auto& p : components) out.push_back(p.evaluate(x));
    return out;
  }

  VectorField scaled(const Rat& c) const {
    std::vector<Polynomial> comps;
    comps.reserve(nvars);
    for (const auto& p : components) comps.push_back(c * p);
    return VectorField(std::move(comps));
  }

  // Coefficient matrix of the degree-1 part: A[i][j] = d f_i / d x_j at 0.
  std::vector<std::vector<Rat>> linearization() const {
    std::vector<std::vector<Rat>> a(nvars, std::vector<Rat>(nvars, Rat(0)));
    for (size_t i = 0; i < nvars; ++i) {
      for (const auto& [m, c] : components[i].terms()) {
        if (m.degree() != 1) continue;
        for (size_t j = 0; j < nvars; ++j)
          if (m.exps[j] == 1) a[i][j] = c;
      }
    }
    return a;
  }
};

// Vdot = <grad V, f>, the derivative of V along the flow of xdot = f(x).
inline Polynomial lie_derivative(const Polynomial& v, const VectorField& f) {
  if (v.nvars() != f.nvars)
    throw std::invalid_argument("lie_derivative: dimension mismatch");
  Polynomial acc(v.nvars());
  for (size_t i = 0; i < v.nvars(); ++i)
    acc += v.derivative(i) * f.components[i];
  return acc;
}

// f = -grad V.
inline VectorField negative_gradient_field(const Polynomial& v) {
  std::vector<Polynomial> comps;
  comps.reserve(v.nvars());
  for (auto& g : v.gradient()) comps.push_back(-g);
  return VectorField(std::move(comps));
}

// --- text format ------------------------------------------------------
//
//   # optional comments
//   dx1 = -x1 + x1*x2
//   dx2 = -x2
//
// The ambient dimension is the number of dx lines; every variable index
// must stay within it.

inline VectorField parse_vector_field(const std::string& text) {
  std::vector<std::pair<size_t, std::string>> rhs;  // (component index, expr)
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  size_t nvars = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string stripped;
    for (char c : line) {
      if (c == '#') break;
      stripped.push_back(c);
    }
    size_t a = stripped.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    size_t b = stripped.find_last_not_of(" \t\r");
    stripped = stripped.substr(a, b - a + 1);
    if (stripped.size() < 2 || stripped[0] != 'd' || stripped[1] != 'x')
      throw std::runtime_error("line " + std::to_string(lineno) +
                               ": expected 'dxK = expression'");
    size_t i = 2, idx = 0;
    while (i < stripped.size() && isdigit(static_cast<unsigned char>(stripped[i])))
      idx = idx * 10 + (stripped[i++] - '0');
    while (i < stripped.size() && isspace(static_cast<unsigned char>(stripped[i]))) ++i;
    if (idx == 0 || i >= stripped.size() || stripped[i] != '=')
      throw std::runtime_error("line " + std::to_string(lineno) +
                               ": expected 'dxK = expression'");
    rhs.emplace_back(idx, stripped.substr(i + 1));
    nvars = std::max(nvars, idx);
  }
  if (rhs.empty()) throw std::runtime_error("no dx lines in vector field text");
  std::vector<Polynomial> comps(nvars, Polynomial::zero(nvars));
  std::vector<bool> seen(nvars, false);
  for (auto& [idx, expr] : rhs) {
    if (seen[idx - 1])
      throw std::runtime_error("component dx" + std::to_string(idx) +
                               " defined twice");
    seen[idx - 1] = true;
    comps[idx - 1] = parse_polynomial(expr, nvars);
  }
  for (size_t i = 0; i < nvars; ++i)
    if (!seen[i])
      throw std::runtime_error("component dx" + std::to_string(i + 1) +
                               " missing");
  return VectorField(std::move(comps));
}

inline std::string vector_field_to_string(const VectorField& f) {
  std::string out;
  for (size_t i = 0; i < f.nvars; ++i)
    out += "dx" + std::to_string(i + 1) + " = " +
           f.components[i].to_string() + "\n";
  return out;
}

}  // namespace soslyap

#endif
