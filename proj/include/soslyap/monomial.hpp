#ifndef SOSLYAP_MONOMIAL_HPP
#define SOSLYAP_MONOMIAL_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace soslyap {

// Exponent vector x^a = x1^a1 ... xn^an. The length always equals the
// ambient variable count of whatever polynomial owns it.
struct Monomial {
  std::vector<uint32_t> exps;

  Monomial() = default;
  explicit Monomial(size_t nvars) : exps(nvars, 0) {}
  Monomial(std::initializer_list<uint32_t> e) : exps(e) {}

  size_t nvars() const { return exps.size(); }

  uint32_t degree() const {
    return std::accumulate(exps.begin(), exps.end(), uint32_t{0});
  }

  bool is_constant() const { return degree() == 0; }

  Monomial operator*(const Monomial& o) const {
    if (exps.size() != o.exps.size())
      throw std::invalid_argument("monomial dimension mismatch");
    Monomial m(*this);
    for (size_t i = 0; i < exps.size(); ++i) m.exps[i] += o.exps[i];
    return m;
  }

  bool operator==(const Monomial& o) const { return exps == o.exps; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }
};

// Graded lexicographic order, fixed globally so serialized polynomials are
// canonical and fixtures are byte-stable.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    uint32_t da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return std::lexicographical_compare(a.exps.begin(), a.exps.end(),
                                        b.exps.begin(), b.exps.end());
  }
};

inline std::string monomial_to_string(const Monomial& m) {
  std::string s;
  for (size_t i = 0; i < m.nvars(); ++i) {
    if (m.exps[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += "x" + std::to_string(i + 1);
    if (m.exps[i] > 1) s += "^" + std::to_string(m.exps[i]);
  }
  return s.empty() ? "1" : s;
}

// All monomials in n variables of total degree exactly d, grlex order.
inline std::vector<Monomial> monomials_of_degree(size_t nvars, uint32_t d) {
  std::vector<Monomial> out;
  Monomial m(nvars);
  // Recursive enumeration in lexicographic order of exponent vectors.
  auto rec = [&](auto&& self, size_t idx, uint32_t rem) -> void {
    if (idx + 1 == nvars) {
      m.exps[idx] = rem;
      out.push_back(m);
      return;
    }
    for (uint32_t e = 0; e <= rem; ++e) {
      m.exps[idx] = e;
      self(self, idx + 1, rem - e);
    }
  };
  if (nvars == 0) {
    if (d == 0) out.push_back(m);
    return out;
  }
  rec(rec, 0, d);
  std::sort(out.begin(), out.end(), GrlexLess{});
  return out;
}

// All monomials with lo <= degree <= hi, grlex order.
inline std::vector<Monomial> monomials_up_to(size_t nvars, uint32_t lo,
                                             uint32_t hi) {
  std::vector<Monomial> out;
  for (uint32_t d = lo; d <= hi; ++d) {
    auto layer = monomials_of_degree(nvars, d);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

}  // namespace soslyap

#endif
