#ifndef SOSLYAP_UNIVARIATE_HPP
#define SOSLYAP_UNIVARIATE_HPP

#include <optional>
#include <utility>
#include <vector>

#include "soslyap/polynomial.hpp"

namespace soslyap {

// Dense univariate polynomial over Q, ascending coefficients. This is the
// exact decision kernel behind bivariate-form nonnegativity: for forms in
// two variables, nonnegativity and sum of squares coincide, and both reduce
// to sign analysis of p(1,t) and p(0,1).
struct UniPoly {
  std::vector<Rat> c;

  UniPoly() = default;
  explicit UniPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }

  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  const Rat& lc() const { return c.back(); }

  Rat eval(const Rat& t) const {
    Rat acc(0);
    for (size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
    return acc;
  }

  UniPoly derivative() const {
    if (c.size() <= 1) return UniPoly{};
    std::vector<Rat> d(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) d[i - 1] = Rat(static_cast<long>(i)) * c[i];
    return UniPoly(std::move(d));
  }

  UniPoly monic() const {
    UniPoly r = *this;
    if (r.is_zero()) return r;
    Rat l = r.lc();
    for (auto& x : r.c) x /= l;
    return r;
  }
};

inline UniPoly operator-(const UniPoly& a, const UniPoly& b) {
  std::vector<Rat> r(std::max(a.c.size(), b.c.size()), Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
  return UniPoly(std::move(r));
}

// Quotient and remainder of a / b, exact.
inline std::pair<UniPoly, UniPoly> uni_divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw std::invalid_argument("univariate division by zero");
  std::vector<Rat> rem = a.c, quo;
  int db = b.degree();
  if (a.degree() >= db) quo.assign(a.degree() - db + 1, Rat(0));
  for (int k = a.degree(); k >= db; --k) {
    if (rem.size() <= static_cast<size_t>(k) || rem[k] == 0) continue;
    Rat f = rem[k] / b.lc();
    quo[k - db] = f;
    for (int j = 0; j <= db; ++j) rem[k - db + j] -= f * b.c[j];
  }
  return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
}

inline UniPoly uni_gcd(UniPoly a, UniPoly b) {
  a = a.monic();
  b = b.monic();
  while (!b.is_zero()) {
    UniPoly r = uni_divmod(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a;  // monic (or zero)
}

inline UniPoly uni_div_exact(const UniPoly& a, const UniPoly& b) {
  auto [q, r] = uni_divmod(a, b);
  if (!r.is_zero()) throw std::logic_error("uni_div_exact: not divisible");
  return q;
}

// Yun squarefree decomposition: f = prod f_i^i with the f_i squarefree and
// pairwise coprime. Returns the list (f_1, f_2, ...); constants dropped.
inline std::vector<UniPoly> yun_squarefree(const UniPoly& f) {
  std::vector<UniPoly> parts;
  if (f.degree() <= 0) return parts;
  UniPoly fp = f.derivative();
  UniPoly u = uni_gcd(f, fp);
  if (u.degree() == 0) {
    parts.push_back(f.monic());
    return parts;
  }
  UniPoly v = uni_div_exact(f, u).monic();
  UniPoly w = uni_div_exact(fp, u);
  while (v.degree() > 0) {
    UniPoly z = w - v.derivative();
    UniPoly g = uni_gcd(v, z);
    parts.push_back(g);
    v = uni_div_exact(v, g).monic();
    w = uni_div_exact(z, g);
  }
  return parts;
}

// Product of the odd-multiplicity factors; f changes sign exactly at its
// real roots.
inline UniPoly odd_multiplicity_part(const UniPoly& f) {
  auto parts = yun_squarefree(f);
  UniPoly acc(std::vector<Rat>{Rat(1)});
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i % 2 == 0 && parts[i].degree() > 0) {  // multiplicity i+1 odd
      std::vector<Rat> prod(acc.degree() + parts[i].degree() + 1, Rat(0));
      for (int a = 0; a <= acc.degree(); ++a)
        for (int b = 0; b <= parts[i].degree(); ++b)
          prod[a + b] += acc.c[a] * parts[i].c[b];
      acc = UniPoly(std::move(prod));
    }
  }
  return acc;
}

namespace detail {

inline std::vector<UniPoly> sturm_chain(const UniPoly& f) {
  std::vector<UniPoly> chain;
  UniPoly a = f, b = f.derivative();
  if (a.is_zero()) return chain;
  chain.push_back(a);
  while (!b.is_zero()) {
    chain.push_back(b);
    UniPoly r = uni_divmod(a, b).second;
    a = std::move(b);
    // Negated remainder. Scale by a positive constant only: the Sturm
    // property depends on the signs.
    for (auto& x : r.c) x = -x;
    if (!r.is_zero()) {
      Rat s = rat_abs(r.lc());
      for (auto& x : r.c) x /= s;
    }
    b = std::move(r);
  }
  return chain;
}

inline int sign_variations(const std::vector<int>& signs) {
  int v = 0, prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

inline int variations_at(const std::vector<UniPoly>& chain, const Rat& t) {
  std::vector<int> s;
  s.reserve(chain.size());
  for (const auto& p : chain) s.push_back(sgn(p.eval(t)));
  return sign_variations(s);
}

inline int variations_at_inf(const std::vector<UniPoly>& chain, int dir) {
  std::vector<int> s;
  s.reserve(chain.size());
  for (const auto& p : chain) {
    if (p.is_zero()) { s.push_back(0); continue; }
    int lead = sgn(p.lc());
    if (dir < 0 && p.degree() % 2 == 1) lead = -lead;
    s.push_back(lead);
  }
  return sign_variations(s);
}

}  // namespace detail

// Number of distinct real roots of f (Sturm).
inline int count_real_roots(const UniPoly& f) {
  if (f.degree() <= 0) return 0;
  auto chain = detail::sturm_chain(f);
  return detail::variations_at_inf(chain, -1) - detail::variations_at_inf(chain, +1);
}

// Number of distinct real roots in (a, b].
inline int count_real_roots(const UniPoly& f, const Rat& a, const Rat& b) {
  if (f.degree() <= 0) return 0;
  auto chain = detail::sturm_chain(f);
  return detail::variations_at(chain, a) - detail::variations_at(chain, b);
}

// All real roots bounded by 1 + max |c_i| / |lc|.
inline Rat cauchy_root_bound(const UniPoly& f) {
  Rat m(0);
  for (size_t i = 0; i + 1 < f.c.size(); ++i) {
    Rat a = rat_abs(f.c[i]);
    if (a > m) m = a;
  }
  return Rat(1) + m / rat_abs(f.lc());
}

// Isolating intervals (a, b] for the distinct real roots of f, by Sturm
// bisection, refined until width <= width_goal.
inline std::vector<std::pair<Rat, Rat>> isolate_real_roots(const UniPoly& f,
                                                           const Rat& width_goal) {
  std::vector<std::pair<Rat, Rat>> out;
  if (f.degree() <= 0) return out;
  auto chain = detail::sturm_chain(f);
  Rat bound = cauchy_root_bound(f);
  struct Seg { Rat a, b; int va, vb; };
  std::vector<Seg> stack;
  Rat lo = -bound, hi = bound;
  int vlo = detail::variations_at(chain, lo), vhi = detail::variations_at(chain, hi);
  stack.push_back({lo, hi, vlo, vhi});
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    int nroots = s.va - s.vb;
    if (nroots == 0) continue;
    if (nroots == 1 && s.b - s.a <= width_goal) {
      out.emplace_back(s.a, s.b);
      continue;
    }
    Rat mid = (s.a + s.b) / 2;
    int vm = detail::variations_at(chain, mid);
    stack.push_back({s.a, mid, s.va, vm});
    stack.push_back({mid, s.b, vm, s.vb});
  }
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

// --- bivariate-form oracle ---------------------------------------------

// Restriction q(t) = p(1, t) of a bivariate polynomial.
inline UniPoly restrict_to_line(const Polynomial& p) {
  if (p.nvars() != 2)
    throw std::invalid_argument("restrict_to_line: needs 2 variables");
  std::vector<Rat> c(static_cast<size_t>(std::max(p.degree(), 0)) + 1, Rat(0));
  for (const auto& [m, coef] : p.terms()) c[m.exps[1]] += coef;
  return UniPoly(std::move(c));
}

// Exact nonnegativity of a bivariate form: p >= 0 on R^2 iff p(0,1) >= 0
// and p(1,t) >= 0 for all t.
inline bool bivariate_form_nonnegative(const Polynomial& p) {
  if (p.nvars() != 2 || !p.is_homogeneous())
    throw std::invalid_argument("bivariate_form_nonnegative: needs a bivariate form");
  if (p.is_zero()) return true;
  if (p.degree() % 2 == 1) return false;
  Monomial ydeg(2);
  ydeg.exps[1] = p.degree();
  if (p.coeff(ydeg) < 0) return false;
  UniPoly q = restrict_to_line(p);
  if (q.is_zero()) return true;
  if (q.degree() % 2 == 1 || q.lc() < 0) return false;
  return count_real_roots(odd_multiplicity_part(q)) == 0;
}

// Exact positive definiteness: p > 0 off the origin.
inline bool bivariate_form_positive_definite(const Polynomial& p) {
  if (p.nvars() != 2 || !p.is_homogeneous())
    throw std::invalid_argument("bivariate_form_positive_definite: needs a bivariate form");
  if (p.is_zero() || p.degree() % 2 == 1) return false;
  Monomial ydeg(2);
  ydeg.exps[1] = p.degree();
  if (p.coeff(ydeg) <= 0) return false;
  UniPoly q = restrict_to_line(p);
  if (q.is_zero()) return false;
  if (q.degree() % 2 == 1) return false;
  if (q.eval(Rat(0)) <= 0) return false;
  return count_real_roots(q) == 0;
}

// A rational point where the bivariate form is negative, if one exists.
// Scans the sign-invariant gaps between the real roots of p(1,t), then the
// x = 0 direction.
inline std::optional<std::vector<Rat>> bivariate_form_negative_point(
    const Polynomial& p) {
  if (p.nvars() != 2 || !p.is_homogeneous())
    throw std::invalid_argument("bivariate_form_negative_point: needs a bivariate form");
  if (p.is_zero()) return std::nullopt;
  Monomial ydeg(2);
  ydeg.exps[1] = p.degree();
  if (p.coeff(ydeg) < 0) return std::vector<Rat>{Rat(0), Rat(1)};
  UniPoly q = restrict_to_line(p);
  std::vector<Rat> samples;
  if (!q.is_zero()) {
    Rat bound = cauchy_root_bound(q);
    samples.push_back(-bound - 1);
    samples.push_back(bound + 1);
    UniPoly h = uni_div_exact(q, uni_gcd(q, q.derivative()));
    auto roots = isolate_real_roots(h, make_rat(1, 1024));
    for (size_t i = 0; i + 1 < roots.size(); ++i)
      samples.push_back((roots[i].second + roots[i + 1].first) / 2);
    for (auto& [a, b] : roots) {
      samples.push_back(a);
      samples.push_back(b);
    }
  }
  for (const Rat& t : samples)
    if (q.eval(t) < 0) return std::vector<Rat>{Rat(1), t};
  if (p.degree() % 2 == 1) {
    // Odd-degree forms flip sign under x -> -x.
    for (const Rat& t : samples)
      if (q.eval(t) > 0) return std::vector<Rat>{Rat(-1), -t};
  }
  return std::nullopt;
}

// A nonzero rational zero of the form, when one can be pinned down exactly
// (used to produce witnesses for merely-semidefinite forms).
inline std::optional<std::vector<Rat>> bivariate_form_rational_zero(
    const Polynomial& p) {
  if (p.nvars() != 2 || !p.is_homogeneous() || p.is_zero()) return std::nullopt;
  Monomial ydeg(2);
  ydeg.exps[1] = p.degree();
  if (p.coeff(ydeg) == 0) return std::vector<Rat>{Rat(0), Rat(1)};
  UniPoly q = restrict_to_line(p);
  UniPoly h = uni_div_exact(q, uni_gcd(q, q.derivative()));
  auto roots = isolate_real_roots(h, make_rat(1, 1 << 20));
  for (auto& [a, b] : roots) {
    // Bisection endpoints are dyadic; exact hits are common in fixtures.
    if (h.eval(b) == 0) return std::vector<Rat>{Rat(1), b};
    if (h.eval(a) == 0) return std::vector<Rat>{Rat(1), a};
    Rat mid = (a + b) / 2;
    if (h.eval(mid) == 0) return std::vector<Rat>{Rat(1), mid};
  }
  return std::nullopt;
}

}  // namespace soslyap

#endif
