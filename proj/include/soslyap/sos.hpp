#ifndef SOSLYAP_SOS_HPP
#define SOSLYAP_SOS_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "soslyap/polynomial.hpp"
#include "soslyap/sdp.hpp"

namespace soslyap {

// Ordered monomial vector z for the Gram parameterization p = z' Q z.
struct GramBasis {
  std::vector<Monomial> monomials;

  size_t size() const { return monomials.size(); }
  bool operator==(const GramBasis& o) const { return monomials == o.monomials; }
};

enum class BasisMode { full, homogeneous, newton };

namespace detail {

// Exact feasibility LP: is q a convex combination of the points in pts?
// Phase-1 simplex with Bland's rule over the rationals.
inline bool in_convex_hull(const std::vector<Monomial>& pts, const Monomial& q) {
  const size_t m = pts.size();
  if (m == 0) return false;
  const size_t n = q.nvars();
  const size_t rows = n + 1;
  const size_t cols = m + rows;  // lambdas + artificials
  std::vector<std::vector<Rat>> t(rows, std::vector<Rat>(cols + 1, Rat(0)));
  for (size_t j = 0; j < rows; ++j) {
    for (size_t i = 0; i < m; ++i)
      t[j][i] = (j < n) ? Rat(static_cast<long>(pts[i].exps[j])) : Rat(1);
    t[j][cols] = (j < n) ? Rat(static_cast<long>(q.exps[j])) : Rat(1);
  }
  for (size_t j = 0; j < rows; ++j) {
    if (t[j][cols] < 0)
      for (auto& v : t[j]) v = -v;
    t[j][m + j] = 1;
  }
  std::vector<size_t> basis(rows);
  for (size_t j = 0; j < rows; ++j) basis[j] = m + j;
  // Phase-1 objective row: reduced costs of minimizing the artificial sum.
  std::vector<Rat> obj(cols + 1, Rat(0));
  for (size_t j = 0; j < rows; ++j)
    for (size_t k = 0; k <= cols; ++k)
      if (k < m || k == cols) obj[k] += t[j][k];

  for (;;) {
    size_t enter = SIZE_MAX;
    for (size_t k = 0; k < cols; ++k)
      if (obj[k] > 0) { enter = k; break; }  // Bland: smallest index
    if (enter == SIZE_MAX) break;
    size_t leave = SIZE_MAX;
    Rat best_ratio(0);
    for (size_t j = 0; j < rows; ++j) {
      if (t[j][enter] <= 0) continue;
      Rat ratio = t[j][cols] / t[j][enter];
      if (leave == SIZE_MAX || ratio < best_ratio ||
          (ratio == best_ratio && basis[j] < basis[leave])) {
        leave = j;
        best_ratio = ratio;
      }
    }
    if (leave == SIZE_MAX) return false;  // unbounded: cannot happen here
    Rat piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (size_t j = 0; j < rows; ++j) {
      if (j == leave || t[j][enter] == 0) continue;
      Rat f = t[j][enter];
      for (size_t k = 0; k <= cols; ++k) t[j][k] -= f * t[leave][k];
    }
    Rat fo = obj[enter];
    if (fo != 0)
      for (size_t k = 0; k <= cols; ++k) obj[k] -= fo * t[leave][k];
    basis[leave] = enter;
  }
  return obj[cols] == 0;
}

}  // namespace detail

// Gram basis selection. full: all monomials of degree <= deg(p)/2;
// homogeneous: degree exactly deg(p)/2; newton: lattice points of half the
// Newton polytope of p.
inline GramBasis monomial_basis(const Polynomial& p, BasisMode mode) {
  int d = p.degree();
  if (d < 0) return GramBasis{};
  if (d % 2 != 0)
    throw std::invalid_argument("monomial_basis: polynomial degree is odd");
  uint32_t half = static_cast<uint32_t>(d) / 2;
  GramBasis b;
  switch (mode) {
    case BasisMode::full:
      b.monomials = monomials_up_to(p.nvars(), 0, half);
      break;
    case BasisMode::homogeneous: {
      if (!p.is_homogeneous())
        throw std::invalid_argument(
            "monomial_basis: homogeneous mode on non-homogeneous polynomial");
      b.monomials = monomials_of_degree(p.nvars(), half);
      break;
    }
    case BasisMode::newton: {
      std::vector<Monomial> support;
      for (const auto& [m, c] : p.terms()) support.push_back(m);
      uint32_t lo = support.empty() ? 0 : support.front().degree();
      for (const auto& m : support) lo = std::min(lo, m.degree());
      for (const auto& cand : monomials_up_to(p.nvars(), (lo + 1) / 2, half)) {
        Monomial doubled = cand * cand;
        if (detail::in_convex_hull(support, doubled)) b.monomials.push_back(cand);
      }
      break;
    }
  }
  return b;
}

// Feasibility SDP for p = z' Q z, one equality constraint per monomial in
// the union of the product support and supp(p).
inline SdpProblem compile_sos(const Polynomial& p, const GramBasis& basis) {
  const size_t m = basis.size();
  SdpProblem prob;
  prob.block_dims = {static_cast<int>(std::max<size_t>(m, 1))};
  std::map<Monomial, std::vector<std::pair<int, int>>, GrlexLess> classes;
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i; j < m; ++j)
      classes[basis.monomials[i] * basis.monomials[j]].emplace_back(i, j);
  for (const auto& [mono, c] : p.terms())
    if (!classes.count(mono))
      throw std::invalid_argument("compile_sos: basis cannot cover monomial " +
                                  monomial_to_string(mono));
  for (const auto& [mono, cells] : classes) {
    SdpConstraint con;
    con.blocks.resize(1);
    for (auto& [i, j] : cells) con.blocks[0].add(i, j, 1.0);
    con.rhs = rat_to_double(p.coeff(mono));
    prob.constraints.push_back(std::move(con));
  }
  return prob;
}

// Constraint monomials in the order compile_sos emits them; dual rays are
// indexed against this list.
inline std::vector<Monomial> sos_constraint_support(const Polynomial& p,
                                                    const GramBasis& basis) {
  std::set<Monomial, GrlexLess> s;
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = i; j < basis.size(); ++j)
      s.insert(basis.monomials[i] * basis.monomials[j]);
  for (const auto& [m, c] : p.terms()) s.insert(m);
  return {s.begin(), s.end()};
}

// Gram-matrix witness that p = z' Q z. Either floating (from the SDP) or
// exact rational (after rounding and reprojection).
struct SosCertificate {
  GramBasis basis;
  std::optional<SymMatrix> gram_float;
  std::optional<RatMatrix> gram_rational;
  std::optional<std::vector<Polynomial>> squares;

  bool is_rational() const { return gram_rational.has_value(); }
};

enum class SosStatus { Sos, NotSos, Indeterminate };

inline const char* to_string(SosStatus s) {
  switch (s) {
    case SosStatus::Sos: return "sos";
    case SosStatus::NotSos: return "not-sos";
    case SosStatus::Indeterminate: return "indeterminate";
  }
  return "?";
}

struct SosVerdict {
  SosStatus status = SosStatus::Indeterminate;
  std::optional<SosCertificate> certificate;
  // Farkas separation for NotSos: ray indexed by ray_support monomials.
  std::optional<std::vector<double>> dual_ray;
  std::vector<Monomial> ray_support;
  GramBasis basis;
  std::string message;
};

// z' Q z as an exact polynomial (doubles convert exactly).
inline Polynomial gram_to_polynomial(const GramBasis& basis, const RatMatrix& q,
                                     size_t nvars) {
  Polynomial acc(nvars);
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = 0; j < basis.size(); ++j)
      acc.add_term(basis.monomials[i] * basis.monomials[j], q(i, j));
  return acc;
}

inline Polynomial gram_to_polynomial(const GramBasis& basis, const SymMatrix& q,
                                     size_t nvars) {
  return gram_to_polynomial(basis, q.to_rational(), nvars);
}

// Exact re-verification: z' Q z == p identically and Q passes the exact
// PSD test.
inline bool verify_certificate_exact(const Polynomial& p, const SosCertificate& cert) {
  if (!cert.gram_rational) return false;
  if (gram_to_polynomial(cert.basis, *cert.gram_rational, p.nvars()) != p)
    return false;
  return psd_check_exact(*cert.gram_rational).verdict != PsdVerdict::NotPSD;
}

// Floating verification at tolerance tol * (1 + |p|_inf).
inline bool verify_certificate_float(const Polynomial& p, const SosCertificate& cert,
                                     double tol = 1e-6) {
  if (!cert.gram_float) return false;
  Polynomial diff =
      gram_to_polynomial(cert.basis, *cert.gram_float, p.nvars()) - p;
  double scale = 1 + rat_to_double(p.max_abs_coeff());
  if (rat_to_double(diff.max_abs_coeff()) > tol * scale) return false;
  return eig_min(*cert.gram_float) >= -tol * scale;
}

namespace detail {

// Deterministic point sweep looking for p(x) < 0; such a point gives a
// rank-one moment ray certifying NotSos. Scales outward so odd-degree and
// negative-leading inputs are caught analytically.
inline std::optional<std::vector<double>> find_negative_point(const Polynomial& p) {
  const size_t n = p.nvars();
  std::vector<std::vector<double>> dirs;
  for (size_t i = 0; i < n; ++i) {
    std::vector<double> e(n, 0.0);
    e[i] = 1;
    dirs.push_back(e);
  }
  dirs.push_back(std::vector<double>(n, 1.0));
  dirs.push_back(std::vector<double>(n, -1.0));
  uint64_t state = 0x9e3779b97f4a7c15ull;  // fixed-seed LCG points
  auto next = [&state]() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<double>((state >> 11) % 2001) / 1000.0 - 1.0;
  };
  for (int k = 0; k < 40; ++k) {
    std::vector<double> v(n);
    for (auto& c : v) c = next();
    dirs.push_back(v);
  }
  for (const auto& d : dirs) {
    for (double t : {1.0, 0.5, 2.0, 4.0, 16.0, 256.0, 65536.0}) {
      for (double sgn : {1.0, -1.0}) {
        std::vector<double> x(n);
        for (size_t i = 0; i < n; ++i) x[i] = sgn * t * d[i];
        double val = p.evaluate(x);
        if (std::isfinite(val) && val < 0) return x;
      }
    }
  }
  return std::nullopt;
}

inline SosVerdict not_sos_from_point(const Polynomial& p, const GramBasis& basis,
                                     const std::vector<double>& x) {
  SosVerdict v;
  v.status = SosStatus::NotSos;
  v.basis = basis;
  v.ray_support = sos_constraint_support(p, basis);
  std::vector<double> ray;
  double norm = 0;
  for (const auto& m : v.ray_support) {
    double t = 1;
    for (size_t i = 0; i < m.nvars(); ++i)
      for (uint32_t e = 0; e < m.exps[i]; ++e) t *= x[i];
    ray.push_back(t);
    norm = std::max(norm, std::abs(t));
  }
  if (norm > 0)
    for (auto& r : ray) r /= norm;
  v.dual_ray = std::move(ray);
  v.message = "negative value at a sampled point";
  return v;
}

}  // namespace detail

// Decides whether p is a sum of squares. Sos comes with a floating Gram
// certificate, NotSos with a Farkas ray (a separating moment functional),
// anything unresolved is Indeterminate -- never a silent claim.
inline SosVerdict check_sos(const Polynomial& p,
                            std::optional<BasisMode> mode = std::nullopt,
                            const SdpOptions& opts = {}) {
  SosVerdict v;
  if (p.is_zero()) {
    v.status = SosStatus::Sos;
    SosCertificate cert;
    cert.gram_rational = RatMatrix(0, 0);
    v.certificate = std::move(cert);
    return v;
  }
  int d = p.degree();
  BasisMode m = mode.value_or(p.is_homogeneous() && d >= 2 ? BasisMode::homogeneous
                                                           : BasisMode::newton);
  if (d == 0) {
    Rat c = p.coeff(Monomial(p.nvars()));
    GramBasis basis;
    basis.monomials.push_back(Monomial(p.nvars()));
    if (c >= 0) {
      v.status = SosStatus::Sos;
      SosCertificate cert;
      cert.basis = basis;
      RatMatrix q(1, 1);
      q(0, 0) = c;
      cert.gram_rational = std::move(q);
      v.certificate = std::move(cert);
    } else {
      v.status = SosStatus::NotSos;
      v.basis = basis;
      v.ray_support = {Monomial(p.nvars())};
      v.dual_ray = std::vector<double>{1.0};
      v.message = "negative constant";
    }
    return v;
  }
  if (d % 2 == 1) {
    auto x = detail::find_negative_point(p);
    if (x) return detail::not_sos_from_point(p, GramBasis{}, *x);
    v.status = SosStatus::Indeterminate;
    v.message = "odd degree but no negative sample found";
    return v;
  }
  // Cheap analytic short-circuit before any SDP work.
  if (auto x = detail::find_negative_point(p)) {
    GramBasis basis = monomial_basis(p, m);
    return detail::not_sos_from_point(p, basis, *x);
  }

  GramBasis basis = monomial_basis(p, m);
  SdpProblem prob;
  try {
    prob = compile_sos(p, basis);
  } catch (const std::exception& e) {
    v.status = SosStatus::Indeterminate;
    v.message = e.what();
    return v;
  }
  SdpSolution sol = solve_sdp(prob, opts);
  v.basis = basis;
  switch (sol.status) {
    case SdpStatus::Feasible: {
      SosCertificate cert;
      cert.basis = basis;
      cert.gram_float = SymMatrix::from_eigen(sol.primal[0]);
      if (!verify_certificate_float(p, cert, 1e-6)) {
        v.status = SosStatus::Indeterminate;
        v.message = "solver claimed feasible but certificate failed verification";
        return v;
      }
      v.status = SosStatus::Sos;
      v.certificate = std::move(cert);
      return v;
    }
    case SdpStatus::Infeasible:
      v.status = SosStatus::NotSos;
      v.dual_ray = sol.dual;
      v.ray_support = sos_constraint_support(p, basis);
      return v;
    case SdpStatus::Indeterminate:
      v.status = SosStatus::Indeterminate;
      v.message = sol.message;
      return v;
  }
  return v;
}

// Squares q_i with sum q_i^2 = z' Q z, from the eigendecomposition of a
// floating Gram certificate.
inline std::vector<Polynomial> extract_decomposition(const SosCertificate& cert,
                                                     size_t nvars,
                                                     double tol = 1e-7) {
  if (!cert.gram_float)
    throw std::invalid_argument("extract_decomposition: float certificate required");
  Eigen::MatrixXd q = cert.gram_float->to_eigen();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q);
  double lmax = std::max(1e-300, es.eigenvalues().cwiseAbs().maxCoeff());
  if (es.eigenvalues()(0) < -tol * lmax)
    throw std::invalid_argument("extract_decomposition: Gram matrix is indefinite");
  std::vector<Polynomial> out;
  for (int k = 0; k < es.eigenvalues().size(); ++k) {
    double lam = es.eigenvalues()(k);
    if (lam <= 1e-9 * lmax) continue;  // numerical-noise modes
    double s = std::sqrt(lam);
    Polynomial qi(nvars);
    for (size_t j = 0; j < cert.basis.size(); ++j) {
      double coef = s * es.eigenvectors()(j, k);
      if (coef != 0)
        qi.add_term(cert.basis.monomials[j], rat_from_double(coef));
    }
    if (!qi.is_zero()) out.push_back(std::move(qi));
  }
  return out;
}

// Upgrades a floating certificate for p to an exact rational one: round the
// Gram entries with bounded denominator, reproject exactly onto the affine
// coefficient constraints, then decide PSD in exact arithmetic. Failure
// proves nothing, so the fallback is Indeterminate, never NotSos.
inline SosVerdict rationalize_certificate(const Polynomial& p,
                                          const SosCertificate& cert,
                                          const Int& denominator_bound) {
  SosVerdict v;
  v.basis = cert.basis;
  if (!cert.gram_float) {
    v.message = "rationalize: float certificate required";
    return v;
  }
  const size_t m = cert.basis.size();
  RatMatrix q(m, m);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i; j < m; ++j) {
      Rat r = rat_round((*cert.gram_float)(i, j), denominator_bound);
      q(i, j) = q(j, i) = r;
    }
  // Support classes: cells (i <= j) contributing to each monomial.
  std::map<Monomial, std::vector<std::pair<size_t, size_t>>, GrlexLess> classes;
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i; j < m; ++j)
      classes[cert.basis.monomials[i] * cert.basis.monomials[j]].emplace_back(i, j);
  for (const auto& [mono, c] : p.terms())
    if (!classes.count(mono)) {
      v.message = "rationalize: basis cannot cover p";
      return v;
    }
  // Exact orthogonal projection onto the affine set {z'Qz = p}: the
  // constraint functionals have disjoint supports, one correction per class.
  for (const auto& [mono, cells] : classes) {
    Rat current(0);
    long cnt = 0;
    for (auto& [i, j] : cells) {
      if (i == j) { current += q(i, i); cnt += 1; }
      else { current += 2 * q(i, j); cnt += 2; }
    }
    Rat delta = p.coeff(mono) - current;
    if (delta == 0) continue;
    Rat step = delta / cnt;
    for (auto& [i, j] : cells) {
      q(i, j) += step;
      if (i != j) q(j, i) += step;
    }
  }
  if (gram_to_polynomial(cert.basis, q, p.nvars()) != p) {
    v.message = "rationalize: projection failed to reproduce p";
    return v;
  }
  if (psd_check_exact(q).verdict == PsdVerdict::NotPSD) {
    v.status = SosStatus::Indeterminate;
    v.message = "rationalize: rounded Gram matrix is not PSD";
    return v;
  }
  SosCertificate out;
  out.basis = cert.basis;
  out.gram_rational = std::move(q);
  v.status = SosStatus::Sos;
  v.certificate = std::move(out);
  return v;
}

// Denominator bound sweep 100, 200, 400, ... up to 1e12.
inline SosVerdict rationalize_auto(const Polynomial& p, const SosCertificate& cert) {
  Int bound(100);
  const Int cap("1000000000000");
  SosVerdict last;
  while (bound <= cap) {
    last = rationalize_certificate(p, cert, bound);
    if (last.status == SosStatus::Sos) return last;
    bound *= 2;
  }
  last.status = SosStatus::Indeterminate;
  return last;
}

// Exact rank-one certificate for a perfect square g^2.
inline SosCertificate square_certificate(const Polynomial& g) {
  SosCertificate cert;
  std::vector<Rat> coeffs;
  for (const auto& [m, c] : g.terms()) {
    cert.basis.monomials.push_back(m);
    coeffs.push_back(c);
  }
  RatMatrix q(coeffs.size(), coeffs.size());
  for (size_t i = 0; i < coeffs.size(); ++i)
    for (size_t j = 0; j < coeffs.size(); ++j) q(i, j) = coeffs[i] * coeffs[j];
  cert.gram_rational = std::move(q);
  return cert;
}

}  // namespace soslyap

#endif
