#ifndef SOSLYAP_LYAPUNOV_HPP
#define SOSLYAP_LYAPUNOV_HPP

#include <optional>
#include <string>
#include <vector>

#include "soslyap/sos.hpp"
#include "soslyap/univariate.hpp"
#include "soslyap/vector_field.hpp"

namespace soslyap {

// Search instance for a sum-of-squares Lyapunov function of fixed degree:
//   V - eps * sum x_i^deg        sos
//   -Vdot - eps' * sum x_i^k     sos
// with V parameterized through its Gram matrix. eps = eps' = 0 reproduces
// the plain "V sos, -Vdot sos" pair.
struct LyapunovProblem {
  VectorField field;
  int degree = 2;
  bool homogeneous = false;
  Rat eps = make_rat(1, 10000);
  Rat eps_deriv = make_rat(1, 10000);
};

struct LyapunovResult {
  enum class Status { Found, CertifiedInfeasible, Indeterminate };
  Status status = Status::Indeterminate;

  Polynomial v;               // the Lyapunov function (exact from solver floats)
  SosCertificate cert_v;      // Gram witness for V - margin_v
  SosCertificate cert_vdot;   // Gram witness for -Vdot - margin_vdot
  Polynomial margin_v, margin_vdot;

  std::vector<double> dual_ray;  // verified Farkas ray when CertifiedInfeasible
  int iterations = 0;
  double primal_residual = 0, gap = 0;
  std::string message;
};

inline const char* to_string(LyapunovResult::Status s) {
  switch (s) {
    case LyapunovResult::Status::Found: return "found";
    case LyapunovResult::Status::CertifiedInfeasible: return "certified-infeasible";
    case LyapunovResult::Status::Indeterminate: return "indeterminate";
  }
  return "?";
}

// Compiled joint SDP plus everything needed to reconstruct V and to verify
// dual rays independently.
struct LyapunovSdp {
  SdpProblem problem;
  GramBasis basis_v;   // z: V - margin = z' Qv z
  GramBasis basis_d;   // w: -Vdot - margin' = w' Qd w
  Polynomial margin_v, margin_vdot;  // eps * G and eps' * H, exact
  std::vector<std::optional<Monomial>> row_labels;  // nullopt = trace row
};

inline LyapunovSdp compile_lyapunov_sdp(const LyapunovProblem& lp) {
  const VectorField& f = lp.field;
  const size_t n = f.nvars;
  if (lp.degree < 2 || lp.degree % 2 != 0)
    throw std::invalid_argument("Lyapunov degree must be even and >= 2");
  if (!f.vanishes_at_origin())
    throw std::invalid_argument("vector field must vanish at the origin");
  if (lp.homogeneous && !f.is_homogeneous())
    throw std::invalid_argument("homogeneous search requires a homogeneous field");
  if (lp.eps < 0 || lp.eps_deriv < 0)
    throw std::invalid_argument("margins must be nonnegative");

  LyapunovSdp out;
  const uint32_t d = static_cast<uint32_t>(lp.degree);
  out.basis_v.monomials = lp.homogeneous
                              ? monomials_of_degree(n, d / 2)
                              : monomials_up_to(n, 1, d / 2);
  const auto& z = out.basis_v.monomials;
  const size_t mz = z.size();

  // Margin direction on V: eps * sum x_i^d.
  Polynomial g(n);
  for (size_t i = 0; i < n; ++i) {
    Monomial m(n);
    m.exps[i] = d;
    g.add_term(m, Rat(1));
  }
  out.margin_v = lp.eps * g;

  // Lie derivatives of all Gram products; their support drives everything.
  std::vector<std::vector<Polynomial>> lie(mz);
  int dmax = -1;
  for (size_t a = 0; a < mz; ++a) {
    lie[a].resize(mz);
    for (size_t b = a; b < mz; ++b) {
      lie[a][b] = lie_derivative(Polynomial::monomial(z[a] * z[b]), f);
      dmax = std::max(dmax, lie[a][b].degree());
    }
  }
  Polynomial lie_margin = lie_derivative(out.margin_v, f);
  dmax = std::max(dmax, lie_margin.degree());
  if (dmax < 0) dmax = 0;

  // Margin direction on -Vdot, even degree by construction.
  uint32_t dh = static_cast<uint32_t>(dmax) / 2 * 2;
  Polynomial h(n);
  if (dh >= 2) {
    for (size_t i = 0; i < n; ++i) {
      Monomial m(n);
      m.exps[i] = dh;
      h.add_term(m, Rat(1));
    }
  }
  if (lp.eps_deriv > 0 && lp.homogeneous && static_cast<int>(dh) != dmax)
    throw std::invalid_argument(
        "derivative margin impossible: Vdot has odd homogeneous degree");
  out.margin_vdot = lp.eps_deriv * h;

  out.basis_d.monomials = lp.homogeneous
                              ? monomials_of_degree(n, static_cast<uint32_t>(dmax) / 2)
                              : monomials_up_to(n, 1, static_cast<uint32_t>(dmax) / 2);
  const auto& w = out.basis_d.monomials;
  const size_t mw = w.size();

  // Rows: one per monomial nu in the union support, tying
  //   [w'Qd w]_nu + [<grad(z'Qv z), f>]_nu = -[eps*lie(G) + eps'*H]_nu.
  Polynomial rhs_poly = -(lie_margin + out.margin_vdot);
  std::map<Monomial, SdpConstraint, GrlexLess> rows;
  auto row_for = [&](const Monomial& nu) -> SdpConstraint& {
    auto it = rows.find(nu);
    if (it == rows.end()) {
      SdpConstraint c;
      c.blocks.resize(2);
      c.rhs = rat_to_double(rhs_poly.coeff(nu));
      it = rows.emplace(nu, std::move(c)).first;
    }
    return it->second;
  };
  for (size_t i = 0; i < mw; ++i)
    for (size_t j = i; j < mw; ++j)
      row_for(w[i] * w[j]).blocks[1].add(static_cast<int>(i), static_cast<int>(j), 1.0);
  for (size_t a = 0; a < mz; ++a)
    for (size_t b = a; b < mz; ++b)
      for (const auto& [nu, c] : lie[a][b].terms())
        row_for(nu).blocks[0].add(static_cast<int>(a), static_cast<int>(b),
                                  rat_to_double(c));
  for (const auto& [nu, c] : rhs_poly.terms()) row_for(nu);

  out.problem.block_dims = {static_cast<int>(mz), static_cast<int>(mw)};
  for (auto& [nu, con] : rows) {
    out.problem.constraints.push_back(std::move(con));
    out.row_labels.push_back(nu);
  }
  // Normalization tr(Qv) = 1: rules out V = 0 and fixes the scale the
  // margins are relative to.
  SdpConstraint trace;
  trace.blocks.resize(2);
  for (size_t a = 0; a < mz; ++a)
    trace.blocks[0].add(static_cast<int>(a), static_cast<int>(a), 1.0);
  trace.rhs = 1.0;
  out.problem.constraints.push_back(std::move(trace));
  out.row_labels.push_back(std::nullopt);
  return out;
}

inline LyapunovResult search_sos_lyapunov(const LyapunovProblem& lp,
                                          const SdpOptions& opts = {}) {
  LyapunovResult res;
  LyapunovSdp sdp = compile_lyapunov_sdp(lp);
  SdpSolution sol = solve_sdp(sdp.problem, opts);
  res.iterations = sol.iterations;
  res.primal_residual = sol.primal_residual;
  res.gap = sol.gap;
  switch (sol.status) {
    case SdpStatus::Feasible: {
      res.cert_v.basis = sdp.basis_v;
      res.cert_v.gram_float = SymMatrix::from_eigen(sol.primal[0]);
      res.cert_vdot.basis = sdp.basis_d;
      res.cert_vdot.gram_float = SymMatrix::from_eigen(sol.primal[1]);
      res.margin_v = sdp.margin_v;
      res.margin_vdot = sdp.margin_vdot;
      res.v = gram_to_polynomial(sdp.basis_v, *res.cert_v.gram_float, lp.field.nvars) +
              sdp.margin_v;
      // Re-verify both certificates before claiming Found. cert_v is exact
      // by construction; cert_vdot must reproduce -Vdot - margin'.
      Polynomial target = -lie_derivative(res.v, lp.field) - sdp.margin_vdot;
      double qv_scale = 1 + res.cert_v.gram_float->to_eigen().cwiseAbs().maxCoeff();
      if (!verify_certificate_float(target, res.cert_vdot, 1e-6) ||
          eig_min(*res.cert_v.gram_float) < -1e-6 * qv_scale) {
        res.status = LyapunovResult::Status::Indeterminate;
        res.message = "feasible SDP point failed certificate verification";
        return res;
      }
      res.status = LyapunovResult::Status::Found;
      return res;
    }
    case SdpStatus::Infeasible: {
      if (verify_dual_ray(sdp.problem, sol.dual, opts)) {
        res.status = LyapunovResult::Status::CertifiedInfeasible;
        res.dual_ray = sol.dual;
      } else {
        res.status = LyapunovResult::Status::Indeterminate;
        res.message = "infeasibility ray failed verification";
      }
      return res;
    }
    case SdpStatus::Indeterminate:
      res.status = LyapunovResult::Status::Indeterminate;
      res.message = sol.message;
      return res;
  }
  return res;
}

struct SweepEntry {
  int degree;
  LyapunovResult result;
};

inline std::vector<SweepEntry> degree_sweep(const VectorField& field,
                                            const std::vector<int>& degrees,
                                            bool homogeneous,
                                            const Rat& eps, const Rat& eps_deriv,
                                            bool early_stop = false,
                                            const SdpOptions& opts = {}) {
  int prev = 0;
  for (int d : degrees) {
    if (d <= prev || d % 2 != 0)
      throw std::invalid_argument("degree sweep must be even and ascending");
    prev = d;
  }
  std::vector<SweepEntry> out;
  for (int d : degrees) {
    LyapunovProblem lp{field, d, homogeneous, eps, eps_deriv};
    out.push_back({d, search_sos_lyapunov(lp, opts)});
    if (early_stop && out.back().result.status == LyapunovResult::Status::Found)
      break;
  }
  return out;
}

// W = V^2; -Wdot = -2 V Vdot inherits positive definiteness, though it may
// not be sos.
inline Polynomial square_lyapunov(const Polynomial& v) { return v * v; }

// Corollary test: exponential stability of the origin reduces to the
// linearization being Hurwitz, decided exactly.
inline bool local_exp_stability(const VectorField& f) {
  if (!f.vanishes_at_origin())
    throw std::invalid_argument("local_exp_stability: f(0) != 0");
  auto lin = f.linearization();
  RatMatrix a(f.nvars, f.nvars);
  for (size_t i = 0; i < f.nvars; ++i)
    for (size_t j = 0; j < f.nvars; ++j) a(i, j) = lin[i][j];
  return hurwitz_test(a);
}

// --- constructive converse power search --------------------------------

struct PowerSearchResult {
  enum class Status { FoundPower, NotFoundUpTo, PreconditionFailed };
  Status status = Status::NotFoundUpTo;
  int k = -1;
  Polynomial w;               // V^(2k+2), or (V+1)^(2k+2) in planar mode
  SosCertificate cert_w;      // exact rank-one certificate (perfect square)
  SosCertificate cert_neg_wdot;
  std::vector<SosStatus> per_k;  // verdict of the product test for each k
  std::string message;
};

inline SymMatrix scaled(const SymMatrix& m, double s) {
  SymMatrix out(m.dim());
  for (size_t i = 0; i < m.dim(); ++i)
    for (size_t j = 0; j <= i; ++j) out.set(i, j, s * m(i, j));
  return out;
}

// Smallest k <= k_max with (-2 V Vdot) V^2k sos (homogeneous mode) or, for
// planar systems, the same product built from V+1. A success yields
// W = V^(2k+2) with -Wdot = (k+1) (-2 V Vdot) V^2k certified sos.
inline PowerSearchResult converse_power_search(const Polynomial& v,
                                               const VectorField& field,
                                               int k_max, bool planar,
                                               const SdpOptions& opts = {}) {
  PowerSearchResult res;
  if (v.nvars() != field.nvars) {
    res.status = PowerSearchResult::Status::PreconditionFailed;
    res.message = "dimension mismatch";
    return res;
  }
  Polynomial base = v;
  if (planar) {
    if (v.nvars() != 2) {
      res.status = PowerSearchResult::Status::PreconditionFailed;
      res.message = "planar mode requires 2 variables";
      return res;
    }
    // Highest-degree homogeneous component of V must have no zeros.
    Polynomial top(2);
    for (const auto& [m, c] : v.terms())
      if (static_cast<int>(m.degree()) == v.degree()) top.add_term(m, c);
    if (!bivariate_form_positive_definite(top)) {
      res.status = PowerSearchResult::Status::PreconditionFailed;
      res.message = "highest-degree component of V has zeros";
      return res;
    }
    base = v + Polynomial::constant(2, Rat(1));
  } else {
    if (!v.is_homogeneous() || !field.is_homogeneous()) {
      res.status = PowerSearchResult::Status::PreconditionFailed;
      res.message = "homogeneous mode requires homogeneous V and field";
      return res;
    }
    // Positive definiteness proxy: V - delta * |x|^deg sos.
    Polynomial sq(v.nvars());
    for (size_t i = 0; i < v.nvars(); ++i) {
      Monomial m(v.nvars());
      m.exps[i] = 2;
      sq.add_term(m, Rat(1));
    }
    Rat delta = make_rat(1, 1000000) * v.max_abs_coeff();
    Polynomial proxy = v - delta * sq.pow(static_cast<unsigned>(v.degree() / 2));
    if (check_sos(proxy, std::nullopt, opts).status != SosStatus::Sos) {
      res.status = PowerSearchResult::Status::PreconditionFailed;
      res.message = "could not certify V positive definite";
      return res;
    }
  }

  Polynomial vdot = lie_derivative(v, field);
  Polynomial base_sq = base * base;
  Polynomial q = Rat(-2) * base * vdot;
  for (int k = 0; k <= k_max; ++k) {
    if (k > 0) q = q * base_sq;
    SosVerdict verdict = check_sos(q, std::nullopt, opts);
    res.per_k.push_back(verdict.status);
    if (verdict.status == SosStatus::Sos) {
      res.status = PowerSearchResult::Status::FoundPower;
      res.k = k;
      res.w = base.pow(static_cast<unsigned>(2 * k + 2));
      res.cert_w = square_certificate(base.pow(static_cast<unsigned>(k + 1)));
      res.cert_neg_wdot = *verdict.certificate;
      if (res.cert_neg_wdot.gram_float)
        res.cert_neg_wdot.gram_float =
            scaled(*res.cert_neg_wdot.gram_float, static_cast<double>(k + 1));
      return res;
    }
  }
  res.status = PowerSearchResult::Status::NotFoundUpTo;
  res.k = k_max;
  return res;
}

// --- quadratic-Lyapunov gadget check ------------------------------------

struct GradientQuadraticResult {
  enum class Status { Valid, Invalid, Indeterminate };
  Status status = Status::Indeterminate;
  std::optional<std::vector<Rat>> witness;  // nonzero point with V <= 0
  std::string message;
};

// For a quartic form V and the field -grad V, W = |x|^2 satisfies the exact
// identity Wdot = -8V; W is then a valid Lyapunov function iff V is positive
// definite. Bivariate V is decided exactly, higher dimensions through
// check_sos with a margin (Indeterminate allowed), with a boolean-point scan
// supplying exact witnesses for the reduction instances.
inline GradientQuadraticResult gradient_quadratic_check(const Polynomial& v,
                                                        const SdpOptions& opts = {}) {
  if (!v.is_homogeneous() || v.degree() != 4)
    throw std::invalid_argument("gradient_quadratic_check: quartic form required");
  const size_t n = v.nvars();
  VectorField f = negative_gradient_field(v);
  Polynomial wq(n);
  for (size_t i = 0; i < n; ++i) {
    Monomial m(n);
    m.exps[i] = 2;
    wq.add_term(m, Rat(1));
  }
  if (lie_derivative(wq, f) != Rat(-8) * v)
    throw std::logic_error("Euler identity Wdot = -8V failed");

  GradientQuadraticResult res;
  if (n == 2) {
    if (bivariate_form_positive_definite(v)) {
      res.status = GradientQuadraticResult::Status::Valid;
      return res;
    }
    res.status = GradientQuadraticResult::Status::Invalid;
    if (auto neg = bivariate_form_negative_point(v)) res.witness = neg;
    else if (auto zero = bivariate_form_rational_zero(v)) res.witness = zero;
    else res.message = "V has a real zero with no small rational representative";
    return res;
  }
  // Boolean-point scan (covers the SAT-reduction instances exactly).
  if (n <= 20) {
    std::vector<Rat> pt(n, Rat(0));
    for (uint64_t mask = 1; mask < (uint64_t{1} << n); ++mask) {
      for (size_t i = 0; i < n; ++i) pt[i] = (mask >> i) & 1 ? Rat(1) : Rat(0);
      if (v.evaluate(pt) <= 0) {
        res.status = GradientQuadraticResult::Status::Invalid;
        res.witness = pt;
        return res;
      }
    }
  }
  Rat delta = make_rat(1, 1000000) * v.max_abs_coeff();
  Polynomial proxy = v - delta * wq.pow(2);
  auto verdict = check_sos(proxy, std::nullopt, opts);
  if (verdict.status == SosStatus::Sos) {
    res.status = GradientQuadraticResult::Status::Valid;
    return res;
  }
  res.status = GradientQuadraticResult::Status::Indeterminate;
  res.message = "positive definiteness not certified at the chosen margin";
  return res;
}

}  // namespace soslyap

#endif
