#ifndef SOSLYAP_SDP_HPP
#define SOSLYAP_SDP_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "soslyap/symmatrix.hpp"

namespace soslyap {

// Sparse symmetric coefficient matrix for one PSD block: entries (i, j, v)
// with i <= j stand for A_ij = A_ji = v.
struct SparseSym {
  std::vector<std::tuple<int, int, double>> entries;

  void add(int i, int j, double v) {
    if (i > j) std::swap(i, j);
    entries.emplace_back(i, j, v);
  }

  bool empty() const { return entries.empty(); }

  double inner(const Eigen::MatrixXd& x) const {
    double acc = 0;
    for (auto& [i, j, v] : entries) acc += (i == j) ? v * x(i, i) : 2 * v * x(i, j);
    return acc;
  }

  void add_scaled_to(Eigen::MatrixXd& m, double s) const {
    for (auto& [i, j, v] : entries) {
      m(i, j) += s * v;
      if (i != j) m(j, i) += s * v;
    }
  }

  Eigen::MatrixXd dense(int dim) const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    add_scaled_to(m, 1.0);
    return m;
  }

  double max_abs() const {
    double m = 0;
    for (auto& [i, j, v] : entries) m = std::max(m, std::abs(v));
    return m;
  }
};

// One affine constraint sum_b <A^b, X_b> = rhs over all blocks.
struct SdpConstraint {
  std::vector<SparseSym> blocks;
  double rhs = 0;
};

// Affine-constrained PSD feasibility / optimization instance in standard
// primal form: min <C, X> s.t. <A_i, X> = b_i, X block-diagonal PSD.
struct SdpProblem {
  std::vector<int> block_dims;
  std::vector<SdpConstraint> constraints;
  std::optional<std::vector<SparseSym>> objective;  // absent: feasibility

  size_t nblocks() const { return block_dims.size(); }

  void validate() const {
    if (block_dims.empty()) throw std::invalid_argument("SDP with no blocks");
    for (int d : block_dims)
      if (d < 1) throw std::invalid_argument("SDP block of nonpositive dim");
    if (constraints.empty())
      throw std::invalid_argument("SDP with no constraints");
    for (const auto& c : constraints) {
      if (c.blocks.size() != block_dims.size())
        throw std::invalid_argument("constraint does not match block structure");
      for (size_t b = 0; b < c.blocks.size(); ++b)
        for (auto& [i, j, v] : c.blocks[b].entries)
          if (i < 0 || j >= block_dims[b])
            throw std::invalid_argument("constraint entry out of block range");
    }
  }
};

struct SdpOptions {
  double feas_tol = 1e-8;
  double gap_tol = 1e-9;
  int max_iters = 200;
  // Required relative margin on b'y < 0 before an infeasibility claim.
  double ray_margin = 1e-6;
  bool verbose = false;
};

enum class SdpStatus { Feasible, Infeasible, Indeterminate };

inline const char* to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::Feasible: return "feasible";
    case SdpStatus::Infeasible: return "infeasible";
    case SdpStatus::Indeterminate: return "indeterminate";
  }
  return "?";
}

struct SdpSolution {
  SdpStatus status = SdpStatus::Indeterminate;
  std::vector<Eigen::MatrixXd> primal;       // X blocks
  std::vector<double> dual;                  // y; the Farkas ray when Infeasible
  std::vector<Eigen::MatrixXd> dual_matrix;  // S blocks
  double primal_residual = 0, dual_residual = 0, gap = 0;
  double objective_value = 0;
  double min_primal_eig = 0;
  int iterations = 0;
  std::string message;
};

namespace detail {

// Iterates of the interior-point method on the standard-form problem.
struct IpmState {
  std::vector<Eigen::MatrixXd> x, s;
  Eigen::VectorXd y;
};

struct IpmResult {
  IpmState state;
  bool converged = false;
  int iterations = 0;
  double rp = 0, rd = 0, mu = 0;
  std::string message;
};

inline double block_inner(const std::vector<Eigen::MatrixXd>& a,
                          const std::vector<Eigen::MatrixXd>& b) {
  double acc = 0;
  for (size_t i = 0; i < a.size(); ++i)
    acc += (a[i].array() * b[i].array()).sum();
  return acc;
}

// Symmetric square root and inverse square root via eigendecomposition,
// with a floor to keep near-singular blocks factorable.
inline void sym_sqrt(const Eigen::MatrixXd& m, Eigen::MatrixXd& half,
                     Eigen::MatrixXd& inv_half) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  Eigen::VectorXd d = es.eigenvalues();
  const double floor = std::max(1e-30, 1e-14 * std::abs(d(d.size() - 1)));
  Eigen::VectorXd rt(d.size()), irt(d.size());
  for (int i = 0; i < d.size(); ++i) {
    double v = std::max(d(i), floor);
    rt(i) = std::sqrt(v);
    irt(i) = 1.0 / rt(i);
  }
  half = es.eigenvectors() * rt.asDiagonal() * es.eigenvectors().transpose();
  inv_half = es.eigenvectors() * irt.asDiagonal() * es.eigenvectors().transpose();
}

// Largest alpha <= cap with m + alpha*dm staying PSD (boundary backed off by
// the caller's step fraction).
inline double max_step(const Eigen::MatrixXd& m, const Eigen::MatrixXd& dm) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) return 0.0;
  Eigen::MatrixXd l = llt.matrixL();
  Eigen::MatrixXd w = l.triangularView<Eigen::Lower>().solve(dm);
  Eigen::MatrixXd g =
      l.triangularView<Eigen::Lower>().solve(w.transpose()).transpose();
  // g = L^-1 dm L^-T
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (g + g.transpose()),
                                                    Eigen::EigenvaluesOnly);
  double lmin = es.eigenvalues()(0);
  if (lmin >= 0) return std::numeric_limits<double>::infinity();
  return -1.0 / lmin;
}

// Primal-dual Mehrotra predictor-corrector with Nesterov-Todd scaling,
// infeasible start. Small dense blocks only.
inline IpmResult ipm_solve(const SdpProblem& prob,
                           const std::vector<SparseSym>& cobj,
                           const SdpOptions& opts) {
  const size_t nb = prob.nblocks();
  const size_t p = prob.constraints.size();
  const int ntot = [&] {
    int t = 0;
    for (int d : prob.block_dims) t += d;
    return t;
  }();

  double data_scale = 1.0;
  for (const auto& c : prob.constraints) {
    data_scale = std::max(data_scale, std::abs(c.rhs));
    for (const auto& blk : c.blocks) data_scale = std::max(data_scale, blk.max_abs());
  }
  for (const auto& blk : cobj) data_scale = std::max(data_scale, blk.max_abs());

  IpmResult res;
  auto& st = res.state;
  const double rho = 10.0 * std::sqrt(data_scale);
  for (size_t b = 0; b < nb; ++b) {
    st.x.push_back(rho * Eigen::MatrixXd::Identity(prob.block_dims[b], prob.block_dims[b]));
    st.s.push_back(rho * Eigen::MatrixXd::Identity(prob.block_dims[b], prob.block_dims[b]));
  }
  st.y = Eigen::VectorXd::Zero(p);

  Eigen::VectorXd bvec(p);
  for (size_t i = 0; i < p; ++i) bvec(i) = prob.constraints[i].rhs;
  const double bnorm = p ? bvec.lpNorm<Eigen::Infinity>() : 0.0;

  auto apply_a = [&](const std::vector<Eigen::MatrixXd>& x) {
    Eigen::VectorXd out(p);
    for (size_t i = 0; i < p; ++i) {
      double acc = 0;
      for (size_t b = 0; b < nb; ++b) acc += prob.constraints[i].blocks[b].inner(x[b]);
      out(i) = acc;
    }
    return out;
  };
  auto apply_at = [&](const Eigen::VectorXd& y) {
    std::vector<Eigen::MatrixXd> out;
    for (size_t b = 0; b < nb; ++b)
      out.push_back(Eigen::MatrixXd::Zero(prob.block_dims[b], prob.block_dims[b]));
    for (size_t i = 0; i < p; ++i)
      if (y(i) != 0)
        for (size_t b = 0; b < nb; ++b)
          prob.constraints[i].blocks[b].add_scaled_to(out[b], y(i));
    return out;
  };

  std::vector<Eigen::MatrixXd> cmat;
  for (size_t b = 0; b < nb; ++b)
    cmat.push_back(cobj.empty()
                       ? Eigen::MatrixXd::Zero(prob.block_dims[b], prob.block_dims[b])
                       : cobj[b].dense(prob.block_dims[b]));
  double cnorm = 0;
  for (auto& m : cmat) cnorm = std::max(cnorm, m.cwiseAbs().maxCoeff());

  std::vector<Eigen::MatrixXd> w(nb);
  Eigen::MatrixXd schur(p, p);

  double prev_mu = std::numeric_limits<double>::infinity();
  int stall = 0;

  for (int iter = 0; iter < opts.max_iters; ++iter) {
    res.iterations = iter;
    Eigen::VectorXd rp = bvec - apply_a(st.x);
    auto aty = apply_at(st.y);
    std::vector<Eigen::MatrixXd> rd(nb);
    for (size_t b = 0; b < nb; ++b) rd[b] = cmat[b] - st.s[b] - aty[b];

    double mu = block_inner(st.x, st.s) / ntot;
    double rp_rel = rp.lpNorm<Eigen::Infinity>() / (1 + bnorm);
    double rd_rel = 0;
    for (auto& m : rd) rd_rel = std::max(rd_rel, m.cwiseAbs().maxCoeff());
    rd_rel /= (1 + cnorm);
    res.rp = rp_rel;
    res.rd = rd_rel;
    res.mu = mu;

    double pobj = 0;
    for (size_t b = 0; b < nb; ++b)
      pobj += (cmat[b].array() * st.x[b].array()).sum();
    double dobj = bvec.dot(st.y);
    double gap_rel = std::abs(pobj - dobj) / (1 + std::abs(pobj) + std::abs(dobj));

    if (opts.verbose)
      std::fprintf(stderr, "it %3d  mu %9.2e  rp %9.2e  rd %9.2e  gap %9.2e\n",
                   iter, mu, rp_rel, rd_rel, gap_rel);

    if (rp_rel <= opts.feas_tol && rd_rel <= opts.feas_tol &&
        (gap_rel <= opts.gap_tol * 10 ||
         mu <= opts.gap_tol * (1 + std::abs(pobj) + std::abs(dobj)))) {
      res.converged = true;
      return res;
    }
    if (mu > prev_mu * 0.9999 && rp_rel <= opts.feas_tol * 1e3) ++stall;
    else stall = 0;
    if (stall > 15) {
      res.message = "stalled";
      return res;
    }
    prev_mu = std::min(prev_mu, mu);

    // NT scaling W per block, via W = S^-1/2 (S^1/2 X S^1/2)^1/2 S^-1/2.
    for (size_t b = 0; b < nb; ++b) {
      Eigen::MatrixXd sh, sih;
      sym_sqrt(st.s[b], sh, sih);
      Eigen::MatrixXd t = sh * st.x[b] * sh;
      Eigen::MatrixXd th, tih;
      sym_sqrt(0.5 * (t + t.transpose()), th, tih);
      w[b] = sih * th * sih;
      w[b] = 0.5 * (w[b] + w[b].transpose());
    }

    // Schur complement M_ij = <A_i, W A_j W>.
    std::vector<std::vector<Eigen::MatrixXd>> waw(p);
    for (size_t j = 0; j < p; ++j) {
      waw[j].resize(nb);
      for (size_t b = 0; b < nb; ++b) {
        if (prob.constraints[j].blocks[b].empty()) continue;
        Eigen::MatrixXd aj = prob.constraints[j].blocks[b].dense(prob.block_dims[b]);
        waw[j][b] = w[b] * aj * w[b];
      }
    }
    for (size_t i = 0; i < p; ++i)
      for (size_t j = i; j < p; ++j) {
        double acc = 0;
        for (size_t b = 0; b < nb; ++b) {
          if (prob.constraints[i].blocks[b].empty() || waw[j][b].size() == 0)
            continue;
          acc += prob.constraints[i].blocks[b].inner(waw[j][b]);
        }
        schur(i, j) = schur(j, i) = acc;
      }
    Eigen::LLT<Eigen::MatrixXd> llt(schur);
    Eigen::LDLT<Eigen::MatrixXd> ldlt;
    bool use_ldlt = false;
    if (llt.info() != Eigen::Success) {
      Eigen::MatrixXd reg = schur;
      reg.diagonal().array() += 1e-12 * (1 + schur.diagonal().maxCoeff());
      ldlt.compute(reg);
      use_ldlt = true;
      if (ldlt.info() != Eigen::Success) {
        res.message = "numerically singular KKT system";
        return res;
      }
    }
    auto solve_schur = [&](const Eigen::VectorXd& r) {
      return use_ldlt ? ldlt.solve(r).eval() : llt.solve(r).eval();
    };

    auto direction = [&](const std::vector<Eigen::MatrixXd>& rc)
        -> std::tuple<std::vector<Eigen::MatrixXd>, Eigen::VectorXd,
                      std::vector<Eigen::MatrixXd>> {
      // dX = Rc - W Rd W + W A*(dy) W ; A(dX) = rp.
      std::vector<Eigen::MatrixXd> base(nb);
      for (size_t b = 0; b < nb; ++b) base[b] = rc[b] - w[b] * rd[b] * w[b];
      Eigen::VectorXd rhs = rp;
      for (size_t i = 0; i < p; ++i) {
        double acc = 0;
        for (size_t b = 0; b < nb; ++b) {
          if (prob.constraints[i].blocks[b].empty()) continue;
          acc += prob.constraints[i].blocks[b].inner(base[b]);
        }
        rhs(i) -= acc;
      }
      Eigen::VectorXd dy = solve_schur(rhs);
      auto atdy = apply_at(dy);
      std::vector<Eigen::MatrixXd> ds(nb), dx(nb);
      for (size_t b = 0; b < nb; ++b) {
        ds[b] = rd[b] - atdy[b];
        dx[b] = rc[b] - w[b] * ds[b] * w[b];
        dx[b] = 0.5 * (dx[b] + dx[b].transpose()).eval();
      }
      return {dx, dy, ds};
    };

    // Predictor.
    std::vector<Eigen::MatrixXd> rc(nb);
    for (size_t b = 0; b < nb; ++b) rc[b] = -st.x[b];
    auto [dxa, dya, dsa] = direction(rc);
    double ap = 1, ad = 1;
    for (size_t b = 0; b < nb; ++b) {
      ap = std::min(ap, max_step(st.x[b], dxa[b]));
      ad = std::min(ad, max_step(st.s[b], dsa[b]));
    }
    ap = std::min(1.0, 0.98 * ap);
    ad = std::min(1.0, 0.98 * ad);

    std::vector<Eigen::MatrixXd> xa(nb), sa(nb);
    for (size_t b = 0; b < nb; ++b) {
      xa[b] = st.x[b] + ap * dxa[b];
      sa[b] = st.s[b] + ad * dsa[b];
    }
    double mu_aff = block_inner(xa, sa) / ntot;
    double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 1e-10, 0.99);

    // Corrector: Rc = sigma*mu*S^-1 - X - sym(dXa dSa S^-1).
    for (size_t b = 0; b < nb; ++b) {
      Eigen::LLT<Eigen::MatrixXd> slt(st.s[b]);
      Eigen::MatrixXd sinv =
          slt.solve(Eigen::MatrixXd::Identity(st.s[b].rows(), st.s[b].cols()));
      Eigen::MatrixXd corr = dxa[b] * dsa[b] * sinv;
      rc[b] = sigma * mu * sinv - st.x[b] - 0.5 * (corr + corr.transpose());
    }
    auto [dx, dy, ds] = direction(rc);
    ap = 1;
    ad = 1;
    for (size_t b = 0; b < nb; ++b) {
      ap = std::min(ap, max_step(st.x[b], dx[b]));
      ad = std::min(ad, max_step(st.s[b], ds[b]));
    }
    ap = std::min(1.0, 0.98 * ap);
    ad = std::min(1.0, 0.98 * ad);
    if (ap < 1e-8 && ad < 1e-8) {
      res.message = "step length collapsed";
      return res;
    }

    for (size_t b = 0; b < nb; ++b) {
      st.x[b] += ap * dx[b];
      st.s[b] += ad * ds[b];
      st.x[b] = 0.5 * (st.x[b] + st.x[b].transpose()).eval();
      st.s[b] = 0.5 * (st.s[b] + st.s[b].transpose()).eval();
    }
    st.y += ad * dy;
  }
  res.message = "iteration limit";
  return res;
}

}  // namespace detail

// Verifies a Farkas-type infeasibility certificate: sum_i y_i A_i must be
// PSD on every block (within tol) while b'y < 0 with definite margin.
inline bool verify_dual_ray(const SdpProblem& prob, const std::vector<double>& ray,
                            const SdpOptions& opts, double* by_out = nullptr,
                            double* eig_out = nullptr) {
  if (ray.size() != prob.constraints.size()) return false;
  double ynorm = 0;
  for (double v : ray) ynorm = std::max(ynorm, std::abs(v));
  if (ynorm == 0) return false;
  double by = 0;
  for (size_t i = 0; i < ray.size(); ++i) by += ray[i] * prob.constraints[i].rhs;
  double min_eig = std::numeric_limits<double>::infinity();
  double amax = 0;
  for (size_t b = 0; b < prob.nblocks(); ++b) {
    Eigen::MatrixXd z = Eigen::MatrixXd::Zero(prob.block_dims[b], prob.block_dims[b]);
    for (size_t i = 0; i < ray.size(); ++i)
      prob.constraints[i].blocks[b].add_scaled_to(z, ray[i]);
    amax = std::max(amax, z.cwiseAbs().maxCoeff());
    min_eig = std::min(min_eig, eig_min(z));
  }
  if (by_out) *by_out = by;
  if (eig_out) *eig_out = min_eig;
  double scale = ynorm * (1 + amax);
  return min_eig >= -opts.feas_tol * scale &&
         by <= -opts.ray_margin * ynorm * (1 + std::abs(by));
}

// Deterministic solve. Feasibility instances (no objective) run through a
// strictly-feasible auxiliary program min t with
//   <A_i, X> + t (b_i - <A_i, I>) = b_i ,  X PSD, t >= 0,
// whose optimum separates Feasible (t* = 0, X recovered) from Infeasible
// (t* > 0, the auxiliary dual optimum is a Farkas ray). Infeasible is
// declared only when the ray itself verifies; everything else degrades to
// Indeterminate.
inline SdpSolution solve_sdp(const SdpProblem& prob_in, const SdpOptions& opts = {}) {
  prob_in.validate();
  SdpSolution sol;

  // Row equilibration: scale every constraint to unit max magnitude. The
  // feasible set is unchanged; dual values are unscaled on the way out.
  SdpProblem prob = prob_in;
  std::vector<double> row_scale(prob.constraints.size(), 1.0);
  for (size_t i = 0; i < prob.constraints.size(); ++i) {
    auto& c = prob.constraints[i];
    double s = std::abs(c.rhs);
    for (auto& blk : c.blocks) s = std::max(s, blk.max_abs());
    if (s > 0 && s != 1.0) {
      row_scale[i] = s;
      c.rhs /= s;
      for (auto& blk : c.blocks)
        for (auto& [ii, jj, v] : blk.entries) v /= s;
    }
  }
  auto unscale_dual = [&](std::vector<double>& y) {
    for (size_t i = 0; i < y.size(); ++i) y[i] /= row_scale[i];
  };

  if (prob.objective) {
    auto r = detail::ipm_solve(prob, *prob.objective, opts);
    sol.primal = r.state.x;
    sol.dual.assign(r.state.y.data(), r.state.y.data() + r.state.y.size());
    unscale_dual(sol.dual);
    sol.dual_matrix = r.state.s;
    sol.primal_residual = r.rp;
    sol.dual_residual = r.rd;
    sol.gap = r.mu;
    sol.iterations = r.iterations;
    sol.message = r.message;
    double obj = 0;
    for (size_t b = 0; b < prob.nblocks(); ++b)
      obj += (*prob.objective)[b].inner(r.state.x[b]);
    sol.objective_value = obj;
    double me = std::numeric_limits<double>::infinity();
    for (auto& xb : sol.primal) me = std::min(me, eig_min(xb));
    sol.min_primal_eig = me;
    sol.status = r.converged ? SdpStatus::Feasible : SdpStatus::Indeterminate;
    return sol;
  }

  // Auxiliary problem with one extra 1x1 block for t.
  SdpProblem aux;
  aux.block_dims = prob.block_dims;
  aux.block_dims.push_back(1);
  const size_t nb = prob.nblocks();
  for (const auto& c : prob.constraints) {
    SdpConstraint ac;
    ac.blocks = c.blocks;
    double trace_a = 0;
    for (size_t b = 0; b < nb; ++b)
      for (auto& [i, j, v] : c.blocks[b].entries)
        if (i == j) trace_a += v;
    SparseSym tblk;
    double g = c.rhs - trace_a;
    if (g != 0) tblk.add(0, 0, g);
    ac.blocks.push_back(tblk);
    ac.rhs = c.rhs;
    aux.constraints.push_back(std::move(ac));
  }
  std::vector<SparseSym> cobj(nb + 1);
  cobj[nb].add(0, 0, 1.0);

  auto r = detail::ipm_solve(aux, cobj, opts);
  sol.iterations = r.iterations;
  sol.message = r.message;
  sol.primal.assign(r.state.x.begin(), r.state.x.begin() + nb);
  sol.dual_matrix.assign(r.state.s.begin(), r.state.s.begin() + nb);
  sol.dual.assign(r.state.y.data(), r.state.y.data() + r.state.y.size());
  unscale_dual(sol.dual);
  const double tstar = r.state.x[nb](0, 0);
  sol.objective_value = tstar;

  auto residual_of = [&](const std::vector<Eigen::MatrixXd>& x) {
    double rp = 0;
    for (size_t i = 0; i < prob.constraints.size(); ++i) {
      double acc = 0;
      for (size_t b = 0; b < nb; ++b)
        acc += prob.constraints[i].blocks[b].inner(x[b]);
      rp = std::max(rp, std::abs(acc - prob.constraints[i].rhs));
    }
    return rp;
  };
  double bnorm = 0;
  for (const auto& c : prob.constraints) bnorm = std::max(bnorm, std::abs(c.rhs));

  // Primal polish: least-norm correction X += A*(AA*)^-1 (b - A(X)) brings
  // the affine residual down to roundoff while barely moving X. Only worth
  // doing when the iterate is already nearly feasible.
  if (residual_of(sol.primal) <= 1e-4 * (1 + bnorm)) {
    const size_t p = prob.constraints.size();
    Eigen::MatrixXd gram(p, p);
    for (size_t i = 0; i < p; ++i)
      for (size_t j = i; j < p; ++j) {
        double acc = 0;
        for (size_t b = 0; b < nb; ++b) {
          const auto& bi = prob.constraints[i].blocks[b];
          const auto& bj = prob.constraints[j].blocks[b];
          if (bi.empty() || bj.empty()) continue;
          Eigen::MatrixXd dense = bj.dense(prob.block_dims[b]);
          acc += bi.inner(dense);
        }
        gram(i, j) = gram(j, i) = acc;
      }
    Eigen::VectorXd resid(p);
    for (size_t i = 0; i < p; ++i) {
      double acc = 0;
      for (size_t b = 0; b < nb; ++b)
        acc += prob.constraints[i].blocks[b].inner(sol.primal[b]);
      resid(i) = prob.constraints[i].rhs - acc;
    }
    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() == Eigen::Success) {
      Eigen::VectorXd lam = llt.solve(resid);
      for (size_t b = 0; b < nb; ++b)
        for (size_t i = 0; i < p; ++i)
          prob.constraints[i].blocks[b].add_scaled_to(sol.primal[b], lam(i));
    }
  }

  // Residual of the recovered X against the (equilibrated) constraints.
  double rp = residual_of(sol.primal);
  double xscale = 1.0, min_eig = std::numeric_limits<double>::infinity();
  for (auto& xb : sol.primal) {
    xscale = std::max(xscale, xb.cwiseAbs().maxCoeff());
    min_eig = std::min(min_eig, eig_min(xb));
  }
  sol.primal_residual = rp;
  sol.dual_residual = r.rd;
  sol.gap = r.mu;
  sol.min_primal_eig = min_eig;

  if (rp <= opts.feas_tol * (1 + bnorm) * 10 &&
      min_eig >= -opts.feas_tol * (1 + xscale)) {
    sol.status = SdpStatus::Feasible;
    return sol;
  }

  // Candidate Farkas ray from the auxiliary dual.
  std::vector<double> ray(sol.dual.size());
  for (size_t i = 0; i < ray.size(); ++i) ray[i] = -sol.dual[i];
  double ynorm = 0;
  for (double v : ray) ynorm = std::max(ynorm, std::abs(v));
  if (ynorm > 0) {
    for (double& v : ray) v /= ynorm;
    if (verify_dual_ray(prob_in, ray, opts)) {
      sol.status = SdpStatus::Infeasible;
      sol.dual = ray;
      return sol;
    }
  }
  sol.status = SdpStatus::Indeterminate;
  if (sol.message.empty()) sol.message = "no feasible point and no verified ray";
  return sol;
}

}  // namespace soslyap

#endif
