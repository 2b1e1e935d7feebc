#ifndef SOSLYAP_RATIONAL_LINALG_HPP
#define SOSLYAP_RATIONAL_LINALG_HPP

#include <optional>
#include <string>
#include <vector>

#include "soslyap/rational.hpp"

namespace soslyap {

// Dense matrix over Q, row major.
struct RatMatrix {
  size_t rows = 0, cols = 0;
  std::vector<Rat> a;

  RatMatrix() = default;
  RatMatrix(size_t r, size_t c) : rows(r), cols(c), a(r * c, Rat(0)) {}

  static RatMatrix identity(size_t n) {
    RatMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  Rat& operator()(size_t i, size_t j) { return a[i * cols + j]; }
  const Rat& operator()(size_t i, size_t j) const { return a[i * cols + j]; }

  bool is_symmetric() const {
    if (rows != cols) return false;
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = i + 1; j < cols; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }
};

inline std::vector<Rat> mat_vec(const RatMatrix& m, const std::vector<Rat>& x) {
  std::vector<Rat> y(m.rows, Rat(0));
  for (size_t i = 0; i < m.rows; ++i)
    for (size_t j = 0; j < m.cols; ++j)
      if (m(i, j) != 0) y[i] += m(i, j) * x[j];
  return y;
}

inline Rat quad_form(const RatMatrix& m, const std::vector<Rat>& v) {
  Rat acc(0);
  for (size_t i = 0; i < m.rows; ++i)
    for (size_t j = 0; j < m.cols; ++j)
      if (m(i, j) != 0) acc += v[i] * m(i, j) * v[j];
  return acc;
}

enum class LinSolveStatus { Unique, Underdetermined, Inconsistent };

struct LinSolveResult {
  LinSolveStatus status;
  std::vector<Rat> x;  // a particular solution (free variables set to 0)
};

// Exact Gauss-Jordan; returns a particular solution or reports the system
// inconsistent.
inline LinSolveResult solve_linear(RatMatrix m, std::vector<Rat> b) {
  const size_t rows = m.rows, cols = m.cols;
  std::vector<size_t> pivot_col_of_row(rows, SIZE_MAX);
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = SIZE_MAX;
    for (size_t i = r; i < rows; ++i)
      if (m(i, c) != 0) { sel = i; break; }
    if (sel == SIZE_MAX) continue;
    if (sel != r) {
      for (size_t j = 0; j < cols; ++j) std::swap(m(sel, j), m(r, j));
      std::swap(b[sel], b[r]);
    }
    Rat inv = m(r, c);
    for (size_t j = c; j < cols; ++j) m(r, j) /= inv;
    b[r] /= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rat f = m(i, c);
      for (size_t j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
      b[i] -= f * b[r];
    }
    pivot_col_of_row[r] = c;
    ++r;
  }
  for (size_t i = r; i < rows; ++i)
    if (b[i] != 0) return {LinSolveStatus::Inconsistent, {}};
  std::vector<Rat> x(cols, Rat(0));
  for (size_t i = 0; i < r; ++i) x[pivot_col_of_row[i]] = b[i];
  return {r == cols ? LinSolveStatus::Unique : LinSolveStatus::Underdetermined,
          std::move(x)};
}

enum class PsdVerdict { PD, PSD, NotPSD };

struct PsdResult {
  PsdVerdict verdict;
  std::vector<Rat> pivots;              // in elimination order
  std::optional<std::vector<Rat>> witness;  // v with v'Mv < 0 when NotPSD
};

// Exact LDL' with symmetric (diagonal) pivoting. PD iff n positive pivots;
// a negative pivot or a nonzero row under a zero diagonal yields an exact
// rational witness v with v'Mv < 0.
inline PsdResult psd_check_exact(const RatMatrix& m_in) {
  if (m_in.rows != m_in.cols || !m_in.is_symmetric())
    throw std::invalid_argument("psd_check_exact: matrix must be symmetric");
  const size_t n = m_in.rows;
  RatMatrix w = m_in;
  std::vector<size_t> perm(n);
  for (size_t i = 0; i < n; ++i) perm[i] = i;
  // Row-operations accumulator: at every stage T * M * T' equals the working
  // matrix w on the active block, so a bad direction u in the working frame
  // pulls back to v = T' u ... see make_witness.
  RatMatrix t = RatMatrix::identity(n);
  PsdResult res;
  res.verdict = PsdVerdict::PD;

  auto make_witness = [&](std::vector<Rat> u) {
    // v = T' u so that v' M v = u' (T M T') u.
    std::vector<Rat> v(n, Rat(0));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (t(i, j) != 0 && u[i] != 0) v[j] += t(i, j) * u[i];
    return v;
  };

  size_t rank = 0;
  for (size_t k = 0; k < n; ++k) {
    // Best remaining diagonal: most positive first.
    size_t best = SIZE_MAX;
    for (size_t i = k; i < n; ++i) {
      if (w(i, i) > 0 && (best == SIZE_MAX || w(i, i) > w(best, best))) best = i;
    }
    for (size_t i = k; i < n; ++i) {
      if (w(i, i) < 0) {
        std::vector<Rat> u(n, Rat(0));
        u[i] = 1;
        res.verdict = PsdVerdict::NotPSD;
        res.pivots.push_back(w(i, i));
        res.witness = make_witness(std::move(u));
        return res;
      }
    }
    if (best == SIZE_MAX) {
      // All remaining diagonals are zero: PSD demands the whole block be 0.
      for (size_t i = k; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
          if (w(i, j) != 0) {
            std::vector<Rat> u(n, Rat(0));
            u[i] = 1;
            u[j] = (w(i, j) > 0) ? Rat(-1) : Rat(1);
            res.verdict = PsdVerdict::NotPSD;
            res.witness = make_witness(std::move(u));
            return res;
          }
      for (size_t i = k; i < n; ++i) res.pivots.push_back(Rat(0));
      break;
    }
    if (best != k) {
      for (size_t j = 0; j < n; ++j) std::swap(w(best, j), w(k, j));
      for (size_t i = 0; i < n; ++i) std::swap(w(i, best), w(i, k));
      for (size_t j = 0; j < n; ++j) std::swap(t(best, j), t(k, j));
      std::swap(perm[best], perm[k]);
    }
    Rat d = w(k, k);
    res.pivots.push_back(d);
    ++rank;
    // One-sided row update; on the trailing block it coincides with the
    // symmetric Schur update since w(i,k) = f_i * d there.
    std::vector<Rat> f(n, Rat(0));
    for (size_t i = k + 1; i < n; ++i) f[i] = w(i, k) / d;
    for (size_t i = k + 1; i < n; ++i) {
      if (f[i] == 0) continue;
      for (size_t j = k + 1; j < n; ++j) w(i, j) -= f[i] * w(k, j);
      for (size_t j = 0; j < n; ++j) t(i, j) -= f[i] * t(k, j);
    }
  }
  res.verdict = (rank == n) ? PsdVerdict::PD : PsdVerdict::PSD;
  return res;
}

struct LyapunovEqResult {
  bool stable;                 // true iff the Lyapunov equation certifies Hurwitz
  std::optional<RatMatrix> p;  // the PD solution of A'P + PA = -I when stable
  std::string reason;          // why not, otherwise
};

// Decides asymptotic stability of xdot = Ax: solve A'P + PA = -I exactly,
// then test P for positive definiteness.
inline LyapunovEqResult lyapunov_equation(const RatMatrix& a) {
  if (a.rows != a.cols) throw std::invalid_argument("lyapunov_equation: square matrix required");
  const size_t n = a.rows;
  const size_t nu = n * (n + 1) / 2;
  auto idx = [n](size_t i, size_t j) {
    if (i > j) std::swap(i, j);
    return i * n - i * (i + 1) / 2 + j;
  };
  RatMatrix sys(nu, nu);
  std::vector<Rat> rhs(nu, Rat(0));
  for (size_t k = 0; k < n; ++k) {
    for (size_t l = k; l < n; ++l) {
      size_t row = idx(k, l);
      for (size_t m = 0; m < n; ++m) {
        sys(row, idx(m, l)) += a(m, k);  // (A'P)_{kl} = sum_m A_{mk} P_{ml}
        sys(row, idx(k, m)) += a(m, l);  // (PA)_{kl}  = sum_m P_{km} A_{ml}
      }
      rhs[row] = (k == l) ? Rat(-1) : Rat(0);
    }
  }
  auto sol = solve_linear(std::move(sys), std::move(rhs));
  if (sol.status == LinSolveStatus::Inconsistent)
    return {false, std::nullopt, "no solution to the Lyapunov equation"};
  RatMatrix p(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) p(i, j) = p(j, i) = sol.x[idx(i, j)];
  auto psd = psd_check_exact(p);
  if (psd.verdict != PsdVerdict::PD)
    return {false, std::nullopt, "solution P is not positive definite"};
  return {true, std::move(p), ""};
}

inline bool hurwitz_test(const RatMatrix& a) { return lyapunov_equation(a).stable; }

}  // namespace soslyap

#endif
