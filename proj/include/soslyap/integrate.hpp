#ifndef SOSLYAP_INTEGRATE_HPP
#define SOSLYAP_INTEGRATE_HPP

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "soslyap/reductions.hpp"
#include "soslyap/vector_field.hpp"

namespace soslyap {

struct SimConfig {
  double t_end = 20.0;
  double initial_step = 1e-3;
  double abs_tol = 1e-9;
  double rel_tol = 1e-7;
  int max_steps = 200000;
  double blowup_radius = 1e6;
};

enum class Terminal { Converged, Escaped, MaxSteps };

inline const char* to_string(Terminal t) {
  switch (t) {
    case Terminal::Converged: return "converged";
    case Terminal::Escaped: return "escaped";
    case Terminal::MaxSteps: return "max-steps";
  }
  return "?";
}

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;  // one row per accepted step
  Terminal terminal = Terminal::MaxSteps;
};

namespace detail {

// Dormand-Prince 5(4) tableau. The fourth-order weights propagate the
// state; the fifth-order line serves as the error reference.
struct DopriTableau {
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113,
                          a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                          a76 = 11.0 / 84;
  static constexpr double b5[7] = {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192,
                                   -2187.0 / 6784, 11.0 / 84, 0};
  static constexpr double b4[7] = {5179.0 / 57600, 0,        7571.0 / 16695,
                                   393.0 / 640,    -92097.0 / 339200,
                                   187.0 / 2100,   1.0 / 40};
};

inline double norm2(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// One Dormand-Prince step from x with size h: fills the fourth-order result
// and returns the 4th/5th embedded error estimate.
inline double dopri_step(const VectorField& f, const std::vector<double>& x,
                         double h, std::vector<double>& out) {
  using T = DopriTableau;
  const size_t n = x.size();
  std::vector<std::vector<double>> k(7);
  std::vector<double> tmp(n);
  k[0] = f.evaluate(x);
  auto stage = [&](std::initializer_list<std::pair<int, double>> terms) {
    for (size_t i = 0; i < n; ++i) {
      double acc = x[i];
      for (auto& [idx, coef] : terms) acc += h * coef * k[idx][i];
      tmp[i] = acc;
    }
    return f.evaluate(tmp);
  };
  k[1] = stage({{0, T::a21}});
  k[2] = stage({{0, T::a31}, {1, T::a32}});
  k[3] = stage({{0, T::a41}, {1, T::a42}, {2, T::a43}});
  k[4] = stage({{0, T::a51}, {1, T::a52}, {2, T::a53}, {3, T::a54}});
  k[5] = stage({{0, T::a61}, {1, T::a62}, {2, T::a63}, {3, T::a64}, {4, T::a65}});
  k[6] = stage({{0, T::a71}, {2, T::a73}, {3, T::a74}, {4, T::a75}, {5, T::a76}});
  out.resize(n);
  double err = 0;
  for (size_t i = 0; i < n; ++i) {
    double x4 = x[i], diff = 0;
    for (int s = 0; s < 7; ++s) {
      x4 += h * T::b4[s] * k[s][i];
      diff += h * (T::b5[s] - T::b4[s]) * k[s][i];
    }
    out[i] = x4;
    err += diff * diff;
  }
  return std::sqrt(err);
}

}  // namespace detail

// Adaptive embedded Runge-Kutta integration. Terminates Converged once
// |x| < 1e-8 on 10 consecutive accepted steps, Escaped past blowup_radius
// or on non-finite values, MaxSteps when the step or time budget runs out.
inline Trajectory integrate(const VectorField& field, std::vector<double> x0,
                            const SimConfig& cfg = {}) {
  if (x0.size() != field.nvars)
    throw std::invalid_argument("integrate: initial condition dimension mismatch");
  if (cfg.abs_tol <= 0 || cfg.rel_tol <= 0 || cfg.blowup_radius <= 0)
    throw std::invalid_argument("integrate: tolerances must be positive");
  Trajectory traj;
  traj.times.push_back(0);
  traj.states.push_back(x0);
  double t = 0, h = cfg.initial_step;
  std::vector<double> x = std::move(x0), next;
  int quiet_steps = 0;
  for (int step = 0; step < cfg.max_steps; ++step) {
    if (t >= cfg.t_end) return traj;  // time budget spent
    h = std::min(h, cfg.t_end - t);
    double err = detail::dopri_step(field, x, h, next);
    bool finite = true;
    for (double v : next)
      if (!std::isfinite(v)) finite = false;
    double tol = cfg.abs_tol + cfg.rel_tol * detail::norm2(x);
    if (!finite || (std::isfinite(err) && err > tol)) {
      // reject
      double shrink = finite && err > 0
                          ? std::max(0.2, 0.9 * std::pow(tol / err, 0.2))
                          : 0.2;
      h *= shrink;
      if (h < 1e-14) {
        traj.terminal = Terminal::Escaped;
        return traj;
      }
      continue;
    }
    t += h;
    x = next;
    traj.times.push_back(t);
    traj.states.push_back(x);
    double r = detail::norm2(x);
    if (!std::isfinite(r) || r > cfg.blowup_radius) {
      traj.terminal = Terminal::Escaped;
      return traj;
    }
    if (r < 1e-8) {
      if (++quiet_steps >= 10) {
        traj.terminal = Terminal::Converged;
        return traj;
      }
    } else {
      quiet_steps = 0;
    }
    double grow = err > 0 ? std::min(5.0, 0.9 * std::pow(tol / err, 0.2)) : 5.0;
    h *= std::max(0.2, grow);
  }
  return traj;
}

// Fixed-step variant (no error control); used for order measurements.
inline std::vector<double> integrate_fixed_step(const VectorField& field,
                                                std::vector<double> x0, double h,
                                                double t_end) {
  std::vector<double> next;
  double t = 0;
  while (t < t_end - 1e-12) {
    double hh = std::min(h, t_end - t);
    detail::dopri_step(field, x0, hh, next);
    x0 = next;
    t += hh;
  }
  return x0;
}

struct MonotonicityReport {
  bool monotone = true;
  size_t violation_index = 0;
  double delta = 0;
};

// Checks V(x(t_k)) nonincreasing along the samples, up to
// 1e-7 * (1 + |V|) slack per comparison.
inline MonotonicityReport lyapunov_monotonic(const Polynomial& v,
                                             const Trajectory& traj) {
  MonotonicityReport rep;
  double prev = 0;
  for (size_t k = 0; k < traj.states.size(); ++k) {
    if (traj.states[k].size() != v.nvars())
      throw std::invalid_argument("lyapunov_monotonic: dimension mismatch");
    double val = v.evaluate(traj.states[k]);
    if (k > 0 && val > prev + 1e-7 * (1 + std::abs(prev))) {
      rep.monotone = false;
      rep.violation_index = k;
      rep.delta = val - prev;
      return rep;
    }
    prev = val;
  }
  return rep;
}

// Exact zero set of the field over boolean points. With augmented set, the
// last coordinate is pinned to 1 and the scan runs over the remaining ones
// (the homogenizing-variable convention of the reduction chain).
inline std::vector<std::vector<Rat>> boolean_equilibria(const VectorField& field,
                                                        bool augmented) {
  size_t free_vars = field.nvars - (augmented ? 1 : 0);
  if (free_vars > 24)
    throw std::invalid_argument("boolean_equilibria: more than 24 free variables");
  std::vector<std::vector<Rat>> zeros;
  std::vector<Rat> pt(field.nvars, Rat(0));
  if (augmented) pt[field.nvars - 1] = 1;
  for (uint64_t mask = 0; mask < (uint64_t{1} << free_vars); ++mask) {
    for (size_t i = 0; i < free_vars; ++i)
      pt[i] = (mask >> i) & 1 ? Rat(1) : Rat(0);
    bool zero = true;
    for (const auto& comp : field.components)
      if (comp.evaluate(pt) != 0) { zero = false; break; }
    if (zero) zeros.push_back(pt);
  }
  return zeros;
}

// Index of the first trajectory sample inside every halfspace a.x <= b;
// an empty list is vacuously satisfied at index 0.
inline std::optional<size_t> polytope_membership(const Trajectory& traj,
                                                 const std::vector<Halfspace>& s) {
  for (size_t k = 0; k < traj.states.size(); ++k) {
    bool inside = true;
    for (const auto& h : s) {
      if (h.normal.size() != traj.states[k].size())
        throw std::invalid_argument("polytope_membership: dimension mismatch");
      double dot = 0;
      for (size_t i = 0; i < h.normal.size(); ++i)
        dot += rat_to_double(h.normal[i]) * traj.states[k][i];
      if (dot > rat_to_double(h.offset)) { inside = false; break; }
    }
    if (inside) return k;
  }
  return std::nullopt;
}

inline std::string trajectory_to_csv(const Trajectory& traj) {
  std::string out = "t";
  size_t n = traj.states.empty() ? 0 : traj.states[0].size();
  for (size_t i = 1; i <= n; ++i) out += ",x" + std::to_string(i);
  out += "\n";
  char buf[64];
  for (size_t k = 0; k < traj.times.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.12g", traj.times[k]);
    out += buf;
    for (double v : traj.states[k]) {
      std::snprintf(buf, sizeof buf, ",%.12g", v);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

}  // namespace soslyap

#endif
