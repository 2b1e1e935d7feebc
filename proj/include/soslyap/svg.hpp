#ifndef SOSLYAP_SVG_HPP
#define SOSLYAP_SVG_HPP

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "soslyap/integrate.hpp"

namespace soslyap {

namespace detail {

inline std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// Marching squares on a uniform grid: segments of the iso-line val = level.
inline std::vector<std::array<double, 4>> iso_segments(
    const std::vector<std::vector<double>>& val, double level, double x0,
    double y0, double dx, double dy) {
  std::vector<std::array<double, 4>> segs;
  const size_t nx = val.size(), ny = val.empty() ? 0 : val[0].size();
  auto lerp = [&](double a, double b) {
    double d = b - a;
    return std::abs(d) < 1e-300 ? 0.5 : (level - a) / d;
  };
  for (size_t i = 0; i + 1 < nx; ++i) {
    for (size_t j = 0; j + 1 < ny; ++j) {
      double v00 = val[i][j], v10 = val[i + 1][j], v01 = val[i][j + 1],
             v11 = val[i + 1][j + 1];
      int code = (v00 > level) | ((v10 > level) << 1) | ((v11 > level) << 2) |
                 ((v01 > level) << 3);
      if (code == 0 || code == 15) continue;
      double xl = x0 + i * dx, yb = y0 + j * dy;
      // edge midpoints by linear interpolation
      auto bottom = [&] { return std::pair{xl + dx * lerp(v00, v10), yb}; };
      auto top = [&] { return std::pair{xl + dx * lerp(v01, v11), yb + dy}; };
      auto left = [&] { return std::pair{xl, yb + dy * lerp(v00, v01)}; };
      auto right = [&] { return std::pair{xl + dx, yb + dy * lerp(v10, v11)}; };
      auto emit = [&](std::pair<double, double> a, std::pair<double, double> b) {
        segs.push_back({a.first, a.second, b.first, b.second});
      };
      switch (code) {
        case 1: case 14: emit(left(), bottom()); break;
        case 2: case 13: emit(bottom(), right()); break;
        case 3: case 12: emit(left(), right()); break;
        case 4: case 11: emit(right(), top()); break;
        case 6: case 9: emit(bottom(), top()); break;
        case 7: case 8: emit(left(), top()); break;
        case 5: emit(left(), bottom()); emit(right(), top()); break;
        case 10: emit(bottom(), right()); emit(left(), top()); break;
      }
    }
  }
  return segs;
}

}  // namespace detail

// Phase portrait of a planar trajectory as a standalone SVG, optionally
// with dotted level sets of V (marching squares on a 161x161 grid spanning
// the padded trajectory bounding box, levels sampled along the trajectory).
inline void emit_plot(const Trajectory& traj, const std::optional<Polynomial>& v,
                      const std::string& path) {
  if (traj.states.empty() || traj.states[0].size() != 2)
    throw std::invalid_argument("emit_plot: a planar trajectory is required");
  if (v && v->nvars() != 2)
    throw std::invalid_argument("emit_plot: level-set polynomial must be planar");

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : traj.states) {
    xmin = std::min(xmin, s[0]); xmax = std::max(xmax, s[0]);
    ymin = std::min(ymin, s[1]); ymax = std::max(ymax, s[1]);
  }
  double spanx = std::max(xmax - xmin, 1e-6), spany = std::max(ymax - ymin, 1e-6);
  double span = std::max(spanx, spany);
  double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
  double half = 0.575 * span;
  xmin = cx - half; xmax = cx + half; ymin = cy - half; ymax = cy + half;

  const double W = 640, H = 640, margin = 20;
  auto px = [&](double x) { return margin + (x - xmin) / (xmax - xmin) * (W - 2 * margin); };
  auto py = [&](double y) { return H - margin - (y - ymin) / (ymax - ymin) * (H - 2 * margin); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
         "viewBox=\"0 0 640 640\">\n";
  svg += "<rect width=\"640\" height=\"640\" fill=\"white\"/>\n";
  svg += "<line x1=\"" + detail::fmt2(px(xmin)) + "\" y1=\"" + detail::fmt2(py(0)) +
         "\" x2=\"" + detail::fmt2(px(xmax)) + "\" y2=\"" + detail::fmt2(py(0)) +
         "\" stroke=\"#cccccc\"/>\n";
  svg += "<line x1=\"" + detail::fmt2(px(0)) + "\" y1=\"" + detail::fmt2(py(ymin)) +
         "\" x2=\"" + detail::fmt2(px(0)) + "\" y2=\"" + detail::fmt2(py(ymax)) +
         "\" stroke=\"#cccccc\"/>\n";

  if (v) {
    const size_t G = 161;
    double dx = (xmax - xmin) / (G - 1), dy = (ymax - ymin) / (G - 1);
    std::vector<std::vector<double>> val(G, std::vector<double>(G));
    for (size_t i = 0; i < G; ++i)
      for (size_t j = 0; j < G; ++j)
        val[i][j] = v->evaluate(std::vector<double>{xmin + i * dx, ymin + j * dy});
    // Levels: V sampled along the trajectory, thinned to at most 7 values.
    std::vector<double> samples;
    for (const auto& s : traj.states) {
      double t = v->evaluate(s);
      if (std::isfinite(t) && t > 0) samples.push_back(t);
    }
    std::sort(samples.begin(), samples.end());
    samples.erase(std::unique(samples.begin(), samples.end()), samples.end());
    std::vector<double> levels;
    for (int k = 0; k < 7 && !samples.empty(); ++k) {
      size_t idx = samples.size() * (k + 1) / 8;
      if (idx >= samples.size()) idx = samples.size() - 1;
      levels.push_back(samples[idx]);
    }
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    for (double lev : levels) {
      auto segs = detail::iso_segments(val, lev, xmin, ymin, dx, dy);
      for (auto& [ax, ay, bx, by] : segs)
        svg += "<line x1=\"" + detail::fmt2(px(ax)) + "\" y1=\"" + detail::fmt2(py(ay)) +
               "\" x2=\"" + detail::fmt2(px(bx)) + "\" y2=\"" + detail::fmt2(py(by)) +
               "\" stroke=\"#5577cc\" stroke-width=\"0.8\" stroke-dasharray=\"3,3\"/>\n";
    }
  }

  svg += "<polyline fill=\"none\" stroke=\"#222222\" stroke-width=\"1.5\" points=\"";
  for (const auto& s : traj.states)
    svg += detail::fmt2(px(s[0])) + "," + detail::fmt2(py(s[1])) + " ";
  svg += "\"/>\n";
  double sx = px(traj.states.front()[0]), sy = py(traj.states.front()[1]);
  svg += "<circle cx=\"" + detail::fmt2(sx) + "\" cy=\"" + detail::fmt2(sy) +
         "\" r=\"3\" fill=\"#cc3333\"/>\n";
  svg += "</svg>\n";

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_plot: cannot open " + path);
  out << svg;
}

}  // namespace soslyap

#endif
