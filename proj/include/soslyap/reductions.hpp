#ifndef SOSLYAP_REDUCTIONS_HPP
#define SOSLYAP_REDUCTIONS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "soslyap/cnf.hpp"
#include "soslyap/vector_field.hpp"

namespace soslyap {

// --- ONE-IN-THREE 3SAT -> quartic positivity -> cubic stability ---------

// p = sum_i x_i^2 (1-x_i)^2 + sum_clauses (l1 + l2 + l3 - 1)^2 with
// l = x_i for a positive literal and 1-x_i for a negated one. A sum of
// squares by construction; vanishes at a boolean point iff that point
// one-in-three-satisfies the instance.
inline Polynomial sat_to_quartic(const CnfInstance& inst) {
  const size_t n = inst.nvars;
  Polynomial p(n);
  const Polynomial one = Polynomial::constant(n, Rat(1));
  for (size_t i = 0; i < n; ++i) {
    Polynomial xi = Polynomial::variable(n, i);
    Polynomial t = xi * (one - xi);
    p += t * t;
  }
  for (const auto& cl : inst.clauses) {
    Polynomial s = -one;
    for (int lit : cl) {
      Polynomial xi = Polynomial::variable(n, std::abs(lit) - 1);
      s += (lit > 0) ? xi : one - xi;
    }
    p += s * s;
  }
  return p;
}

// p_h(x, y) = y^4 p(x/y); the slice y = 0 is x1^4 + ... + xn^4, so this
// homogenization preserves positivity.
inline Polynomial homogenize_quartic(const Polynomial& p) {
  if (p.degree() != 4)
    throw std::invalid_argument("homogenize_quartic: degree-4 input required");
  return p.homogenize(4);
}

// The cubic field xdot = -grad V of a quartic form; Vdot = -|grad V|^2.
inline VectorField quartic_to_gradient_field(const Polynomial& v) {
  if (!v.is_homogeneous() || v.degree() != 4)
    throw std::invalid_argument("quartic_to_gradient_field: quartic form required");
  return negative_gradient_field(v);
}

// --- the gadget family ---------------------------------------------------

enum class GadgetKind {
  StabilityInLyapunovSense,   // xdot = f + x^4 (componentwise powers)
  Boundedness,                // xdot = f + x
  Control,                    // g(x) = (x1 x2^2 - x1^2 x2) 11'
  BallInvariance,             // xdot = -grad p, invariance of the unit ball
  SemialgebraicInvariance,    // xdot = -x, invariance of {p <= 1}
  RegionOfAttractionBall,     // the field f itself, ball of radius 1
  LocalAttractivity,          // the field f itself
};

// A halfspace a.x <= b.
struct Halfspace {
  std::vector<Rat> normal;
  Rat offset;
};

struct GadgetInstance {
  GadgetKind kind;
  VectorField field;
  // Control gadget: the n x n input matrix g(x).
  std::optional<std::vector<std::vector<Polynomial>>> control_matrix;
  // Invariant-set data: halfspaces, or a level set {level_poly <= 1}.
  std::optional<std::vector<Halfspace>> polytope;
  std::optional<Polynomial> level_poly;
  std::string note;
};

// The obstacle polytope S = {x | x_i >= 0, 1 <= sum x_i <= 2} used by the
// collision-avoidance variant of the Lyapunov-sense gadget.
inline std::vector<Halfspace> collision_polytope(size_t n) {
  std::vector<Halfspace> hs;
  for (size_t i = 0; i < n; ++i) {
    Halfspace h{std::vector<Rat>(n, Rat(0)), Rat(0)};
    h.normal[i] = -1;  // -x_i <= 0
    hs.push_back(std::move(h));
  }
  Halfspace lower{std::vector<Rat>(n, Rat(-1)), Rat(-1)};  // -sum <= -1
  Halfspace upper{std::vector<Rat>(n, Rat(1)), Rat(2)};    // sum <= 2
  hs.push_back(std::move(lower));
  hs.push_back(std::move(upper));
  return hs;
}

inline GadgetInstance gadget(GadgetKind kind, const VectorField& base_field) {
  const size_t n = base_field.nvars;
  GadgetInstance out;
  out.kind = kind;
  switch (kind) {
    case GadgetKind::StabilityInLyapunovSense: {
      std::vector<Polynomial> comps;
      for (size_t i = 0; i < n; ++i) {
        Monomial m(n);
        m.exps[i] = 4;
        comps.push_back(base_field.components[i] + Polynomial::monomial(m));
      }
      out.field = VectorField(std::move(comps));
      out.polytope = collision_polytope(n);
      out.note = "xdot = f + x^4; collision polytope attached";
      return out;
    }
    case GadgetKind::Boundedness: {
      std::vector<Polynomial> comps;
      for (size_t i = 0; i < n; ++i)
        comps.push_back(base_field.components[i] + Polynomial::variable(n, i));
      out.field = VectorField(std::move(comps));
      out.note = "xdot = f + x";
      return out;
    }
    case GadgetKind::Control: {
      if (n < 2)
        throw std::invalid_argument("control gadget needs at least 2 variables");
      Polynomial x1 = Polynomial::variable(n, 0), x2 = Polynomial::variable(n, 1);
      Polynomial gpoly = x1 * x2 * x2 - x1 * x1 * x2;
      out.field = base_field;
      out.control_matrix =
          std::vector<std::vector<Polynomial>>(n, std::vector<Polynomial>(n, gpoly));
      out.note = "g(x) = (x1 x2^2 - x1^2 x2) 11'; vanishes on {0,1}^n rays";
      return out;
    }
    case GadgetKind::RegionOfAttractionBall:
    case GadgetKind::LocalAttractivity:
      out.field = base_field;
      out.note = "the gradient field itself; homogeneity does the rest";
      return out;
    default:
      throw std::invalid_argument("gadget: this kind takes a quartic form base");
  }
}

inline GadgetInstance gadget(GadgetKind kind, const Polynomial& quartic_form) {
  if (!quartic_form.is_homogeneous() || quartic_form.degree() != 4)
    throw std::invalid_argument("gadget: quartic form required");
  const size_t n = quartic_form.nvars();
  GadgetInstance out;
  out.kind = kind;
  switch (kind) {
    case GadgetKind::BallInvariance: {
      out.field = negative_gradient_field(quartic_form);
      out.level_poly = [&] {
        Polynomial q(n);
        for (size_t i = 0; i < n; ++i) {
          Monomial m(n);
          m.exps[i] = 2;
          q.add_term(m, Rat(1));
        }
        return q;  // B_1 = {|x|^2 <= 1}
      }();
      out.note = "xdot = -grad p; B1 invariant iff p nonnegative";
      return out;
    }
    case GadgetKind::SemialgebraicInvariance: {
      std::vector<Polynomial> comps;
      for (size_t i = 0; i < n; ++i) comps.push_back(-Polynomial::variable(n, i));
      out.field = VectorField(std::move(comps));
      out.level_poly = quartic_form;
      // pdot = <grad p, -x> = -4p, exactly.
      if (lie_derivative(quartic_form, out.field) != Rat(-4) * quartic_form)
        throw std::logic_error("Euler identity pdot = -4p failed");
      out.note = "xdot = -x; {p <= 1} invariant iff p nonnegative";
      return out;
    }
    default:
      throw std::invalid_argument("gadget: this kind takes a vector field base");
  }
}

// --- named systems -------------------------------------------------------

struct GallerySystem {
  std::string name;
  VectorField field;
  std::string description;
  bool homogeneous = false;
  std::map<std::string, Rat> params;
};

struct GalleryParams {
  // Rotation pair standing in for (cos theta, sin theta); the stability
  // conclusions only use sign conditions on s, so c^2 + s^2 = 1 is not
  // required.
  std::optional<Rat> c, s;
  std::optional<Rat> lambda;
};

inline GallerySystem gallery(const std::string& name, const GalleryParams& gp = {}) {
  GallerySystem out;
  out.name = name;
  auto X = Polynomial::variable(2, 0);
  auto Y = Polynomial::variable(2, 1);
  if (name == "krstic") {
    out.field = parse_vector_field("dx1 = -x1 + x1*x2\ndx2 = -x2\n");
    out.description =
        "globally asymptotically stable planar quadratic system with no "
        "polynomial Lyapunov function of any degree";
    return out;
  }
  if (name == "bacciotti-rosier" || name == "br-rotated") {
    Rat lam = gp.lambda.value_or(make_rat(314159, 100000));
    Rat c = gp.c.value_or(Rat(1));
    Rat s = gp.s.value_or(Rat(0));
    // Base center field, then the planar rotation by (c, s).
    Polynomial r2 = X * X + Y * Y;          // x^2 + y^2
    Polynomial q2 = Rat(2) * X * X + Y * Y; // 2x^2 + y^2
    Polynomial f1 = Rat(-2) * lam * Y * r2 - Rat(2) * Y * q2;
    Polynomial f2 = Rat(4) * lam * X * r2 + Rat(2) * X * q2;
    Polynomial g1 = c * f1 - s * f2;
    Polynomial g2 = s * f1 + c * f2;
    if (name == "bacciotti-rosier") {
      out.field = VectorField({f1, f2});
      out.description =
          "Bacciotti-Rosier center: no polynomial V with Vdot = 0 for "
          "irrational lambda (stored rationally, see gallery docs)";
    } else {
      out.field = VectorField({g1, g2});
      out.description =
          "rotated Bacciotti-Rosier family: asymptotically stable for "
          "0 < theta < pi with minimum Lyapunov degree growing as theta -> 0";
    }
    out.homogeneous = true;
    out.params["lambda"] = lam;
    out.params["c"] = c;
    out.params["s"] = s;
    return out;
  }
  if (name == "nonmonotone") {
    Rat c = gp.c.value_or(make_rat(9999, 10000));
    Rat s = gp.s.value_or(make_rat(1, 100));
    Polynomial x3 = X * X * X, y3 = Y * Y * Y;
    out.field = VectorField({-(s * x3) + c * y3, -(c * x3) - s * y3});
    out.description =
        "non-monotonicity family: admits x^4 + y^4 at degree 4 yet no "
        "homogeneous sextic Lyapunov function for small rotation angles";
    out.homogeneous = true;
    out.params["c"] = c;
    out.params["s"] = s;
    return out;
  }
  if (name == "example51") {
    out.field = parse_vector_field(
        "dx1 = -0.15*x1^7 + 200*x1^6*x2 - 10.5*x1^5*x2^2 - 807*x1^4*x2^3 "
        "+ 14*x1^3*x2^4 + 600*x1^2*x2^5 - 3.5*x1*x2^6 + 9*x2^7\n"
        "dx2 = -9*x1^7 - 3.5*x1^6*x2 - 600*x1^5*x2^2 + 14*x1^4*x2^3 "
        "+ 807*x1^3*x2^4 - 10.5*x1^2*x2^5 - 200*x1*x2^6 - 0.15*x2^7\n");
    out.description =
        "degree-7 planar homogeneous system: no sos Lyapunov function below "
        "degree 8, an eight-lobed one at degree 8";
    out.homogeneous = true;
    return out;
  }
  if (name == "motzkin-cx") {
    out.field = parse_vector_field(
        "dx1 = -x1^3*x2^2 + 2*x1^3*x2 - x1^3 + 4*x1^2*x2^2 - 8*x1^2*x2 + 4*x1^2 "
        "- x1*x2^4 + 4*x1*x2^3 - 4*x1 + 10*x2^2\n"
        "dx2 = -9*x1^2*x2 + 10*x1^2 + 2*x1*x2^3 - 8*x1*x2^2 - 4*x1 - x2^3 "
        "+ 4*x2^2 - 4*x2\n");
    out.description =
        "planar system whose |x|^2/2 Lie derivative is the negated shifted "
        "Motzkin polynomial: quadratic sos search fails, quartic succeeds";
    return out;
  }
  throw std::invalid_argument("unknown gallery system: " + name);
}

inline std::vector<std::string> gallery_names() {
  return {"krstic", "bacciotti-rosier", "br-rotated", "nonmonotone",
          "example51", "motzkin-cx"};
}

}  // namespace soslyap

#endif
