#ifndef SOSLYAP_POLYNOMIAL_HPP
#define SOSLYAP_POLYNOMIAL_HPP

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "soslyap/monomial.hpp"
#include "soslyap/rational.hpp"

namespace soslyap {

// Multivariate polynomial with exact rational coefficients. Terms are kept
// in a grlex-ordered map with no stored zeros, so equal polynomials have
// identical representations.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rat, GrlexLess>;

  Polynomial() : nvars_(0) {}
  explicit Polynomial(size_t nvars) : nvars_(nvars) {}

  static Polynomial zero(size_t nvars) { return Polynomial(nvars); }

  static Polynomial constant(size_t nvars, const Rat& c) {
    Polynomial p(nvars);
    p.add_term(Monomial(nvars), c);
    return p;
  }

  static Polynomial variable(size_t nvars, size_t i) {
    if (i >= nvars) throw std::invalid_argument("variable index out of range");
    Polynomial p(nvars);
    Monomial m(nvars);
    m.exps[i] = 1;
    p.add_term(m, Rat(1));
    return p;
  }

  static Polynomial monomial(const Monomial& m, const Rat& c = Rat(1)) {
    Polynomial p(m.nvars());
    p.add_term(m, c);
    return p;
  }

  size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  // Degree of the zero polynomial is the -1 sentinel; it never takes part
  // in degree arithmetic.
  int degree() const {
    if (terms_.empty()) return -1;
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max<int>(d, m.degree());
    return d;
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    uint32_t d = terms_.begin()->first.degree();
    for (const auto& [m, c] : terms_)
      if (m.degree() != d) return false;
    return true;
  }

  Rat coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
  }

  void add_term(const Monomial& m, const Rat& c) {
    if (m.nvars() != nvars_)
      throw std::invalid_argument("term dimension mismatch");
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Polynomial operator-() const {
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_dims(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }

  Polynomial& operator-=(const Polynomial& o) {
    check_dims(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_dims(b);
    Polynomial r(a.nvars_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }

  friend Polynomial operator*(const Rat& c, const Polynomial& p) {
    Polynomial r(p.nvars_);
    if (c == 0) return r;
    for (const auto& [m, pc] : p.terms_) r.terms_.emplace(m, c * pc);
    return r;
  }

  Polynomial pow(unsigned e) const {
    Polynomial acc = constant(nvars_, Rat(1));
    Polynomial b = *this;
    unsigned k = e;
    while (k) {
      if (k & 1) acc = acc * b;
      if (k >>= 1) b = b * b;
    }
    return acc;
  }

  bool operator==(const Polynomial& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  Polynomial derivative(size_t var) const {
    if (var >= nvars_) throw std::invalid_argument("derivative: bad variable");
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_) {
      if (m.exps[var] == 0) continue;
      Monomial d = m;
      d.exps[var] -= 1;
      r.add_term(d, c * Rat(m.exps[var]));
    }
    return r;
  }

  std::vector<Polynomial> gradient() const {
    std::vector<Polynomial> g;
    g.reserve(nvars_);
    for (size_t i = 0; i < nvars_; ++i) g.push_back(derivative(i));
    return g;
  }

  // Exact composition p(map[0](x), ..., map[n-1](x)).
  Polynomial substitute(const std::vector<Polynomial>& map) const {
    if (map.size() != nvars_)
      throw std::invalid_argument("substitute: map length != nvars");
    size_t out_vars = map.empty() ? 0 : map[0].nvars();
    for (const auto& q : map)
      if (q.nvars() != out_vars)
        throw std::invalid_argument("substitute: inconsistent map dimensions");
    Polynomial r(out_vars);
    for (const auto& [m, c] : terms_) {
      Polynomial t = Polynomial::constant(out_vars, c);
      for (size_t i = 0; i < nvars_; ++i)
        if (m.exps[i] > 0) t = t * map[i].pow(m.exps[i]);
      r += t;
    }
    return r;
  }

  // y^target_degree * p(x/y) with y appended as variable n+1.
  Polynomial homogenize(uint32_t target_degree) const {
    int d = degree();
    if (d >= 0 && target_degree < static_cast<uint32_t>(d))
      throw std::invalid_argument("homogenize: target degree below degree(p)");
    Polynomial r(nvars_ + 1);
    for (const auto& [m, c] : terms_) {
      Monomial h(nvars_ + 1);
      for (size_t i = 0; i < nvars_; ++i) h.exps[i] = m.exps[i];
      h.exps[nvars_] = target_degree - m.degree();
      r.add_term(h, c);
    }
    return r;
  }

  // Sets the last variable to 1, dropping it from the ambient space.
  Polynomial dehomogenize() const {
    if (nvars_ == 0) throw std::invalid_argument("dehomogenize: no variables");
    Polynomial r(nvars_ - 1);
    for (const auto& [m, c] : terms_) {
      Monomial d(nvars_ - 1);
      for (size_t i = 0; i + 1 < nvars_; ++i) d.exps[i] = m.exps[i];
      r.add_term(d, c);
    }
    return r;
  }

  Rat evaluate(const std::vector<Rat>& point) const {
    if (point.size() != nvars_)
      throw std::invalid_argument("evaluate: point dimension mismatch");
    Rat acc(0);
    for (const auto& [m, c] : terms_) {
      Rat t = c;
      for (size_t i = 0; i < nvars_; ++i)
        if (m.exps[i]) t *= rat_pow(point[i], m.exps[i]);
      acc += t;
    }
    return acc;
  }

  double evaluate(const std::vector<double>& point) const {
    if (point.size() != nvars_)
      throw std::invalid_argument("evaluate: point dimension mismatch");
    double acc = 0;
    for (const auto& [m, c] : terms_) {
      double t = rat_to_double(c);
      for (size_t i = 0; i < nvars_; ++i)
        for (uint32_t e = 0; e < m.exps[i]; ++e) t *= point[i];
      acc += t;
    }
    return acc;
  }

  Rat max_abs_coeff() const {
    Rat m(0);
    for (const auto& [mon, c] : terms_) {
      Rat a = rat_abs(c);
      if (a > m) m = a;
    }
    return m;
  }

  std::string to_string() const;

 private:
  void check_dims(const Polynomial& o) const {
    if (nvars_ != o.nvars_)
      throw std::invalid_argument("polynomial dimension mismatch");
  }

  size_t nvars_;
  TermMap terms_;
};

enum class PolyOp { add, sub, mul };

inline Polynomial arithmetic(const Polynomial& a, const Polynomial& b, PolyOp op) {
  switch (op) {
    case PolyOp::add: return a + b;
    case PolyOp::sub: return a - b;
    case PolyOp::mul: return a * b;
  }
  throw std::logic_error("unreachable");
}

// Orbit sum W(x,y) + W(y,-x) + W(-x,-y) + W(-y,x); the result is invariant
// under the quarter-turn (x,y) -> (y,-x).
inline Polynomial symmetrize_quarter_turn(const Polynomial& w) {
  if (w.nvars() != 2)
    throw std::invalid_argument("symmetrize_quarter_turn: needs 2 variables");
  const Polynomial x = Polynomial::variable(2, 0);
  const Polynomial y = Polynomial::variable(2, 1);
  Polynomial r = w;
  r += w.substitute({y, -x});
  r += w.substitute({-x, -y});
  r += w.substitute({-y, x});
  return r;
}

// x' grad(V) - d*V, identically zero for every form of degree d (Euler).
inline Polynomial euler_residual(const Polynomial& v) {
  if (!v.is_homogeneous() || v.is_zero() || v.degree() < 1)
    throw std::invalid_argument("euler_residual: input must be a form of degree >= 1");
  const int d = v.degree();
  Polynomial acc(v.nvars());
  auto grad = v.gradient();
  for (size_t i = 0; i < v.nvars(); ++i)
    acc += Polynomial::variable(v.nvars(), i) * grad[i];
  acc -= Rat(d) * v;
  return acc;
}

// --- text format ------------------------------------------------------
//
// ASCII expressions over x1..xn with integer, decimal, and num/den literals
// and operators + - * ^ and parentheses, e.g. "-0.15*x1^7 + 200*x1^6*x2".
// '#' starts a comment that runs to end of line.

namespace detail {

struct PolyParser {
  std::string src;
  size_t pos = 0;
  size_t nvars;

  PolyParser(std::string s, size_t n) : src(std::move(s)), nvars(n) {}

  [[noreturn]] void fail(const std::string& msg) const {
    size_t line = 1, col = 1;
    for (size_t i = 0; i < pos && i < src.size(); ++i) {
      if (src[i] == '\n') { ++line; col = 1; } else ++col;
    }
    throw std::runtime_error("parse error at line " + std::to_string(line) +
                             ", column " + std::to_string(col) + ": " + msg);
  }

  void skip_ws() {
    while (pos < src.size()) {
      if (src[pos] == '#') {
        while (pos < src.size() && src[pos] != '\n') ++pos;
      } else if (isspace(static_cast<unsigned char>(src[pos]))) {
        ++pos;
      } else {
        break;
      }
    }
  }

  bool eat(char c) {
    skip_ws();
    if (pos < src.size() && src[pos] == c) { ++pos; return true; }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }

  Polynomial parse_expr() {
    Polynomial acc = parse_term();
    for (;;) {
      if (eat('+')) acc += parse_term();
      else if (eat('-')) acc -= parse_term();
      else return acc;
    }
  }

  Polynomial parse_term() {
    Polynomial acc = parse_factor();
    while (peek() == '*' ) {
      eat('*');
      acc = acc * parse_factor();
    }
    return acc;
  }

  Polynomial parse_factor() {
    Polynomial base = parse_primary();
    if (eat('^')) {
      unsigned e = parse_uint();
      base = base.pow(e);
    }
    return base;
  }

  Polynomial parse_primary() {
    skip_ws();
    if (pos >= src.size()) fail("unexpected end of input");
    char c = src[pos];
    if (c == '(') {
      ++pos;
      Polynomial p = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (c == '-') { ++pos; return -parse_factor(); }
    if (c == '+') { ++pos; return parse_factor(); }
    if (c == 'x') return parse_var();
    if (isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    fail(std::string("unexpected character '") + c + "'");
  }

  Polynomial parse_var() {
    ++pos;  // 'x'
    size_t idx = parse_uint();
    if (idx < 1 || idx > nvars) fail("variable index out of range");
    return Polynomial::variable(nvars, idx - 1);
  }

  unsigned parse_uint() {
    skip_ws();
    size_t start = pos;
    while (pos < src.size() && isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
    if (pos == start) fail("expected integer");
    return static_cast<unsigned>(std::stoul(src.substr(start, pos - start)));
  }

  Polynomial parse_number() {
    size_t start = pos;
    while (pos < src.size() &&
           (isdigit(static_cast<unsigned char>(src[pos])) || src[pos] == '.'))
      ++pos;
    std::string lit = src.substr(start, pos - start);
    // Rational literal num/den: the '/' binds to the number only.
    if (pos < src.size() && src[pos] == '/') {
      size_t save = pos;
      ++pos;
      size_t dstart = pos;
      while (pos < src.size() && isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
      if (pos > dstart) {
        lit += "/" + src.substr(dstart, pos - dstart);
      } else {
        pos = save;
      }
    }
    try {
      return Polynomial::constant(nvars, rat_from_string(lit));
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }
};

// Largest variable index mentioned anywhere in the expression text.
inline size_t scan_max_var(const std::string& s) {
  size_t best = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '#') {
      while (i < s.size() && s[i] != '\n') ++i;
      continue;
    }
    if (s[i] == 'x' && i + 1 < s.size() && isdigit(static_cast<unsigned char>(s[i + 1]))) {
      size_t j = i + 1, v = 0;
      while (j < s.size() && isdigit(static_cast<unsigned char>(s[j])))
        v = v * 10 + (s[j++] - '0');
      best = std::max(best, v);
      i = j - 1;
    }
  }
  return best;
}

}  // namespace detail

inline Polynomial parse_polynomial(const std::string& text, size_t nvars) {
  detail::PolyParser p(text, nvars);
  Polynomial r = p.parse_expr();
  p.skip_ws();
  if (p.pos != p.src.size()) p.fail("trailing input");
  return r;
}

inline Polynomial parse_polynomial(const std::string& text) {
  size_t n = detail::scan_max_var(text);
  return parse_polynomial(text, std::max<size_t>(n, 1));
}

inline std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  // Highest-degree terms first, the way the systems are written in print.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rat a = rat_abs(c);
    bool neg = c < 0;
    std::string piece;
    if (m.is_constant()) {
      piece = rat_to_string(a);
    } else if (a == 1) {
      piece = monomial_to_string(m);
    } else {
      piece = rat_to_string(a) + "*" + monomial_to_string(m);
    }
    if (out.empty()) {
      out = (neg ? "-" : "") + piece;
    } else {
      out += (neg ? " - " : " + ") + piece;
    }
  }
  return out;
}

}  // namespace soslyap

#endif
