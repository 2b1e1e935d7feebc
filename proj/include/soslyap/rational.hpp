#ifndef SOSLYAP_RATIONAL_HPP
#define SOSLYAP_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace soslyap {

// Exact rational scalar. Everything in the symbolic layer runs on these;
// doubles appear only at the SDP boundary.
//
// mpq_class does not canonicalize values built from a (num, den) pair, so all
// construction goes through make_rat / rat_from_* below.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat make_rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Exact: every finite double is a dyadic rational.
inline Rat rat_from_double(double x) { return Rat(x); }

inline double rat_to_double(const Rat& r) { return r.get_d(); }

// Accepts "3", "-3/4", "0.25", "-1.5e2" style literals, always exactly.
inline Rat rat_from_string(const std::string& s) {
  std::string t;
  t.reserve(s.size());
  for (char c : s)
    if (!isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw std::invalid_argument("empty rational literal");

  auto epos = t.find_first_of("eE");
  long exp10 = 0;
  if (epos != std::string::npos && t.find('/') == std::string::npos) {
    exp10 = std::stol(t.substr(epos + 1));
    t = t.substr(0, epos);
  }
  auto dot = t.find('.');
  Rat r;
  if (dot != std::string::npos) {
    std::string digits = t.substr(0, dot) + t.substr(dot + 1);
    size_t frac_len = t.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+")
      throw std::invalid_argument("bad rational literal: " + s);
    Int num(digits, 10);
    Int den(1);
    for (size_t i = 0; i < frac_len; ++i) den *= 10;
    r = make_rat(num, den);
  } else {
    if (r.set_str(t, 10) != 0)
      throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
  }
  while (exp10 > 0) { r *= 10; --exp10; }
  while (exp10 < 0) { r /= 10; ++exp10; }
  return r;
}

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

inline int sgn(const Rat& r) { return sgn(r.get_num()); }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline Rat rat_pow(const Rat& base, unsigned e) {
  Rat acc(1), b = base;
  while (e) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

// Best rational approximation to x with denominator <= max_den, via
// continued-fraction convergents. Used when lifting float Gram matrices
// to exact ones.
inline Rat rat_round(double x, const Int& max_den) {
  if (max_den < 1) throw std::invalid_argument("rat_round: bound < 1");
  Rat target = rat_from_double(x);
  Int num = target.get_num(), den = target.get_den();
  if (den <= max_den) return target;

  // Continued-fraction expansion of num/den, tracking convergents.
  Int p0(1), q0(0), p1(0), q1(1);  // p0/q0 = prev, p1/q1 = prev-prev swapped in
  Int a, r, n = num, d = den;
  Int pp(0), qq(1), p(1), q(0);
  // convergents: h_{-1}=1/0, h_{-2}=0/1
  Int h1(1), k1(0), h0(0), k0(1);
  while (d != 0) {
    mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    Int h2 = a * h1 + h0;
    Int k2 = a * k1 + k0;
    if (k2 > max_den) {
      // Semiconvergent with the largest admissible partial quotient.
      Int t = (max_den - k0) / k1;
      Int hs = t * h1 + h0;
      Int ks = t * k1 + k0;
      Rat best = make_rat(h1, k1);
      if (ks >= 1) {
        Rat semi = make_rat(hs, ks);
        if (rat_abs(semi - target) < rat_abs(best - target)) best = semi;
      }
      return best;
    }
    h0 = h1; k0 = k1; h1 = h2; k1 = k2;
    n = d; d = r;
  }
  return make_rat(h1, k1);
}

}  // namespace soslyap

#endif
