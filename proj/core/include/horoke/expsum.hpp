#pragma once

// Closed forms for integrals of polynomial × exp(affine) densities are finite
// sums  Σ r_k · e^{s_k}  with rational r_k, s_k. Enclosing such a sum with
// outward-rounded MPFR gives a rigorous rational interval at any requested
// tolerance; that interval is the HighPrecisionScalar flowing into verdicts.

#include "horoke/polynomial.hpp"
#include "horoke/rational.hpp"

#include <map>
#include <vector>

namespace horoke {

// Rigorous rational interval [lo, hi].
struct Enclosure {
  Rat lo, hi;

  static Enclosure exact(const Rat& r) { return {r, r}; }
  bool is_exact() const { return lo == hi; }
  Rat mid() const { return (lo + hi) / 2; }
  Rat width() const { return hi - lo; }
  bool contains(const Rat& r) const { return lo <= r && r <= hi; }
};

Enclosure operator+(const Enclosure& a, const Enclosure& b);
Enclosure operator-(const Enclosure& a, const Enclosure& b);
Enclosure operator*(const Enclosure& a, const Enclosure& b);
// b must not contain 0
Enclosure operator/(const Enclosure& a, const Enclosure& b);

// Σ r_k e^{s_k} as a map s_k -> r_k (merged exponents).
struct ExpSum {
  std::map<Rat, Rat> terms;

  void add(const Rat& coeff, const Rat& expo);
  bool is_zero() const { return terms.empty(); }
  // exact value when every exponent is zero
  bool is_rational() const;
  Rat rational_value() const;
};

ExpSum operator+(const ExpSum& a, const ExpSum& b);
ExpSum esc_scale(const Rat& c, const ExpSum& a);

struct ToleranceUnreachable : std::runtime_error {
  explicit ToleranceUnreachable(const std::string& w) : std::runtime_error(w) {}
};

// Rigorous enclosure with relative width <= rel_tol (absolute floor abs_tol
// guards sums that vanish). Deterministic: fixed precision ladder, fixed
// term order.
Enclosure enclose(const ExpSum& s, const Rat& rel_tol, const Rat& abs_tol);

// ----- mixed polynomial-exponential ring used by simplex integration -----
//
// A PolyExp value is  Σ_k  p_k(y) · e^{c_k + <λ_k, y>}  over m variables.
// Closed under products with polynomials and under integration of the last
// variable over [0, 1 - y_1 - ... - y_{m-1}], which is how iterated simplex
// integration proceeds. Exponents are compared exactly, so the degenerate
// λ = 0 limits take the polynomial branch with no epsilon thresholds.

struct PolyExp {
  size_t nvars = 0;
  struct LexCmp {
    bool operator()(const QVec& a, const QVec& b) const { return lex_less(a, b); }
  };
  // key[0] = constant exponent offset, key[1..m] = linear exponent coeffs
  std::map<QVec, Poly, LexCmp> terms;

  explicit PolyExp(size_t nv = 0) : nvars(nv) {}
  static PolyExp from_poly_exp(const Poly& p, const QVec& lin, const Rat& c0);
  void add_term(const QVec& key, const Poly& p);
};

// Integrates out the last variable over [0, 1 - sum(previous vars)],
// returning a PolyExp in one fewer variable.
PolyExp integrate_last(const PolyExp& f);

// Full iterated integral over the standard simplex; input must have nvars
// variables, result is the scalar ExpSum.
ExpSum integrate_simplex(const PolyExp& f);

}  // namespace horoke
