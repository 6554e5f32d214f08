#pragma once

// Sparse multivariate polynomials over Q (ambient dims are tiny) and dense
// univariate polynomials for the root-isolation machinery.

#include "horoke/rational.hpp"

#include <map>
#include <vector>

namespace horoke {

using Expo = std::vector<unsigned>;

struct Poly {
  size_t nvars = 0;
  std::map<Expo, Rat> terms;  // exponent vector -> coefficient, no zero coeffs

  Poly() = default;
  explicit Poly(size_t nv) : nvars(nv) {}

  static Poly constant(size_t nv, const Rat& c);
  static Poly variable(size_t nv, size_t i);
  // <coeffs, x> + c0 as a degree-1 polynomial
  static Poly linear(const QVec& coeffs, const Rat& c0);

  bool is_zero() const { return terms.empty(); }
  unsigned total_degree() const;
  void add_term(const Expo& e, const Rat& c);
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly pscale(const Rat& c, const Poly& p);
bool operator==(const Poly& a, const Poly& b);

Rat peval(const Poly& p, const QVec& x);
double peval_d(const Poly& p, const std::vector<double>& x);

// Substitutes x_i = subs[i], a polynomial in a fresh variable set; all subs
// must share one nvars. Exact composition via power caching.
Poly compose(const Poly& p, const std::vector<Poly>& subs);

Poly derivative(const Poly& p, size_t var);

// ----- dense univariate over Q -----

struct UPoly {
  // coefficient of x^i at index i; trailing zeros trimmed, zero poly = {}
  std::vector<Rat> c;

  size_t degree() const { return c.empty() ? 0 : c.size() - 1; }
  bool is_zero() const { return c.empty(); }
  void trim();
};

UPoly u_from(const std::vector<Rat>& ascending);
UPoly operator+(const UPoly& a, const UPoly& b);
UPoly operator-(const UPoly& a, const UPoly& b);
UPoly operator*(const UPoly& a, const UPoly& b);
Rat ueval(const UPoly& p, const Rat& x);
UPoly uderiv(const UPoly& p);
// division remainder a mod b, b != 0
UPoly urem(const UPoly& a, const UPoly& b);
UPoly ugcd(UPoly a, UPoly b);

// Divides by rational content and makes the leading coefficient positive;
// the canonical integer form used when reporting defining equations.
UPoly u_normalize(const UPoly& p);

// Extracts a univariate polynomial when p uses only variable `var` (others
// must have exponent 0 everywhere); throws otherwise.
UPoly to_univariate(const Poly& p, size_t var);

}  // namespace horoke
