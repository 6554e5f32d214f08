#pragma once

// Exact rational scalars and vectors. Everything downstream of the polytope
// and root combinatorics is mpq_class; no floating point enters the exact path.

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace horoke {

using Rat = mpq_class;
using QVec = std::vector<Rat>;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Parses "p", "p/q" or a plain decimal like "-1.25" into an exact rational.
std::optional<Rat> parse_rat(const std::string& s);

std::string rat_str(const Rat& r);

inline int sgn(const Rat& r) { return sgn(r.get_num()); }

double to_double(const Rat& r);

QVec qvec(std::initializer_list<long> xs);

QVec add(const QVec& a, const QVec& b);
QVec sub(const QVec& a, const QVec& b);
QVec scale(const Rat& c, const QVec& a);
Rat dot(const QVec& a, const QVec& b);
bool is_zero(const QVec& a);

// Lexicographic order on coordinates; the canonical order used for all
// vertex/ray listings so outputs are deterministic.
bool lex_less(const QVec& a, const QVec& b);

// Divides by the gcd of numerators and the lcm of denominators, then fixes
// the sign of the first nonzero entry to +1. Identity on the zero vector.
QVec primitive(const QVec& a);

// Same rescaling but by a positive factor only: preserves the ray direction.
QVec primitive_dir(const QVec& a);

struct DimensionMismatch : std::runtime_error {
  explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace horoke
