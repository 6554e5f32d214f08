#pragma once

// Real root isolation for rational univariate polynomials via Sturm chains,
// with bisection refinement to requested width. All interval endpoints stay
// rational, so enclosures are exact statements about the polynomial.

#include "horoke/polynomial.hpp"

#include <vector>

namespace horoke {

struct RootInterval {
  Rat lo, hi;       // lo == hi means an exact rational root
  bool exact() const { return lo == hi; }
  Rat mid() const { return (lo + hi) / 2; }
};

// Number of distinct real roots of p in (lo, hi].
int sturm_count(const std::vector<UPoly>& chain, const Rat& lo, const Rat& hi);

std::vector<UPoly> sturm_chain(const UPoly& p);

// All distinct real roots, isolated and refined to width <= width,
// sorted increasingly. Exact rational roots are detected and returned
// as point intervals.
std::vector<RootInterval> isolate_real_roots(const UPoly& p, const Rat& width);

// Roots restricted to the open window (lo, hi).
std::vector<RootInterval> isolate_real_roots_in(const UPoly& p, const Rat& lo, const Rat& hi,
                                                const Rat& width);

}  // namespace horoke
