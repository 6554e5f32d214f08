#pragma once

// Exact and certified integration over polytopes: polynomials by per-simplex
// Dirichlet moments (exact rationals), polynomial × exp(affine) by the
// closed-form PolyExp reduction with exact degenerate limits enclosed via
// MPFR. Measures are lattice-normalized Lebesgue on the affine hull.

#include "horoke/expsum.hpp"
#include "horoke/geometry.hpp"
#include "horoke/polynomial.hpp"

namespace horoke {

struct DegenerateMass : std::runtime_error {
  DegenerateMass() : std::runtime_error("weighted mass vanishes") {}
};
struct NonpositiveWeight : std::runtime_error {
  explicit NonpositiveWeight(const std::string& w) : std::runtime_error(w) {}
};

// The density e^{h∘ℓ}: constant, affine (Mabuchi), exp-affine (soliton) or
// power-affine (the interpolation family). ℓ(p) = <lin, p> + c0.
struct WeightSpec {
  enum class Kind { Constant, Affine, ExpAffine, PowerAffine };
  Kind kind = Kind::Constant;
  QVec lin;
  Rat c0;
  unsigned power = 1;  // PowerAffine exponent k >= 1

  static WeightSpec constant();
  static WeightSpec affine(const QVec& lin, const Rat& c0);
  static WeightSpec exp_affine(const QVec& xi, const Rat& c);
  static WeightSpec power_affine(const QVec& lin, const Rat& c0, unsigned k);

  bool rational_kind() const { return kind != Kind::ExpAffine; }
  // the polynomial factor of the weight (1 for exp-affine)
  Poly poly_factor(size_t nvars) const;
};

// Exact integral of a polynomial over the polytope's affine hull.
Rat integrate_poly(const Polytope& p, const Poly& f,
                   FanApex apex = FanApex::Lowest);

// Volume against the ambient measure: zero for lower-dimensional bodies.
Rat ambient_volume(const Polytope& p);

// Closed form of ∫_P f(x) e^{<xi,x>} dx as Σ r_k e^{s_k}.
ExpSum integrate_poly_exp_sym(const Polytope& p, const Poly& f, const QVec& xi,
                              FanApex apex = FanApex::Lowest);

// Certified enclosure of the same; exact rational when xi = 0.
Enclosure integrate_poly_exp(const Polytope& p, const Poly& f, const QVec& xi,
                             const Rat& rel_tol);

// Default certified relative tolerance for exp integrals (1e-20).
Rat default_exp_tol();

// Weighted Duistermaat-Heckman barycenter: (∫ p·w·dh) / (∫ w·dh). Exact for
// rational weight kinds; enclosures for exp-affine. Throws NonpositiveWeight
// when an affine-kind weight fails to be positive at a vertex, DegenerateMass
// when the denominator vanishes.
std::vector<Enclosure> dh_barycenter(const Polytope& p, const Poly& dh, const WeightSpec& w,
                                     const Rat& rel_tol);

// ∫ w·dh over p (the barycenter denominator), same conventions.
Enclosure weighted_mass(const Polytope& p, const Poly& dh, const WeightSpec& w,
                        const Rat& rel_tol);

// Exact moments ∫ ℓ(p)^j · m(p) · dh dp for j = 0..jmax, where m is any
// polynomial; the building block for the Mabuchi linear systems.
std::vector<Rat> affine_power_moments(const Polytope& p, const Poly& dh, const QVec& lin,
                                      const Rat& c0, const Poly& m, unsigned jmax);

}  // namespace horoke
