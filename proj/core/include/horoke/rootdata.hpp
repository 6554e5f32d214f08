#pragma once

// The horosymmetric combinatorial datum: root lists, Killing form, spherical
// lattice, chamber, and the projection onto M⊗R. Root lists are input data
// (no Lie-theoretic derivation happens here), validated for consistency, and
// turned into the Duistermaat-Heckman polynomial, 2ρ_H and the restricted
// chamber with its Killing dual.

#include "horoke/geometry.hpp"
#include "horoke/linalg.hpp"
#include "horoke/polynomial.hpp"

#include <string>
#include <vector>

namespace horoke {

struct InvalidKilling : std::runtime_error {
  explicit InvalidKilling(const std::string& w) : std::runtime_error(w) {}
};
struct ChamberDegenerate : std::runtime_error {
  explicit ChamberDegenerate(const std::string& w) : std::runtime_error(w) {}
};
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& w) : std::runtime_error(w) {}
};

struct RestrictedRoot {
  QVec root;
  unsigned multiplicity = 1;
};

struct HorosymmetricDatum {
  size_t ambient_rank = 0;
  QMat killing;                      // Gram matrix of the pairing on X(T)⊗R
  std::vector<QVec> roots_Qu;        // Φ_{Q^u}
  std::vector<QVec> roots_s_plus;    // Φ_s^+
  std::vector<RestrictedRoot> restricted_roots;  // stored; P_DH does not use them
  std::vector<QVec> spherical_basis; // basis of M⊗R inside X(T)⊗R
  std::vector<QVec> lattice;         // lattice basis of M (grid validation, reports)
  QMat projection;                   // the map P: X(T)⊗R -> M⊗R (ambient matrix)
  std::vector<QVec> soliton_directions;  // admissible exp-weight functionals
  std::vector<QVec> central_directions;  // admissible Mabuchi functionals

  size_t rank_m() const { return spherical_basis.size(); }
  Rat kappa(const QVec& a, const QVec& b) const { return dot(a, mat_vec(killing, b)); }
};

struct DHPolynomial {
  std::vector<QVec> factors;  // linear forms q ↦ <factor, q>, one per root
  Poly expanded;

  Rat eval(const QVec& q) const { return peval(expanded, q); }
  unsigned degree() const { return (unsigned)factors.size(); }
};

// Validates and returns the datum; throws InvalidKilling / ChamberDegenerate /
// ValidationError with the failing clause.
HorosymmetricDatum build_datum(HorosymmetricDatum raw);

DHPolynomial dh_polynomial(const HorosymmetricDatum& d);

struct TwoRho {
  QVec ambient;    // Σ roots
  QVec projected;  // image under P
  QVec m_coords;   // coordinates in the spherical basis
};
TwoRho two_rho_H(const HorosymmetricDatum& d);

// C̄⁺ and its dual under the Killing pairing, both as cones in coordinates
// with respect to the spherical basis. Φ_s^+ empty gives the full space and
// the zero dual.
struct ChamberPair {
  PolyCone chamber;
  PolyCone dual;
  QMat gram_m;  // Killing Gram restricted to the spherical basis
};
ChamberPair positive_chamber(const HorosymmetricDatum& d);

// Coordinates of P(v) with respect to the spherical basis.
QVec to_m_coords(const HorosymmetricDatum& d, const QVec& ambient);

// Functional <f, ·> on ambient space restricted to M-coordinates.
QVec functional_to_m(const HorosymmetricDatum& d, const QVec& f);

}  // namespace horoke
