#pragma once

// Exact rational convex geometry: polytopes and polyhedral cones with dual
// H/V representations, Minkowski sums, dual cones, relative-interior
// membership with re-checkable certificates, and triangulations. Vertex and
// facet enumeration run double description; a brute-force subset enumerator
// lives in the tests as the independent oracle. Ambient dimension is capped
// at 6: exactness beats generality here.

#include "horoke/linalg.hpp"
#include "horoke/rational.hpp"

#include <stdexcept>
#include <vector>

namespace horoke {

constexpr size_t kMaxAmbientDim = 6;

struct Unbounded : std::runtime_error {
  Unbounded() : std::runtime_error("polytope is unbounded") {}
};
struct EmptySet : std::runtime_error {
  EmptySet() : std::runtime_error("hrep is infeasible") {}
};

// <normal, x> <= offset
struct Halfspace {
  QVec normal;
  Rat offset;
};

// <normal, x> == offset
struct Equation {
  QVec normal;
  Rat offset;
};

struct Polytope {
  size_t dim_ambient = 0;
  size_t dim_affine = 0;
  std::vector<QVec> vertices;       // canonical: deduplicated, lex sorted
  std::vector<Halfspace> facets;    // minimal within the affine hull
  std::vector<Equation> equations;  // affine hull
};

struct PolyCone {
  size_t dim_ambient = 0;
  std::vector<QVec> rays;           // primitive, lex sorted (modulo lineality)
  std::vector<QVec> lineality;      // canonical basis; nonempty => not pointed
  std::vector<Halfspace> facets;    // offsets all zero
  std::vector<Equation> equations;  // linear span
  bool pointed = true;

  bool is_trivial() const { return rays.empty() && lineality.empty(); }
};

// base + recession, with the hrep of the Minkowski sum
struct Polyhedron {
  Polytope base;
  PolyCone recession;
  std::vector<Halfspace> facets;
  std::vector<Equation> equations;
};

// ----- double description core -----

struct DDResult {
  std::vector<QVec> rays;
  std::vector<QVec> lineality;
};

// Extreme rays and lineality of {x : <a, x> >= 0 for all a in ineqs}.
DDResult dd_cone(const std::vector<QVec>& ineqs, size_t dim);

// ----- constructors -----

std::vector<QVec> vertices_from_hrep(const std::vector<Halfspace>& hrep, size_t dim);

Polytope polytope_from_hrep(const std::vector<Halfspace>& hrep,
                            const std::vector<Equation>& eqs, size_t dim);
Polytope polytope_from_vertices(const std::vector<QVec>& points);

PolyCone cone_from_generators(const std::vector<QVec>& gens, size_t dim);
PolyCone cone_from_hrep(const std::vector<Halfspace>& hrep, size_t dim);
PolyCone trivial_cone(size_t dim);
PolyCone full_space_cone(size_t dim);

// ----- operations -----

Polytope minkowski_sum(const Polytope& a, const Polytope& b);
Polytope translate(const Polytope& p, const QVec& v);
Polytope scale_polytope(const Rat& c, const Polytope& p);
Polytope intersect(const Polytope& p, const std::vector<Halfspace>& cuts,
                   const std::vector<Equation>& eq_cuts);

Polyhedron sum_with_cone(const Polytope& p, const PolyCone& c);

// Dual under a caller-provided symmetric bilinear form: {y : y^T G x >= 0 for
// all x in C}. Pass the identity Gram for the standard pairing.
PolyCone dual_cone(const PolyCone& c, const QMat& gram);
PolyCone negate_cone(const PolyCone& c);

Rat support_eval(const Polytope& p, const QVec& xi);

struct RelintCertificate {
  bool inside = false;
  // when !inside, exactly one of these identifies the obstruction
  bool off_affine_hull = false;
  int facet = -1;        // index into facets: violated or tight facet
  bool tight = false;    // facet is tight (boundary) rather than violated
  Rat min_slack;         // when inside: min over facets of (offset - <n,p>)
};

RelintCertificate contains_relint(const Polyhedron& s, const QVec& p);
RelintCertificate contains_relint(const Polytope& s, const QVec& p);
RelintCertificate contains_relint_cone(const PolyCone& c, const QVec& p);

// Largest eps > 0 with p + t*d feasible for |t| <= eps, d a direction in the
// affine hull; 1 when no facet constrains d. Used to re-check certificates.
Rat relint_eps(const std::vector<Halfspace>& facets, const QVec& p, const QVec& d);

bool polytope_equal(const Polytope& a, const Polytope& b);
bool contains_point(const Polytope& p, const QVec& x);

// ----- triangulation -----

struct Simplex {
  std::vector<QVec> verts;  // dim_affine + 1 points
};

enum class FanApex { Lowest, Highest };
std::vector<Simplex> triangulate(const Polytope& p, FanApex apex = FanApex::Lowest);

// Affine chart of the polytope's hull: x = origin + basis * y. The basis is
// the saturated integer lattice basis of the direction space, so Lebesgue
// measure in chart coordinates is the lattice-normalized measure.
struct AffineChart {
  QVec origin;
  std::vector<QVec> basis;  // dim_affine vectors in ambient coords
  QVec to_chart(const QVec& ambient) const;
  QVec to_ambient(const QVec& chart) const;
};

AffineChart lattice_chart(const Polytope& p);

// Lattice-normalized Euclidean volume of the simplex in chart coordinates.
Rat simplex_volume(const Simplex& s, const AffineChart& chart);

}  // namespace horoke
