#pragma once

// Existence deciders for the canonical-metric family: the general continuity
// path condition, Kähler-Einstein, greatest Ricci lower bound, Kähler-Ricci
// solitons (damped Newton on the exp weight), Mabuchi and power-Mabuchi
// metrics (exact linear/polynomial systems from moments), coupled pairs over
// one-parameter decomposition families, and the toric twisted check.
// Decisions on purely rational data are exact three-valued; exp-weight paths
// use certified enclosures and widen to Boundary rather than guess.

#include "horoke/quadrature.hpp"
#include "horoke/rootdata.hpp"
#include "horoke/sturm.hpp"

#include <map>
#include <optional>
#include <string>

namespace horoke {

enum class Verdict { Exists, NotExists, Boundary };
const char* verdict_name(Verdict v);

struct UnnormalizedWeights : std::runtime_error {
  explicit UnnormalizedWeights(const std::string& w) : std::runtime_error(w) {}
};
struct InvalidDecomposition : std::runtime_error {
  explicit InvalidDecomposition(const std::string& w) : std::runtime_error(w) {}
};
struct TargetOutsidePolytope : std::runtime_error {
  explicit TargetOutsidePolytope(const std::string& w) : std::runtime_error(w) {}
};
struct NewtonStall : std::runtime_error {
  explicit NewtonStall(const std::string& w) : std::runtime_error(w) {}
};
struct RankTooHigh : std::runtime_error {
  explicit RankTooHigh(const std::string& w) : std::runtime_error(w) {}
};
struct NotUnivariate : std::runtime_error {
  explicit NotUnivariate(const std::string& w) : std::runtime_error(w) {}
};

struct ClassDatum {
  Polytope moment_polytope;  // Δ⁺_i ∩ C̄⁺, ambient coordinates
  QVec isotropy_char;        // χ_i, kept for traceability
  WeightSpec weight;
};

struct Decomposition {
  std::vector<ClassDatum> classes;
  std::optional<Polytope> twist;  // Δ_γ; absent means γ = 0
};

struct ExistenceReport {
  Verdict verdict = Verdict::NotExists;
  std::string check;        // which decider produced this
  std::string certificate;  // human-readable certificate line
  Rat t_value = Rat(1);

  // relint certificate against the tested polyhedron (re-checkable)
  std::optional<RelintCertificate> relint;
  std::vector<Halfspace> tested_facets;
  std::vector<Equation> tested_equations;
  std::vector<Enclosure> tested_point;  // M-coordinates

  // solved functional ℓ(p) = <lin, p> + c0 (ambient coords), for
  // soliton/Mabuchi-type verdicts; residual for Newton solves
  std::optional<QVec> solved_lin;
  std::optional<Rat> solved_c0;
  std::optional<Enclosure> residual;

  // polynomial certificates (power-Mabuchi, coupled search)
  std::optional<UPoly> defining_poly;  // canonical integer form
  std::vector<RootInterval> roots;
  std::vector<bool> admissible;

  // named numerics for traceability (exact or interval entries)
  std::map<std::string, std::vector<Enclosure>> numerics;
};

// Precomputed per-datum context: DH polynomial, 2ρ_H, chamber and dual,
// the linear map onto spherical coordinates.
struct CriteriaContext {
  HorosymmetricDatum datum;
  DHPolynomial dh;
  TwoRho rho;
  ChamberPair chamber;
  QMat m_map;  // rank_m x ambient matrix of the map p ↦ m-coordinates of P(p)

  static CriteriaContext make(const HorosymmetricDatum& d);
  Polytope to_m(const Polytope& ambient) const;
  QVec to_m_point(const QVec& ambient) const;
  std::vector<Enclosure> to_m_box(const std::vector<Enclosure>& ambient) const;
};

// Throws InvalidDecomposition unless the Minkowski sum of the class polytopes
// (plus the twist polytope) equals the anticanonical polytope exactly.
void validate_decomposition(const Decomposition& dec, const Polytope& anticanonical);

// Theorem-level check: 0 ∈ Relint(t·Σbar_i + (1-t)·ΣΔ_i + Δ_γ − 2ρ_H − (C̄⁺)^∨)
// in spherical coordinates.
ExistenceReport check_general(const CriteriaContext& ctx, const Decomposition& dec, const Rat& t,
                              const Rat& tol);

// k = 1, constant weight, γ = 0, t = 1.
ExistenceReport check_ke(const CriteriaContext& ctx, const Polytope& anticanonical);

struct RicciLowerBound {
  Rat value;           // exact R(X) ∈ (0, 1]
  bool boundary_flag;  // degenerate ray / boundary case
  std::string note;
};
RicciLowerBound greatest_ricci_lower_bound(const CriteriaContext& ctx,
                                           const Polytope& anticanonical);

struct SolitonOptions {
  Rat grad_tol = Rat(1) / Rat(mpz_class("1000000000000"));  // 1e-12
  int max_iterations = 200;
  int max_halvings = 60;
};
ExistenceReport solve_soliton(const CriteriaContext& ctx, const Polytope& moment,
                              const SolitonOptions& opt = {});

ExistenceReport solve_mabuchi(const CriteriaContext& ctx, const Polytope& anticanonical);

ExistenceReport solve_power_mabuchi(const CriteriaContext& ctx, const Polytope& anticanonical,
                                    unsigned k);

// One-parameter family of decompositions: each class a segment whose
// endpoints depend affinely on the free parameter; direction must be
// parameter-independent.
struct FamilyClass {
  QVec v0_base, v0_coeff;  // v0(s) = v0_base + s·v0_coeff
  QVec v1_base, v1_coeff;
};
struct DecompositionFamily {
  std::string param_name = "s";
  std::vector<FamilyClass> classes;
  // admissibility window: each entry (c0, c1) imposes c0 + c1·s > 0
  std::vector<std::pair<Rat, Rat>> window;
};

struct CoupledSearchResult {
  UPoly defining_poly;  // canonical integer form in the free parameter
  std::vector<RootInterval> roots;
  std::vector<bool> admissible;
};
CoupledSearchResult coupled_search(const CriteriaContext& ctx, const DecompositionFamily& family,
                                   const Rat& root_width);

// Toric corollary: 0 ∈ Relint(bar + Δ_γ).
ExistenceReport check_twisted_ke_toric(const QVec& bar, const Polytope& twist);

}  // namespace horoke
