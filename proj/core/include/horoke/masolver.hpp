#pragma once

// Desk-scale numerical realization of the coupled real Monge-Ampère
// continuity path at rank 1: conservative finite differences on a window of
// the cone, damped Newton with sparse LU, diagnostics (m_t, x_t, Stokes
// residual, mass), window-escape divergence detection, and the discrete
// Legendre transform. Everything here is double precision; the exact modules
// provide the data and the cross-checks.

#include "horoke/criteria.hpp"

#include <optional>

namespace horoke {

struct AssumptionViolated : std::runtime_error {
  int clause;
  AssumptionViolated(int cl, const std::string& w)
      : std::runtime_error("assumption clause " + std::to_string(cl) + ": " + w), clause(cl) {}
};
struct NewtonDiverged : std::runtime_error {
  explicit NewtonDiverged(const std::string& w) : std::runtime_error(w) {}
};
struct WindowTooSmall : std::runtime_error {
  explicit WindowTooSmall(const std::string& w) : std::runtime_error(w) {}
};
struct NonConvexInput : std::runtime_error {
  explicit NonConvexInput(const std::string& w) : std::runtime_error(w) {}
};

// density G(p) = norm · poly(p) · e^{lin·p} on [p_lo, p_hi], unit mass.
// Outside the domain both eval and cdf continue with a strictly positive
// slope so the Newton linearization stays informative when iterates
// overshoot (G may vanish at a domain endpoint).
struct MADensity {
  double p_lo = 0, p_hi = 0;
  std::vector<double> poly;  // ascending coefficients
  double lin = 0;
  double norm = 1;
  double ext_slope = 1;

  double eval(double p) const;
  double cdf(double p) const;  // ∫_{p_lo}^p; C^1 increasing continuation outside
  double barycenter() const;
};

struct MAProblem {
  bool half_line = false;  // true: cone = (-∞, 0]; false: full line
  std::vector<MADensity> G;

  // j(a) = j_lin·a + Σ_r (−ln sinh(−2 r a)) + w(a), w from the twist polytope
  double j_lin = 0;
  std::vector<double> sinh_rates;          // each r > 0; nonempty forces half_line
  std::vector<double> twist_vertices;      // −2(Δ_γ∩C̄⁺) in dual coords; empty = zero twist

  double j(double a) const;
  double dj(double a) const;
  double j_inf(int dir) const;  // dir = ±1
  double v_delta(int dir) const;
  double F_t(double t, int dir) const;  // t·Σbar_i + (1−t)v_Δ + j_∞ against dir

  // reference potentials u_ref_i = ln(e^{p_lo a} + e^{p_hi a}) + shift_i
  std::vector<double> ref_shift;
  double u_ref(size_t i, double a) const;
  double du_ref(size_t i, double a) const;
};

// Builds the rank-1 problem from a datum context and a decomposition;
// runs the assumption checks (throws AssumptionViolated / RankTooHigh).
MAProblem build_problem(const CriteriaContext& ctx, const Decomposition& dec);

struct MAConfig {
  int n = 3000;                // grid intervals
  double window = 15;          // initial half-width L (full line: [-L, L])
  double tol = 1e-9;           // Newton residual (sup norm); the conservative
                               // flux form floors near 1e-10 at n ~ 3000
  int max_newton = 200;
  int max_halvings = 25;
  int edge_nodes = 5;          // divergence: x_t within this many nodes of a truncation edge
  int max_enlargements = 2;    // window doublings before diagnosing divergence
};

struct MASolution {
  double t = 0;
  double a_lo = 0, a_hi = 0, h = 0;
  std::vector<double> nodes;
  std::vector<std::vector<double>> u;  // per class
  double residual_inf = 0;
  double mass = 0;      // ∫ e^{-ν_t} by the scheme's own rule
  double m_t = 0;       // min ν_t
  double x_t = 0;       // argmin ν_t
  int iterations = 0;
  int enlargements = 0;
  double min_second_difference = 0;

  std::vector<double> nu;  // ν_t on the grid
};

struct DivergenceDiagnosis {
  double t = 0;
  std::vector<double> x_t_history;  // per window attempt
  std::vector<double> window_history;
  std::string reason;
};

struct MAResult {
  std::optional<MASolution> solution;
  std::optional<DivergenceDiagnosis> divergence;
  bool converged() const { return solution.has_value(); }
};

MAResult solve_at_t(const MAProblem& p, double t, const MAConfig& cfg);

// ∫ dν_t(ξ) e^{−ν_t} over the grid for direction ξ = dir (±1 scaled);
// vanishes for converged solutions up to discretization error.
double stokes_residual(const MAProblem& p, const MASolution& s, double dir);

// Decomposed Stokes integrand: t·Σ∫du_m + (1−t)Σ∫du_ref + ∫dj, whose sum
// recombines to stokes_residual by construction.
struct StokesSplit {
  double potential_part, reference_part, j_part;
  double total() const { return potential_part + reference_part + j_part; }
};
StokesSplit stokes_split(const MAProblem& p, const MASolution& s, double dir);

// discrete Legendre transform of a convex grid function onto a p-grid
struct GridFunction {
  std::vector<double> x, y;
};
GridFunction legendre(const GridFunction& u, double p_lo, double p_hi, int n_out);

struct TrackPoint {
  double t;
  bool converged;
  double m_t, x_t;
  int enlargements;
};
std::vector<TrackPoint> track_minimizer(const MAProblem& p, const std::vector<double>& ts,
                                        const MAConfig& cfg);

}  // namespace horoke
