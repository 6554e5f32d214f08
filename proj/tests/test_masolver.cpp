#include <doctest.h>

#include "horoke/catalog.hpp"
#include "horoke/masolver.hpp"

#include <cmath>

using namespace horoke;

namespace {

MAProblem ke_problem(const std::string& id) {
  const auto& f = catalog::get(id);
  auto ctx = CriteriaContext::make(f.datum);
  Decomposition dec;
  dec.classes.push_back(
      {f.anticanonical, QVec(f.datum.ambient_rank, Rat(0)), WeightSpec::constant()});
  return build_problem(ctx, dec);
}

MAConfig small_cfg(int n = 800, double window = 12) {
  MAConfig cfg;
  cfg.n = n;
  cfg.window = window;
  return cfg;
}

}  // namespace

TEST_CASE("build_problem: F3_2.36 data and assumption checks") {
  MAProblem p = ke_problem("F3_2.36");
  CHECK(!p.half_line);
  CHECK(p.j_lin == doctest::Approx(3.0));
  CHECK(p.G.size() == 1);
  CHECK(p.G[0].p_lo == doctest::Approx(-5.0));
  CHECK(p.G[0].p_hi == doctest::Approx(-1.0));
  CHECK(p.G[0].cdf(p.G[0].p_hi) == doctest::Approx(1.0));
  CHECK(p.G[0].barycenter() == doctest::Approx(-117.0 / 31));
  // growth positivity on both rays
  CHECK(p.F_t(0.25, 1) > 0);
  CHECK(p.j_inf(1) + p.v_delta(1) > 0);
  CHECK(p.j_inf(-1) + p.v_delta(-1) > 0);
  // condition sign flips exactly at R = 31/43
  CHECK(p.F_t(31.0 / 43 - 1e-9, 1) > 0);
  CHECK(p.F_t(31.0 / 43 + 1e-9, 1) < 0);
}

TEST_CASE("build_problem rejects rank-2 data and flags density zeros") {
  const auto& f = catalog::get("RA1");
  auto ctx = CriteriaContext::make(f.datum);
  Decomposition dec;
  dec.classes.push_back({f.anticanonical, QVec(2, Rat(0)), WeightSpec::constant()});
  CHECK_THROWS_AS(build_problem(ctx, dec), RankTooHigh);
  // a class polytope crossing the density zero: [0,3] contains the zero of
  // t(4-t) only at the endpoint, so it builds; shift it to cross t=0
  const auto& g = catalog::get("F3_2.33");
  auto ctx2 = CriteriaContext::make(g.datum);
  Decomposition dec2;
  Polytope crossing = translate(g.anticanonical, {Rat(-2), Rat(2)});
  dec2.classes.push_back({crossing, QVec(2, Rat(0)), WeightSpec::constant()});
  CHECK_THROWS_AS(build_problem(ctx2, dec2), AssumptionViolated);
}

TEST_CASE("gamma = 0 gives j equal to the linear asymptotic exactly") {
  MAProblem p = ke_problem("F3_3.31");
  CHECK(p.twist_vertices.empty());
  for (double a : {-3.0, -1.0, 0.0, 2.0}) CHECK(p.j(a) == doctest::Approx(p.j_lin * a));
  CHECK(p.j_inf(1) == doctest::Approx(p.j_lin));
  CHECK(p.j_inf(-1) == doctest::Approx(-p.j_lin));
}

TEST_CASE("solve at small t: residual, mass, convexity, determinism") {
  MAProblem p = ke_problem("F3_2.36");
  MAConfig cfg = small_cfg();
  auto r1 = solve_at_t(p, 0.25, cfg);
  REQUIRE(r1.converged());
  const MASolution& s = *r1.solution;
  CHECK(s.residual_inf <= cfg.tol);
  CHECK(std::fabs(s.mass - 1.0) <= 1e-6);
  CHECK(s.min_second_difference >= -1e-10);
  // determinism: identical run gives identical numbers
  auto r2 = solve_at_t(p, 0.25, cfg);
  REQUIRE(r2.converged());
  CHECK(r2.solution->m_t == s.m_t);
  CHECK(r2.solution->x_t == s.x_t);
  CHECK(r2.solution->residual_inf == s.residual_inf);
  // du stays inside the polytope
  for (size_t j = 0; j + 1 < s.nodes.size(); ++j) {
    double du = (s.u[0][j + 1] - s.u[0][j]) / s.h;
    CHECK(du >= p.G[0].p_lo - 1e-9);
    CHECK(du <= p.G[0].p_hi + 1e-9);
  }
}

TEST_CASE("adding a constant to the references shifts solutions reproducibly") {
  MAProblem p = ke_problem("F3_2.36");
  MAConfig cfg = small_cfg();
  auto base = solve_at_t(p, 0.5, cfg);
  REQUIRE(base.converged());
  MAProblem q = p;
  q.ref_shift[0] += 1.0;  // u_ref -> u_ref + 1
  auto shifted = solve_at_t(q, 0.5, cfg);
  REQUIRE(shifted.converged());
  // nu_t is unchanged: t*u + (1-t)(uref+1) + j means u absorbs -(1-t)/t
  double expect = -(1 - 0.5) / 0.5;
  double got = shifted.solution->u[0][100] - base.solution->u[0][100];
  CHECK(got == doctest::Approx(expect).epsilon(1e-6));
  CHECK(shifted.solution->m_t == doctest::Approx(base.solution->m_t).epsilon(1e-8));
}

TEST_CASE("stokes residual: zero direction, split identity, refinement decay") {
  MAProblem p = ke_problem("F3_2.36");
  auto r = solve_at_t(p, 0.5, small_cfg(750, 12));
  REQUIRE(r.converged());
  CHECK(stokes_residual(p, *r.solution, 0.0) == 0.0);
  // the split recombines to the total by construction, and the parts are
  // individually nontrivial
  StokesSplit sp = stokes_split(p, *r.solution, 1.0);
  CHECK(sp.total() == doctest::Approx(stokes_residual(p, *r.solution, 1.0)));
  CHECK(std::fabs(sp.potential_part) > 1e-3);
  // refining the grid reduces the residual by at least 1.8x
  auto r2 = solve_at_t(p, 0.5, small_cfg(1500, 12));
  REQUIRE(r2.converged());
  double c1 = std::fabs(stokes_residual(p, *r.solution, 1.0));
  double c2 = std::fabs(stokes_residual(p, *r2.solution, 1.0));
  CHECK(c1 / c2 >= 1.8);
}

TEST_CASE("track_minimizer: KE entry stays in a fixed ball, constant path is constant") {
  MAProblem p = ke_problem("F3_3.25");
  MAConfig cfg = small_cfg();
  auto path = track_minimizer(p, {0.1, 0.25, 0.5, 0.75, 1.0}, cfg);
  REQUIRE(path.size() == 5);
  for (const auto& tp : path) {
    CHECK(tp.converged);
    CHECK(std::fabs(tp.x_t) <= 3.0);
    CHECK(tp.enlargements == 0);
    CHECK(std::fabs(tp.m_t) <= 5.0);
  }
  auto c1 = track_minimizer(p, {0.5, 0.5}, cfg);
  CHECK(c1[0].m_t == c1[1].m_t);
  CHECK(c1[0].x_t == c1[1].x_t);
}

TEST_CASE("F3_2.36: track across R(X) shows blow-up of x_t") {
  MAProblem p = ke_problem("F3_2.36");
  MAConfig cfg = small_cfg(1000, 15);
  double R = 31.0 / 43;
  auto path = track_minimizer(p, {0.25, 0.5, R - 0.02, R + 0.02}, cfg);
  CHECK(path[0].converged);
  CHECK(path[1].converged);
  CHECK(path[2].converged);
  CHECK(!path[3].converged);
  // x_t increases monotonically toward the obstruction
  CHECK(path[0].x_t < path[1].x_t);
  CHECK(path[1].x_t < path[2].x_t);
}

TEST_CASE("legendre transform: quadratic, support function, involution error") {
  // quadratic |x|^2/2 -> |p|^2/2
  GridFunction u;
  int n = 1000;
  double L = 2;
  for (int j = 0; j <= n; ++j) {
    double x = -L + 2 * L * j / n;
    u.x.push_back(x);
    u.y.push_back(x * x / 2);
  }
  GridFunction lu = legendre(u, -1.5, 1.5, n);
  for (size_t i = 0; i < lu.x.size(); i += 100)
    CHECK(lu.y[i] == doctest::Approx(lu.x[i] * lu.x[i] / 2).epsilon(1e-2));
  // support function duality: u = max(p_lo x, p_hi x) has transform 0 on
  // [p_lo, p_hi]
  GridFunction v;
  for (int j = 0; j <= n; ++j) {
    double x = -L + 2 * L * j / n;
    v.x.push_back(x);
    v.y.push_back(std::max(-2 * x, 1 * x));
  }
  GridFunction lv = legendre(v, -2, 1, n);
  for (size_t i = 0; i < lv.x.size(); i += 50) CHECK(std::fabs(lv.y[i]) <= 2 * L * 2.0 / n + 1e-12);
  // involution error on refining grids is O(h) with the a priori constant
  for (int nn : {400, 800, 1600}) {
    GridFunction w;
    for (int j = 0; j <= nn; ++j) {
      double x = -L + 2 * L * j / nn;
      w.x.push_back(x);
      w.y.push_back(std::cosh(x));
    }
    double p_lo = -std::sinh(L), p_hi = std::sinh(L);
    GridFunction lw = legendre(w, p_lo, p_hi, nn);
    GridFunction llw = legendre(lw, -L, L, nn);
    double err = 0;
    for (int j = 0; j <= nn; ++j) err = std::max(err, std::fabs(llw.y[j] - w.y[j]));
    double h = (p_hi - p_lo) / nn;
    double C = L + (p_hi - p_lo);  // a priori: window radius + slope range
    CHECK(err <= C * h);
  }
  // non-convex input is rejected
  GridFunction bad;
  bad.x = {0, 1, 2};
  bad.y = {0, 1, 0.5};
  CHECK_THROWS_AS(legendre(bad, 0, 1, 10), NonConvexInput);
}

TEST_CASE("two-class coupled solve matches the single-class one for a split") {
  // split the F3_3.31 anticanonical [1,3] into [1/2,3/2] + [1/2,3/2]: at k=2
  // the system couples identical classes; u_1 = u_2 and 2u solves a scaled
  // single equation. Check the solver handles k=2 and the masses are 1.
  const auto& f = catalog::get("F3_3.31");
  auto ctx = CriteriaContext::make(f.datum);
  Polytope half = polytope_from_vertices({{Rat(1, 2), Rat(1, 2)}, {Rat(3, 2), Rat(3, 2)}});
  Decomposition dec;
  dec.classes.push_back({half, QVec(2, Rat(0)), WeightSpec::constant()});
  dec.classes.push_back({half, QVec(2, Rat(0)), WeightSpec::constant()});
  validate_decomposition(dec, f.anticanonical);
  MAProblem p = build_problem(ctx, dec);
  REQUIRE(p.G.size() == 2);
  auto r = solve_at_t(p, 0.5, small_cfg());
  REQUIRE(r.converged());
  const auto& s = *r.solution;
  CHECK(std::fabs(s.mass - 1.0) <= 1e-6);
  // symmetric classes stay equal
  for (size_t j = 0; j < s.nodes.size(); j += 97)
    CHECK(s.u[0][j] == doctest::Approx(s.u[1][j]).epsilon(1e-9));
}

TEST_CASE("soliton-weighted t=1 solve recovers the barycenter target") {
  const auto& f = catalog::get("F3_3.31");
  auto ctx = CriteriaContext::make(f.datum);
  ExistenceReport sol = solve_soliton(ctx, f.anticanonical);
  REQUIRE(sol.solved_lin.has_value());
  Decomposition dec;
  dec.classes.push_back(
      {f.anticanonical, QVec(2, Rat(0)), WeightSpec::exp_affine(*sol.solved_lin, Rat(0))});
  MAProblem p = build_problem(ctx, dec);
  auto r = solve_at_t(p, 1.0, small_cfg(1500, 12));
  REQUIRE(r.converged());
  const auto& s = *r.solution;
  double bar = 0;
  int n = (int)s.nodes.size() - 1;
  for (int j = 1; j < n; ++j) {
    double du = (s.u[0][j + 1] - s.u[0][j - 1]) / (2 * s.h);
    bar += du * std::exp(-s.nu[j]) * s.h;
  }
  CHECK(std::fabs(bar - p.G[0].barycenter()) <= 1e-6);
}

TEST_CASE("solver verdicts agree with the combinatorial condition on rank-1 entries") {
  // every rank-1 catalog entry, t in {1/4, 1/2, 3/4, 1}, skipping the 0.02
  // band around the exact threshold
  MAConfig cfg = small_cfg(500, 12);
  for (const auto& id : catalog::list()) {
    const auto& f = catalog::get(id);
    if (f.datum.rank_m() != 1) continue;
    auto ctx = CriteriaContext::make(f.datum);
    Decomposition dec;
    dec.classes.push_back(
        {f.anticanonical, QVec(f.datum.ambient_rank, Rat(0)), WeightSpec::constant()});
    MAProblem p = build_problem(ctx, dec);
    Rat R = greatest_ricci_lower_bound(ctx, f.anticanonical).value;
    for (Rat t : {Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(1)}) {
      if (abs(t - R) <= Rat(1, 50)) continue;
      bool expect = check_general(ctx, dec, t, default_exp_tol()).verdict == Verdict::Exists;
      CAPTURE(id);
      CAPTURE(to_double(t));
      MAResult r = solve_at_t(p, to_double(t), cfg);
      CHECK(r.converged() == expect);
    }
  }
}
