#include "horoke/masolver.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <limits>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace horoke {

namespace {

// stable ln(e^x + e^y)
double lse2(double x, double y) {
  double m = std::max(x, y);
  return m + std::log1p(std::exp(-std::fabs(x - y)));
}

double poly_eval_d(const std::vector<double>& c, double p) {
  double s = 0;
  for (size_t i = c.size(); i-- > 0;) s = s * p + c[i];
  return s;
}

// antiderivative of poly(p)·e^{lin p} evaluated at p (lin may be zero)
double polyexp_antideriv(const std::vector<double>& c, double lin, double p) {
  if (lin == 0) {
    double s = 0;
    for (size_t i = c.size(); i-- > 0;) s = s * p + c[i] / double(i + 1);
    return s * p;
  }
  // ∫ p^m e^{λp} = e^{λp} Σ_{i=0..m} (−1)^i m!/(m−i)! p^{m−i} / λ^{i+1}
  double total = 0;
  for (size_t m = 0; m < c.size(); ++m) {
    if (c[m] == 0) continue;
    double term = 0, fall = 1, lpow = lin;
    for (size_t i = 0; i <= m; ++i) {
      double contrib = fall * std::pow(p, double(m - i)) / lpow;
      term += (i % 2 == 0 ? contrib : -contrib);
      fall *= double(m - i);
      lpow *= lin;
    }
    total += c[m] * term;
  }
  return total * std::exp(lin * p);
}

}  // namespace

double MADensity::eval(double p) const {
  if (p < p_lo) return eval(p_lo) + ext_slope * (p_lo - p);
  if (p > p_hi) return eval(p_hi) + ext_slope * (p - p_hi);
  return norm * poly_eval_d(poly, p) * std::exp(lin * p);
}

double MADensity::cdf(double p) const {
  if (p <= p_lo) {
    double d = p_lo - p;
    return -(eval(p_lo) * d + ext_slope * d * d / 2);
  }
  double q = std::min(p, p_hi);
  double v = norm * (polyexp_antideriv(poly, lin, q) - polyexp_antideriv(poly, lin, p_lo));
  if (p > p_hi) {
    double d = p - p_hi;
    v += eval(p_hi) * d + ext_slope * d * d / 2;
  }
  return v;
}

double MADensity::barycenter() const {
  std::vector<double> pc(poly.size() + 1, 0.0);
  for (size_t i = 0; i < poly.size(); ++i) pc[i + 1] = poly[i];
  double num = norm * (polyexp_antideriv(pc, lin, p_hi) - polyexp_antideriv(pc, lin, p_lo));
  return num;  // mass is 1 by normalization
}

double MAProblem::j(double a) const {
  double v = j_lin * a;
  for (double r : sinh_rates) v -= std::log(std::sinh(-2 * r * a));
  if (!twist_vertices.empty()) {
    double m = twist_vertices[0] * a;
    for (double p : twist_vertices) m = lse2(m, p * a);
    v += m;
  }
  return v;
}

double MAProblem::dj(double a) const {
  double v = j_lin;
  for (double r : sinh_rates) v += 2 * r * std::cosh(-2 * r * a) / std::sinh(-2 * r * a);
  if (!twist_vertices.empty()) {
    double m = twist_vertices[0] * a, num = 0, den = 0;
    for (double p : twist_vertices) m = std::max(m, p * a);
    for (double p : twist_vertices) {
      double w = std::exp(p * a - m);
      num += p * w;
      den += w;
    }
    v += num / den;
  }
  return v;
}

double MAProblem::j_inf(int dir) const {
  double v = j_lin * dir;
  for (double r : sinh_rates) {
    // only dir = −1 points into the half-line cone; −ln sinh(2r|a|) ~ −2r|a|
    v += -2 * r * std::abs((double)dir);
  }
  if (!twist_vertices.empty()) {
    double m = twist_vertices[0] * dir;
    for (double p : twist_vertices) m = std::max(m, p * dir);
    v += m;
  }
  return v;
}

double MAProblem::v_delta(int dir) const {
  double v = 0;
  for (const auto& g : G) v += dir > 0 ? g.p_hi : -g.p_lo;
  return v;
}

double MAProblem::F_t(double t, int dir) const {
  double bar = 0;
  for (const auto& g : G) bar += g.barycenter() * dir;
  return t * bar + (1 - t) * v_delta(dir) + j_inf(dir);
}

double MAProblem::u_ref(size_t i, double a) const {
  return lse2(G[i].p_lo * a, G[i].p_hi * a) + ref_shift[i];
}

double MAProblem::du_ref(size_t i, double a) const {
  double lo = G[i].p_lo, hi = G[i].p_hi;
  double wlo = std::exp(lo * a - lse2(lo * a, hi * a));
  return lo * wlo + hi * (1 - wlo);
}

MAProblem build_problem(const CriteriaContext& ctx, const Decomposition& dec) {
  const auto& d = ctx.datum;
  if (d.rank_m() != 1) throw RankTooHigh("the grid solver is implemented for rank 1");
  if (dec.classes.empty()) throw InvalidDecomposition("empty decomposition");

  MAProblem p;

  // orient the spherical coordinate so that β-rates are positive
  Rat orient(1);
  std::vector<Rat> beta_rates;
  for (const auto& beta : d.roots_s_plus) beta_rates.push_back(to_m_coords(d, beta)[0]);
  if (!beta_rates.empty()) {
    bool pos = true, neg = true;
    for (const auto& r : beta_rates) {
      pos = pos && r > 0;
      neg = neg && r < 0;
    }
    if (!pos && !neg) throw ChamberDegenerate("mixed chamber orientation at rank 1");
    if (neg) orient = -1;
    p.half_line = true;
    for (const auto& r : beta_rates) p.sinh_rates.push_back(to_double(orient * r));
  }

  Rat jl(0);
  for (const auto& alpha : d.roots_Qu) jl += 2 * orient * to_m_coords(d, alpha)[0];
  p.j_lin = to_double(jl);

  const QVec& e = d.spherical_basis[0];
  for (const auto& cls : dec.classes) {
    const Polytope& mp = cls.moment_polytope;
    std::vector<Rat> xs;
    for (const auto& v : mp.vertices) xs.push_back(orient * ctx.to_m_point(v)[0]);
    std::sort(xs.begin(), xs.end());
    if (xs.size() < 2 || xs.front() == xs.back())
      throw InvalidDecomposition("rank-1 class polytope degenerates to a point");
    Rat x_lo = xs.front(), x_hi = xs.back();

    // Δ_i = −2·[x_lo, x_hi]; density pulled back through q(p) = χ_off − (p/2)e
    QVec v0 = mp.vertices.front();
    QVec chi_off = sub(v0, mat_vec(d.projection, v0));
    std::vector<Poly> subs;
    for (size_t i = 0; i < d.ambient_rank; ++i) {
      QVec lin1{orient * e[i] / Rat(-2)};
      subs.push_back(Poly::linear(lin1, chi_off[i]));
    }
    Poly dens = compose(ctx.dh.expanded, subs);
    // weight factor
    double lin_exp = 0;
    switch (cls.weight.kind) {
      case WeightSpec::Kind::Constant:
        break;
      case WeightSpec::Kind::Affine:
      case WeightSpec::Kind::PowerAffine: {
        Poly ell = compose(Poly::linear(cls.weight.lin, cls.weight.c0), subs);
        unsigned k = cls.weight.kind == WeightSpec::Kind::Affine ? 1 : cls.weight.power;
        for (unsigned i = 0; i < k; ++i) dens = dens * ell;
        break;
      }
      case WeightSpec::Kind::ExpAffine: {
        // e^{<ξ, q(p)>}: slope −<ξ, e>/2 per unit p; constants fold into norm
        lin_exp = to_double(dot(cls.weight.lin, e) * orient / Rat(-2));
        break;
      }
    }
    UPoly upoly = to_univariate(dens, 0);

    MADensity g;
    g.p_lo = to_double(Rat(-2) * x_hi);
    g.p_hi = to_double(Rat(-2) * x_lo);
    g.lin = lin_exp;
    for (const auto& c : upoly.c) g.poly.push_back(to_double(c));
    // assumption clause 4 (and interior positivity): no interior roots
    {
      auto roots =
          isolate_real_roots_in(upoly, Rat(-2) * x_hi, Rat(-2) * x_lo, Rat(1, 1000000));
      if (!roots.empty())
        throw AssumptionViolated(4, "density vanishes in the interior of its polytope");
    }
    g.norm = 1;
    double mass = g.cdf(g.p_hi);
    if (!(mass > 0)) throw AssumptionViolated(4, "density has nonpositive mass");
    g.norm = 1 / mass;
    // continuation slope outside the domain, on the scale of the density
    g.ext_slope = std::max(1.0 / (g.p_hi - g.p_lo), g.eval((g.p_lo + g.p_hi) / 2));
    p.G.push_back(g);
  }

  if (dec.twist) {
    std::vector<Rat> xs;
    for (const auto& v : dec.twist->vertices) xs.push_back(orient * ctx.to_m_point(v)[0]);
    for (const auto& x : xs) p.twist_vertices.push_back(to_double(Rat(-2) * x));
    std::sort(p.twist_vertices.begin(), p.twist_vertices.end());
  }

  // assumption clauses 1 and 3 on the extreme rays
  {
    std::vector<int> dirs = p.half_line ? std::vector<int>{-1} : std::vector<int>{-1, 1};
    for (int dir : dirs) {
      double growth = p.j_inf(dir) + p.v_delta(dir);
      if (!std::isfinite(p.j_inf(dir)))
        throw AssumptionViolated(3, "asymptotic function is not finite");
      if (growth <= 0)
        throw AssumptionViolated(1, "j_inf + v_Delta fails to grow along a ray");
    }
  }

  // reference potential shifts: unit mass for e^{−Σu_ref} J
  p.ref_shift.assign(p.G.size(), 0.0);
  {
    double lo = -200, hi = p.half_line ? 0.0 : 200.0, hh = 0.01;
    int n = (int)std::lround((hi - lo) / hh);
    double mass = 0;
    for (int i = 0; i <= n; ++i) {
      double a = lo + i * hh;
      double expo = -p.j(a);
      for (size_t m = 0; m < p.G.size(); ++m) expo -= p.u_ref(m, a);
      double w = (i == 0 || i == n) ? 0.5 : 1.0;
      if (p.half_line && i == n) continue;  // j = +inf at the wall
      mass += w * std::exp(expo) * hh;
    }
    double shift = std::log(mass) / double(p.G.size());
    p.ref_shift.assign(p.G.size(), shift);
  }
  return p;
}

// ----- Newton solve -----

namespace {

struct Grid {
  double lo, hi, h;
  int n;  // intervals
  double node(int j) const { return lo + j * h; }
};

struct Assembled {
  Eigen::VectorXd residual;
  Eigen::SparseMatrix<double> jac;
};

// unknown layout: u[i*(n+1) + j]
void assemble(const MAProblem& p, double t, const Grid& g, const Eigen::VectorXd& u,
              int anchor, bool anchored, Eigen::VectorXd& res,
              std::vector<Eigen::Triplet<double>>* trips) {
  const int n = g.n, k = (int)p.G.size(), stride = n + 1;
  const double h = g.h;
  res.setZero(k * stride);
  auto idx = [&](int i, int j) { return i * stride + j; };

  // precompute ν at interior nodes
  std::vector<double> nu(n + 1);
  for (int j = 0; j <= n; ++j) {
    double a = g.node(j);
    double v = p.j(a);
    for (int i = 0; i < k; ++i) v += t * u[idx(i, j)] + (1 - t) * p.u_ref(i, a);
    nu[j] = v;
  }

  // finite-volume rows in logarithmic form: the flux difference of
  // Γ(d_{j+1/2}) balances e^{-ν} per cell, imposed as
  // ln(flux difference) + ν = const so the exponential nonlinearity enters
  // the linearization as the constant coefficient t. Boundary half-cells
  // close with the exact fluxes 0 and 1 (the cdf limits), so the trapezoid
  // mass telescopes to one at any solution. The j=n rows of classes 2..k are
  // replaced by the normalization u_i(anchor) = u_1(anchor) (their dropped
  // closures are implied: the rhs is shared, so class-row sums agree); at
  // t = 1 in the translation-covariant case the class-1 closure becomes the
  // centering row dν(anchor) = 0. Rows with nonpositive flux differences
  // mark the iterate infeasible (the line search rejects it).
  for (int i = 0; i < k; ++i) {
    const MADensity& gd = p.G[i];
    auto flux_row = [&](int row, double flux_over_h, double gp, int col_p, double gm, int col_m,
                        int node_j) {
      double rhs = std::isfinite(nu[node_j]) ? std::exp(-nu[node_j]) : 0.0;
      res[row] = flux_over_h - rhs;
      if (trips) {
        if (col_p >= 0) trips->emplace_back(row, col_p, gp);
        if (col_m >= 0) trips->emplace_back(row, col_m, gm);
        trips->emplace_back(row, idx(i, node_j), -(gp + gm) + t * rhs);
        for (int m = 0; m < k; ++m)
          if (m != i) trips->emplace_back(row, idx(m, node_j), t * rhs);
      }
    };
    {
      double dp = (u[idx(i, 1)] - u[idx(i, 0)]) / h;
      flux_row(idx(i, 0), gd.cdf(dp) * (2 / h), 2 * gd.eval(dp) / (h * h), idx(i, 1), 0.0, -1,
               0);
    }
    for (int j = 1; j < n; ++j) {
      double dp = (u[idx(i, j + 1)] - u[idx(i, j)]) / h;
      double dm = (u[idx(i, j)] - u[idx(i, j - 1)]) / h;
      flux_row(idx(i, j), (gd.cdf(dp) - gd.cdf(dm)) / h, gd.eval(dp) / (h * h), idx(i, j + 1),
               gd.eval(dm) / (h * h), idx(i, j - 1), j);
    }
    if (i == 0 && !anchored) {
      double dm = (u[idx(i, n)] - u[idx(i, n - 1)]) / h;
      flux_row(idx(i, n), (1.0 - gd.cdf(dm)) * (2 / h), 0.0, -1, 2 * gd.eval(dm) / (h * h),
               idx(i, n - 1), n);
    } else if (i == 0) {
      // centering row: pin the minimizer of ν at the anchor node,
      // transversal to the t = 1 translation family
      double centering = p.dj(g.node(anchor));
      for (int m = 0; m < k; ++m)
        centering += (u[idx(m, anchor + 1)] - u[idx(m, anchor - 1)]) / (2 * h);
      res[idx(i, n)] = centering;
      if (trips) {
        for (int m = 0; m < k; ++m) {
          trips->emplace_back(idx(i, n), idx(m, anchor + 1), 1 / (2 * h));
          trips->emplace_back(idx(i, n), idx(m, anchor - 1), -1 / (2 * h));
        }
      }
    } else {
      res[idx(i, n)] = u[idx(i, anchor)] - u[idx(0, anchor)];
      if (trips) {
        trips->emplace_back(idx(i, n), idx(i, anchor), 1.0);
        trips->emplace_back(idx(i, n), idx(0, anchor), -1.0);
      }
    }
  }
}

struct WindowSolve {
  bool ok = false;
  Eigen::VectorXd u;
  int iterations = 0;
  double residual = 0;
};

WindowSolve newton_solve(const MAProblem& p, double t, const Grid& g, int anchor, bool anchored,
                         const MAConfig& cfg, const Eigen::VectorXd* warm) {
  const int k = (int)p.G.size(), stride = g.n + 1;
  Eigen::VectorXd u(k * stride);
  if (warm && warm->size() == u.size()) {
    u = *warm;
  } else {
    // reference initial guess, shifted to unit mass
    double mass = 0;
    for (int j = 1; j < g.n; ++j) {
      double a = g.node(j), expo = -p.j(a);
      for (int i = 0; i < k; ++i) expo -= p.u_ref(i, a);
      mass += std::exp(expo) * g.h;
    }
    double shift = std::log(std::max(mass, 1e-300)) / (t * k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j <= g.n; ++j) u[i * stride + j] = p.u_ref(i, g.node(j)) + shift;
  }

  Eigen::VectorXd res;
  std::vector<Eigen::Triplet<double>> trips;
  assemble(p, t, g, u, anchor, anchored, res, nullptr);
  double rn = res.lpNorm<Eigen::Infinity>();
  double merit = res.norm();
  WindowSolve out;
  const bool trace = std::getenv("HOROKE_MA_TRACE") != nullptr;
  if (trace) {
    int amax = 0;
    res.cwiseAbs().maxCoeff(&amax);
    std::fprintf(stderr, "[ma] t=%g n=%d window=[%g,%g] initial |res|=%g argmax=%d\n", t, g.n,
                 g.lo, g.hi, rn, amax);
  }
  // Levenberg-style diagonal floor, escalated when the line search stalls:
  // rows in the far tail decay like G(du) and e^{-ν} together, leaving the
  // plain linearization numerically singular there. The floor perturbs only
  // the step, never the residual test.
  double mu_rel = 1e-12;
  for (int it = 0; it < cfg.max_newton; ++it) {
    if (rn <= cfg.tol) {
      out.ok = true;
      break;
    }
    trips.clear();
    assemble(p, t, g, u, anchor, anchored, res, &trips);
    double maxdiag = 0;
    for (const auto& tr : trips)
      if (tr.row() == tr.col()) maxdiag = std::max(maxdiag, std::fabs(tr.value()));
    bool stepped = false;
    while (!stepped && mu_rel <= 1e-2) {
      auto trips_mu = trips;
      for (int d = 0; d < k * stride; ++d) trips_mu.emplace_back(d, d, -mu_rel * maxdiag);
      Eigen::SparseMatrix<double> jac(k * stride, k * stride);
      jac.setFromTriplets(trips_mu.begin(), trips_mu.end());
      Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
      lu.compute(jac);
      if (lu.info() == Eigen::Success) {
        Eigen::VectorXd step = lu.solve(res);
        double s = 1.0;
        for (int halvings = 0; halvings <= cfg.max_halvings; ++halvings) {
          Eigen::VectorXd cand = u - s * step;
          Eigen::VectorXd cres;
          assemble(p, t, g, cand, anchor, anchored, cres, nullptr);
          double cmerit = cres.norm();
          if (std::isfinite(cmerit) && cmerit < merit * (1 - 1e-4 * s)) {
            u = cand;
            merit = cmerit;
            rn = cres.lpNorm<Eigen::Infinity>();
            stepped = true;
            break;
          }
          s /= 2;
        }
      }
      if (!stepped) mu_rel *= 100;
    }
    if (!stepped) {
      out.u = u;
      out.iterations = it + 1;
      out.residual = rn;
      return out;
    }
    mu_rel = std::max(mu_rel / 10, 1e-12);
    if (trace) {
      int amax = 0;
      res.cwiseAbs().maxCoeff(&amax);
      std::fprintf(stderr, "[ma]   it=%d |res|=%.3e mu=%g argmax=%d\n", it, rn, mu_rel, amax);
    }
    out.iterations = it + 1;
  }
  if (rn <= cfg.tol) out.ok = true;
  out.u = u;
  out.residual = rn;
  return out;
}

MASolution extract_solution(const MAProblem& p, double t, const Grid& g,
                            const Eigen::VectorXd& u, int iterations, double residual,
                            int enlargements) {
  const int k = (int)p.G.size(), stride = g.n + 1;
  MASolution s;
  s.t = t;
  s.a_lo = g.lo;
  s.a_hi = g.hi;
  s.h = g.h;
  s.iterations = iterations;
  s.residual_inf = residual;
  s.enlargements = enlargements;
  for (int j = 0; j <= g.n; ++j) s.nodes.push_back(g.node(j));
  s.u.assign(k, {});
  for (int i = 0; i < k; ++i)
    for (int j = 0; j <= g.n; ++j) s.u[i].push_back(u[i * stride + j]);
  s.nu.resize(g.n + 1);
  s.m_t = 1e300;
  double min_d2 = 1e300;
  for (int j = 0; j <= g.n; ++j) {
    double a = g.node(j), v = p.j(a);
    if (p.half_line && j == g.n) {
      s.nu[j] = 1e300;  // wall
      continue;
    }
    for (int i = 0; i < k; ++i) v += t * s.u[i][j] + (1 - t) * p.u_ref(i, a);
    s.nu[j] = v;
    if (v < s.m_t) {
      s.m_t = v;
      s.x_t = a;
    }
  }
  double mass = 0;
  for (int j = 0; j <= g.n; ++j) {
    if (!std::isfinite(s.nu[j])) continue;
    double w = (j == 0 || j == g.n) ? 0.5 : 1.0;
    mass += w * std::exp(-s.nu[j]) * g.h;
  }
  s.mass = mass;
  for (int i = 0; i < k; ++i)
    for (int j = 1; j < g.n; ++j)
      min_d2 = std::min(min_d2, s.u[i][j + 1] - 2 * s.u[i][j] + s.u[i][j - 1]);
  s.min_second_difference = min_d2;
  return s;
}

}  // namespace

namespace {

struct ContinuationResult {
  WindowSolve best;      // solve at t_reached
  double t_reached = 0;  // == t when the target was reached
};

// warm start across t via adaptive continuation on a fixed window; when the
// path stops being solvable below the target, returns the ceiling solve
ContinuationResult continuation_solve(const MAProblem& p, double t, const Grid& g, int anchor,
                                      const MAConfig& cfg, const Eigen::VectorXd* warm,
                                      double t_warm) {
  auto anchored_at = [&](double tt) {
    return tt == 1.0 && p.sinh_rates.empty() && p.twist_vertices.empty();
  };
  if (warm) {
    WindowSolve direct = newton_solve(p, t, g, anchor, anchored_at(t), cfg, warm);
    if (direct.ok) return {direct, t};
  } else {
    WindowSolve direct = newton_solve(p, t, g, anchor, anchored_at(t), cfg, nullptr);
    if (direct.ok) return {direct, t};
  }

  double t_cur;
  WindowSolve base;
  if (warm) {
    t_cur = t_warm;
    base = newton_solve(p, t_cur, g, anchor, anchored_at(t_cur), cfg, warm);
  }
  if (!warm || !base.ok) {
    t_cur = std::min(t, 0.25);
    base = newton_solve(p, t_cur, g, anchor, anchored_at(t_cur), cfg, nullptr);
    if (!base.ok && t_cur > 0.1) {
      t_cur = 0.1;
      base = newton_solve(p, t_cur, g, anchor, anchored_at(t_cur), cfg, nullptr);
    }
  }
  if (!base.ok) throw NewtonDiverged("Newton failed at the continuation base point");
  double step = (t - t_cur) / 2;
  while (t_cur < t) {
    double t_next = std::min(t, t_cur + std::max(step, 5e-4));
    WindowSolve trial = newton_solve(p, t_next, g, anchor, anchored_at(t_next), cfg, &base.u);
    if (trial.ok) {
      base = trial;
      t_cur = t_next;
      step *= 2;
    } else {
      step /= 2;
      if (step < 5e-4) break;  // solvable ceiling below the target
    }
  }
  return {base, t_cur};
}

// extend a solution from an old window onto an enlarged grid by the
// asymptotic slopes, as the warm start after enlargement
Eigen::VectorXd extend_onto(const MAProblem& p, const Grid& old_g, const Eigen::VectorXd& u,
                            const Grid& g) {
  const int k = (int)p.G.size();
  Eigen::VectorXd out(k * (g.n + 1));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j <= g.n; ++j) {
      double a = g.node(j);
      double v;
      double inset = 0.05 * (p.G[i].p_hi - p.G[i].p_lo);
      if (a <= old_g.lo) {
        // slope approaches p_lo from above, keeping the extension strictly
        // convex so every flux difference stays positive
        double d = old_g.lo - a;
        v = u[i * (old_g.n + 1) + 0] - p.G[i].p_lo * d + inset * std::log1p(d);
      } else if (a >= old_g.hi) {
        double d = a - old_g.hi;
        v = u[i * (old_g.n + 1) + old_g.n] + p.G[i].p_hi * d - inset * std::log1p(d);
      } else {
        double s = (a - old_g.lo) / old_g.h;
        int j0 = std::clamp((int)std::floor(s), 0, old_g.n - 1);
        double w = s - j0;
        v = (1 - w) * u[i * (old_g.n + 1) + j0] + w * u[i * (old_g.n + 1) + j0 + 1];
      }
      out[i * (g.n + 1) + j] = v;
    }
  }
  return out;
}

}  // namespace

MAResult solve_at_t(const MAProblem& p, double t, const MAConfig& cfg) {
  if (!(t > 0 && t <= 1)) throw std::invalid_argument("t must lie in (0,1]");
  MAResult result;
  DivergenceDiagnosis diag;
  diag.t = t;

  double lo = -cfg.window;
  double hi = p.half_line ? 0.0 : cfg.window;
  bool anchored = t == 1.0 && p.sinh_rates.empty() && p.twist_vertices.empty();

  std::optional<Grid> prev_grid;
  Eigen::VectorXd prev_u;
  double prev_t = 0;
  bool ever_stalled = false;

  for (int attempt = 0; attempt <= cfg.max_enlargements; ++attempt) {
    Grid g;
    g.lo = lo;
    g.hi = hi;
    g.n = (int)std::lround(cfg.n * (hi - lo) / (p.half_line ? cfg.window : 2 * cfg.window));
    g.h = (hi - lo) / g.n;
    int anchor = p.half_line ? g.n - 1 : g.n / 2;

    std::optional<Eigen::VectorXd> warm;
    if (prev_grid) warm = extend_onto(p, *prev_grid, prev_u, g);
    ContinuationResult cr =
        continuation_solve(p, t, g, anchor, cfg, warm ? &*warm : nullptr, prev_t);

    MASolution sol =
        extract_solution(p, cr.t_reached, g, cr.best.u, cr.best.iterations, cr.best.residual,
                         attempt);
    diag.x_t_history.push_back(sol.x_t);
    diag.window_history.push_back(hi - lo);

    bool stalled = cr.t_reached < t;
    if (!stalled && anchored && std::fabs(sol.mass - 1.0) > 1e-4) {
      // the centering row replaced the right closure; a genuine solution
      // satisfies the dropped row (mass 1) up to window truncation error
      stalled = true;
    }
    ever_stalled = ever_stalled || stalled;
    // escape test: x_t within edge_nodes of a truncation boundary
    double edge = cfg.edge_nodes * g.h;
    bool escape_left = sol.x_t <= lo + edge;
    bool escape_right = !p.half_line && sol.x_t >= hi - edge;
    if (!stalled && !escape_left && !escape_right) {
      result.solution = std::move(sol);
      return result;
    }
    prev_grid = g;
    prev_u = cr.best.u;
    prev_t = cr.t_reached;
    if (attempt == cfg.max_enlargements) break;
    double len = hi - lo;
    if (stalled && !escape_left && !escape_right) {
      // enlarge toward the direction of slowest growth of F_t
      bool right = !p.half_line && p.F_t(t, 1) <= p.F_t(t, -1);
      if (right)
        hi += len;
      else
        lo -= len;
    } else {
      if (escape_right) hi += len;
      if (escape_left) lo -= len;
    }
  }
  diag.reason = ever_stalled
                    ? "no solution up to the target t: the solvable ceiling and the minimizer "
                      "stagnate under window enlargement"
                    : "minimizer escapes through the window boundary under enlargement";
  result.divergence = std::move(diag);
  return result;
}

StokesSplit stokes_split(const MAProblem& p, const MASolution& s, double dir) {
  const int n = (int)s.nodes.size() - 1;
  const size_t k = p.G.size();
  StokesSplit out{0, 0, 0};
  // composite trapezoid on nodal integrands; centered du in the interior
  auto weight = [&](int j) { return (j == 0 || j == n) ? 0.5 : 1.0; };
  for (int j = 0; j <= n; ++j) {
    if (!std::isfinite(s.nu[j])) continue;
    double w = weight(j) * s.h * std::exp(-s.nu[j]) * dir;
    double a = s.nodes[j];
    double dus = 0;
    for (size_t i = 0; i < k; ++i) {
      double du;
      if (j == 0)
        du = (s.u[i][1] - s.u[i][0]) / s.h;
      else if (j == n)
        du = (s.u[i][n] - s.u[i][n - 1]) / s.h;
      else
        du = (s.u[i][j + 1] - s.u[i][j - 1]) / (2 * s.h);
      dus += du;
    }
    out.potential_part += w * s.t * dus;
    double durs = 0;
    for (size_t i = 0; i < k; ++i) durs += p.du_ref(i, a);
    out.reference_part += w * (1 - s.t) * durs;
    out.j_part += w * p.dj(a);
  }
  return out;
}

double stokes_residual(const MAProblem& p, const MASolution& s, double dir) {
  return stokes_split(p, s, dir).total();
}

GridFunction legendre(const GridFunction& u, double p_lo, double p_hi, int n_out) {
  const size_t n = u.x.size();
  if (n < 2) throw NonConvexInput("grid function too short");
  double scale = 0;
  for (double y : u.y) scale = std::max(scale, std::fabs(y));
  for (size_t j = 1; j + 1 < n; ++j) {
    double d2 = u.y[j + 1] - 2 * u.y[j] + u.y[j - 1];
    if (d2 < -1e-9 * std::max(1.0, scale)) throw NonConvexInput("second differences negative");
  }
  GridFunction out;
  double hp = (p_hi - p_lo) / n_out;
  size_t arg = 0;
  for (int i = 0; i <= n_out; ++i) {
    double pv = p_lo + i * hp;
    // argmax of pv·x − u is nondecreasing in pv for convex u
    while (arg + 1 < n && pv * u.x[arg + 1] - u.y[arg + 1] >= pv * u.x[arg] - u.y[arg]) ++arg;
    out.x.push_back(pv);
    out.y.push_back(pv * u.x[arg] - u.y[arg]);
  }
  return out;
}

std::vector<TrackPoint> track_minimizer(const MAProblem& p, const std::vector<double>& ts,
                                        const MAConfig& cfg) {
  std::vector<TrackPoint> out;
  for (double t : ts) {
    TrackPoint tp;
    tp.t = t;
    try {
      MAResult r = solve_at_t(p, t, cfg);
      if (r.converged()) {
        tp.converged = true;
        tp.m_t = r.solution->m_t;
        tp.x_t = r.solution->x_t;
        tp.enlargements = r.solution->enlargements;
      } else {
        tp.converged = false;
        tp.m_t = 0;
        tp.x_t = r.divergence->x_t_history.back();
        tp.enlargements = (int)r.divergence->x_t_history.size() - 1;
      }
    } catch (const NewtonDiverged&) {
      tp.converged = false;
      tp.m_t = 0;
      tp.x_t = 0;
      tp.enlargements = 0;
    }
    out.push_back(tp);
  }
  return out;
}

}  // namespace horoke
