#include "horoke/criteria.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <sstream>

namespace horoke {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Exists:
      return "exists";
    case Verdict::NotExists:
      return "not_exists";
    case Verdict::Boundary:
      return "boundary";
  }
  return "?";
}

CriteriaContext CriteriaContext::make(const HorosymmetricDatum& d) {
  CriteriaContext ctx;
  ctx.datum = d;
  ctx.dh = dh_polynomial(d);
  ctx.rho = two_rho_H(d);
  ctx.chamber = positive_chamber(d);
  ctx.m_map = QMat(d.rank_m(), d.ambient_rank);
  for (size_t j = 0; j < d.ambient_rank; ++j) {
    QVec e(d.ambient_rank, Rat(0));
    e[j] = 1;
    QVec mc = to_m_coords(d, e);
    for (size_t i = 0; i < d.rank_m(); ++i) ctx.m_map.at(i, j) = mc[i];
  }
  return ctx;
}

Polytope CriteriaContext::to_m(const Polytope& ambient) const {
  std::vector<QVec> vs;
  for (const auto& v : ambient.vertices) vs.push_back(mat_vec(m_map, v));
  return polytope_from_vertices(vs);
}

QVec CriteriaContext::to_m_point(const QVec& ambient) const { return mat_vec(m_map, ambient); }

std::vector<Enclosure> CriteriaContext::to_m_box(const std::vector<Enclosure>& ambient) const {
  std::vector<Enclosure> out(m_map.nrows(), Enclosure::exact(Rat(0)));
  for (size_t i = 0; i < m_map.nrows(); ++i) {
    Enclosure acc = Enclosure::exact(Rat(0));
    for (size_t j = 0; j < m_map.ncols(); ++j)
      acc = acc + Enclosure::exact(m_map.at(i, j)) * ambient[j];
    out[i] = acc;
  }
  return out;
}

void validate_decomposition(const Decomposition& dec, const Polytope& anticanonical) {
  if (dec.classes.empty()) throw InvalidDecomposition("decomposition has no classes");
  Polytope sum = dec.classes[0].moment_polytope;
  for (size_t i = 1; i < dec.classes.size(); ++i)
    sum = minkowski_sum(sum, dec.classes[i].moment_polytope);
  if (dec.twist) sum = minkowski_sum(sum, *dec.twist);
  if (!polytope_equal(sum, anticanonical))
    throw InvalidDecomposition("class polytopes do not sum to the anticanonical polytope");
}

namespace {

struct IntervalRelint {
  Verdict verdict;
  RelintCertificate cert;
};

// relint membership of an interval point in an exact polyhedron; widens to
// Boundary when the enclosure straddles a facet or the affine hull
IntervalRelint interval_relint(const std::vector<Halfspace>& facets,
                               const std::vector<Equation>& eqs,
                               const std::vector<Enclosure>& p) {
  IntervalRelint out;
  for (const auto& e : eqs) {
    Enclosure v = Enclosure::exact(-e.offset);
    for (size_t i = 0; i < p.size(); ++i) v = v + Enclosure::exact(e.normal[i]) * p[i];
    if (v.lo > 0 || v.hi < 0) {
      out.verdict = Verdict::NotExists;
      out.cert.off_affine_hull = true;
      return out;
    }
    if (!(v.lo == 0 && v.hi == 0)) {
      out.verdict = Verdict::Boundary;
      out.cert.off_affine_hull = true;
      return out;
    }
  }
  bool first = true;
  Rat min_slack;
  int boundary_facet = -1;
  for (size_t i = 0; i < facets.size(); ++i) {
    Enclosure slack = Enclosure::exact(facets[i].offset);
    for (size_t j = 0; j < p.size(); ++j)
      slack = slack - Enclosure::exact(facets[i].normal[j]) * p[j];
    if (slack.hi < 0) {
      out.verdict = Verdict::NotExists;
      out.cert.facet = (int)i;
      out.cert.tight = false;
      return out;
    }
    if (slack.lo <= 0) {
      if (boundary_facet < 0) boundary_facet = (int)i;
      continue;
    }
    if (first || slack.lo < min_slack) min_slack = slack.lo;
    first = false;
  }
  if (boundary_facet >= 0) {
    out.verdict = Verdict::Boundary;
    out.cert.facet = boundary_facet;
    out.cert.tight = true;
    return out;
  }
  out.verdict = Verdict::Exists;
  out.cert.inside = true;
  out.cert.min_slack = first ? Rat(1) : min_slack;
  return out;
}

std::vector<Enclosure> negate_box(const std::vector<Enclosure>& p) {
  std::vector<Enclosure> out;
  for (const auto& x : p) out.push_back({-x.hi, -x.lo});
  return out;
}

std::string facet_string(const Halfspace& f) {
  std::ostringstream os;
  os << "<(";
  for (size_t i = 0; i < f.normal.size(); ++i) {
    if (i) os << ",";
    os << f.normal[i];
  }
  os << "), x> <= " << f.offset;
  return os.str();
}

void fill_relint_certificate(ExistenceReport& rep, const IntervalRelint& res,
                             const std::vector<Halfspace>& facets) {
  rep.verdict = res.verdict;
  rep.relint = res.cert;
  if (res.verdict == Verdict::Exists) {
    rep.certificate = "relint witness, min facet slack " + rat_str(res.cert.min_slack);
  } else if (res.cert.off_affine_hull) {
    rep.certificate = "point misses the affine hull of the tested polyhedron";
  } else if (res.cert.facet >= 0) {
    rep.certificate = std::string(res.cert.tight ? "tight" : "violated") + " facet " +
                      facet_string(facets[res.cert.facet]);
  }
}

}  // namespace

ExistenceReport check_general(const CriteriaContext& ctx, const Decomposition& dec, const Rat& t,
                              const Rat& tol) {
  if (t <= 0 || t > 1) throw std::invalid_argument("t must lie in (0,1]");
  if (dec.classes.empty()) throw InvalidDecomposition("empty decomposition");
  size_t r = ctx.datum.rank_m();

  ExistenceReport rep;
  rep.check = "general";
  rep.t_value = t;

  // interval point x = t · Σ proj(bar_i)
  std::vector<Enclosure> x(r, Enclosure::exact(Rat(0)));
  for (size_t ci = 0; ci < dec.classes.size(); ++ci) {
    const auto& cls = dec.classes[ci];
    std::vector<Enclosure> bar;
    try {
      bar = dh_barycenter(cls.moment_polytope, ctx.dh.expanded, cls.weight, tol);
    } catch (const DegenerateMass&) {
      throw UnnormalizedWeights("class weight has vanishing mass");
    }
    rep.numerics["bar_" + std::to_string(ci)] = bar;
    auto bar_m = ctx.to_m_box(bar);
    for (size_t i = 0; i < r; ++i) x[i] = x[i] + Enclosure::exact(t) * bar_m[i];
  }
  {
    std::vector<Enclosure> rho_box;
    for (const auto& c : ctx.rho.m_coords) rho_box.push_back(Enclosure::exact(c));
    rep.numerics["two_rho_m"] = rho_box;
  }

  // exact polytope part: (1-t)·Σ Δ_i + Δ_γ − 2ρ_H
  Polytope q = [&] {
    if (t == 1) return polytope_from_vertices({QVec(r, Rat(0))});
    Polytope acc = scale_polytope(1 - t, ctx.to_m(dec.classes[0].moment_polytope));
    for (size_t i = 1; i < dec.classes.size(); ++i)
      acc = minkowski_sum(acc, scale_polytope(1 - t, ctx.to_m(dec.classes[i].moment_polytope)));
    return acc;
  }();
  if (dec.twist) q = minkowski_sum(q, ctx.to_m(*dec.twist));
  q = translate(q, scale(Rat(-1), ctx.rho.m_coords));
  Polyhedron s = sum_with_cone(q, negate_cone(ctx.chamber.dual));

  // 0 ∈ Relint(x + S)  ⟺  −x ∈ Relint(S)
  auto res = interval_relint(s.facets, s.equations, negate_box(x));
  rep.tested_facets = s.facets;
  rep.tested_equations = s.equations;
  rep.tested_point = negate_box(x);
  fill_relint_certificate(rep, res, s.facets);
  return rep;
}

ExistenceReport check_ke(const CriteriaContext& ctx, const Polytope& anticanonical) {
  Decomposition dec;
  dec.classes.push_back(
      {anticanonical, QVec(ctx.datum.ambient_rank, Rat(0)), WeightSpec::constant()});
  ExistenceReport rep = check_general(ctx, dec, Rat(1), default_exp_tol());
  rep.check = "ke";
  if (rep.verdict != Verdict::Exists && rep.relint && rep.relint->off_affine_hull) {
    // the k=1 equality case deserves a concrete certificate
    std::ostringstream os;
    os << "barycenter (";
    const auto& bar = rep.numerics.at("bar_0");
    auto bar_m = ctx.to_m_box(bar);
    for (size_t i = 0; i < bar_m.size(); ++i) {
      if (i) os << ",";
      os << rat_str(bar_m[i].lo);
    }
    os << ") != projected 2rho_H (";
    for (size_t i = 0; i < ctx.rho.m_coords.size(); ++i) {
      if (i) os << ",";
      os << rat_str(ctx.rho.m_coords[i]);
    }
    os << ") in spherical coordinates";
    if (ctx.datum.rank_m() == 1 && ctx.rho.m_coords[0] != 0) {
      const auto& bar = rep.numerics.at("bar_0");
      auto bm = ctx.to_m_box(bar);
      if (bm[0].is_exact()) os << "; ratio " << rat_str(bm[0].lo / ctx.rho.m_coords[0]);
    }
    rep.certificate = os.str();
  }
  return rep;
}

RicciLowerBound greatest_ricci_lower_bound(const CriteriaContext& ctx,
                                           const Polytope& anticanonical) {
  size_t r = ctx.datum.rank_m();
  RicciLowerBound out{Rat(1), false, ""};

  auto bar =
      dh_barycenter(anticanonical, ctx.dh.expanded, WeightSpec::constant(), default_exp_tol());
  QVec bar_m(r);
  {
    std::vector<Enclosure> bm = ctx.to_m_box(bar);
    for (size_t i = 0; i < r; ++i) {
      assert(bm[i].is_exact());
      bar_m[i] = bm[i].lo;
    }
  }
  const QVec& base = ctx.rho.m_coords;
  QVec dir = sub(base, bar_m);  // 2ρ − bar

  Polyhedron region = sum_with_cone(ctx.to_m(anticanonical), negate_cone(ctx.chamber.dual));

  if (is_zero(dir)) {
    auto cert = contains_relint(region, base);
    out.value = 1;
    out.boundary_flag = !cert.inside;
    if (!cert.inside) out.note = "2rho_H sits on the boundary of the region";
    return out;
  }
  for (const auto& e : region.equations) {
    if (dot(e.normal, dir) != 0 || dot(e.normal, base) != e.offset) {
      out.value = 0;
      out.boundary_flag = true;
      out.note = "ray leaves the affine hull of the region";
      return out;
    }
  }
  auto base_cert = contains_relint(region, base);
  if (!base_cert.inside) {
    out.value = 0;
    out.boundary_flag = true;
    out.note = "2rho_H is not interior to the region";
    return out;
  }
  bool bounded = false;
  Rat s_max;
  for (const auto& f : region.facets) {
    Rat nd = dot(f.normal, dir);
    if (nd <= 0) continue;
    Rat bound = (f.offset - dot(f.normal, base)) / nd;
    if (!bounded || bound < s_max) s_max = bound;
    bounded = true;
  }
  if (!bounded) {
    out.value = 1;
    out.boundary_flag = true;
    out.note = "escape direction lies in the recession cone; R = 1 as a boundary case";
    return out;
  }
  out.value = s_max / (1 + s_max);
  return out;
}

// ----- soliton -----

namespace {

struct GL16 {
  double x[16], w[16];
  GL16() {
    static const double xs[8] = {0.0052995325041750337, 0.0277124884633837046,
                                 0.0671843988060841224, 0.1222977958224984867,
                                 0.1910618777986781147, 0.2709916111713863151,
                                 0.3591982246103705422, 0.4524937450811812866};
    static const double ws[8] = {0.0135762297058770482, 0.0311267619693239468,
                                 0.0475792558412463928, 0.0623144856277669384,
                                 0.0747979944082883680, 0.0845782596975012679,
                                 0.0913017075224617918, 0.0947253052275342510};
    for (int i = 0; i < 8; ++i) {
      x[i] = xs[i];
      w[i] = ws[i];
      x[15 - i] = 1.0 - xs[i];
      w[15 - i] = ws[i];
    }
  }
};

struct NumericMoments {
  double mass = 0;
  std::vector<double> first;
  std::vector<std::vector<double>> second;
};

// Gauss-Legendre moments of e^{Σ c_j <d_j, p>} · dh(p) over the polytope;
// iteration workhorse for the soliton Newton (double precision only — the
// final residual is re-certified with exact closed forms).
NumericMoments numeric_moments(const Polytope& p, const Poly& dh, const std::vector<QVec>& dirs,
                               const std::vector<double>& c) {
  static const GL16 gl;
  AffineChart ch = lattice_chart(p);
  const size_t k = ch.basis.size(), nd = dirs.size(), da = p.dim_ambient;
  NumericMoments m;
  m.first.assign(nd, 0.0);
  m.second.assign(nd, std::vector<double>(nd, 0.0));

  std::vector<std::vector<double>> dird(nd, std::vector<double>(da));
  for (size_t j = 0; j < nd; ++j)
    for (size_t i = 0; i < da; ++i) dird[j][i] = to_double(dirs[j][i]);

  std::vector<double> pt(da), z(k), dv(nd);
  auto add_point = [&](double wgt) {
    double dens = peval_d(dh, pt);
    double expo = 0;
    for (size_t j = 0; j < nd; ++j) {
      double v = 0;
      for (size_t i = 0; i < da; ++i) v += dird[j][i] * pt[i];
      dv[j] = v;
      expo += c[j] * v;
    }
    double f = dens * std::exp(expo) * wgt;
    m.mass += f;
    for (size_t j = 0; j < nd; ++j) m.first[j] += f * dv[j];
    for (size_t a = 0; a < nd; ++a)
      for (size_t b = 0; b < nd; ++b) m.second[a][b] += f * dv[a] * dv[b];
  };

  for (const auto& s : triangulate(p)) {
    std::vector<QVec> ys;
    for (const auto& v : s.verts) ys.push_back(ch.to_chart(v));
    Rat vol = simplex_volume(s, ch);
    if (vol == 0) continue;
    double jac = to_double(vol);
    for (size_t i = 2; i <= k; ++i) jac *= (double)i;  // |det| = vol * k!

    std::vector<std::vector<double>> yd;
    for (const auto& y : ys) {
      std::vector<double> row;
      for (const auto& q : y) row.push_back(to_double(q));
      yd.push_back(row);
    }
    std::vector<std::vector<double>> bd;  // ambient coords of chart basis
    for (const auto& b : ch.basis) {
      std::vector<double> row;
      for (const auto& q : b) row.push_back(to_double(q));
      bd.push_back(row);
    }
    std::vector<double> od;
    for (const auto& q : ch.origin) od.push_back(to_double(q));

    std::function<void(size_t, double, double)> rec = [&](size_t depth, double wacc,
                                                          double remaining) {
      if (depth == k) {
        // chart coords y, then ambient pt = origin + Σ y_j basis_j
        std::vector<double> y(k);
        for (size_t j = 0; j < k; ++j) {
          y[j] = yd[0][j];
          for (size_t q = 0; q < k; ++q) y[j] += z[q] * (yd[q + 1][j] - yd[0][j]);
        }
        for (size_t i = 0; i < da; ++i) {
          pt[i] = od[i];
          for (size_t j = 0; j < k; ++j) pt[i] += y[j] * bd[j][i];
        }
        add_point(wacc * jac);
        return;
      }
      for (int q = 0; q < 16; ++q) {
        z[depth] = remaining * gl.x[q];
        rec(depth + 1, wacc * gl.w[q] * remaining, remaining * (1.0 - gl.x[q]));
      }
    };
    if (k == 0) {
      for (size_t i = 0; i < da; ++i) pt[i] = od[i];
      add_point(1.0);
    } else {
      rec(0, 1.0, 1.0);
    }
  }
  return m;
}

Rat dyadic_from_double(double x) {
  Rat r;
  mpq_set_d(r.get_mpq_t(), x);
  return r;
}

Rat abs_hi(const Enclosure& e) {
  Rat a = abs(e.lo), b = abs(e.hi);
  return a > b ? a : b;
}

}  // namespace

ExistenceReport solve_soliton(const CriteriaContext& ctx, const Polytope& moment,
                              const SolitonOptions& opt) {
  ExistenceReport rep;
  rep.check = "soliton";

  // directions with independent restrictions to the polytope's affine hull
  std::vector<QVec> dirs;
  {
    std::vector<QVec> hull_dirs;
    for (size_t i = 1; i < moment.vertices.size(); ++i)
      hull_dirs.push_back(sub(moment.vertices[i], moment.vertices[0]));
    QMat restr;
    for (const auto& d : ctx.datum.soliton_directions) {
      QVec row;
      for (const auto& h : hull_dirs) row.push_back(dot(d, h));
      if (is_zero(row)) continue;
      QMat test = restr;
      test.rows.push_back(row);
      if (rank(test) > rank(restr)) {
        restr.rows.push_back(row);
        dirs.push_back(d);
      }
    }
  }
  if (dirs.empty()) {
    rep = check_ke(ctx, moment);
    rep.check = "soliton";
    return rep;
  }

  // target point on the moment polytope's affine hull whose projection is
  // P(2ρ_H)
  const QVec v0 = moment.vertices.front();
  QVec target = add(sub(v0, mat_vec(ctx.datum.projection, v0)), ctx.rho.projected);

  {
    std::vector<QVec> proj_pts;
    for (const auto& v : moment.vertices) {
      QVec row;
      for (const auto& d : dirs) row.push_back(dot(d, v));
      proj_pts.push_back(row);
    }
    QVec tgt;
    for (const auto& d : dirs) tgt.push_back(dot(d, target));
    Polytope projected = polytope_from_vertices(proj_pts);
    auto cert = contains_relint(projected, tgt);
    if (!cert.inside)
      throw TargetOutsidePolytope("soliton target is not interior to the projected polytope");
  }

  size_t nd = dirs.size();
  std::vector<double> c(nd, 0.0), tgt_d(nd);
  for (size_t j = 0; j < nd; ++j) tgt_d[j] = to_double(dot(dirs[j], target));

  auto grad_norm = [&](const NumericMoments& m) {
    double g = 0;
    for (size_t j = 0; j < nd; ++j)
      g = std::max(g, std::fabs(m.first[j] / m.mass - tgt_d[j]));
    return g;
  };

  NumericMoments mom = numeric_moments(moment, ctx.dh.expanded, dirs, c);
  double g0 = grad_norm(mom);
  int iter = 0;
  while (g0 > 1e-14 && iter < opt.max_iterations) {
    std::vector<double> g(nd);
    for (size_t j = 0; j < nd; ++j) g[j] = mom.first[j] / mom.mass - tgt_d[j];
    std::vector<std::vector<double>> h(nd, std::vector<double>(nd));
    for (size_t a = 0; a < nd; ++a)
      for (size_t b = 0; b < nd; ++b)
        h[a][b] =
            mom.second[a][b] / mom.mass - (mom.first[a] / mom.mass) * (mom.first[b] / mom.mass);
    // dense solve H s = g
    std::vector<std::vector<double>> A = h;
    std::vector<double> s = g;
    for (size_t col = 0; col < nd; ++col) {
      size_t piv = col;
      for (size_t r2 = col + 1; r2 < nd; ++r2)
        if (std::fabs(A[r2][col]) > std::fabs(A[piv][col])) piv = r2;
      std::swap(A[piv], A[col]);
      std::swap(s[piv], s[col]);
      if (A[col][col] == 0) throw NewtonStall("singular soliton Hessian");
      for (size_t r2 = col + 1; r2 < nd; ++r2) {
        double f = A[r2][col] / A[col][col];
        for (size_t cc = col; cc < nd; ++cc) A[r2][cc] -= f * A[col][cc];
        s[r2] -= f * s[col];
      }
    }
    for (size_t col = nd; col-- > 0;) {
      for (size_t cc = col + 1; cc < nd; ++cc) s[col] -= A[col][cc] * s[cc];
      s[col] /= A[col][col];
    }
    double step = 1.0;
    int halvings = 0;
    while (true) {
      std::vector<double> cand(nd);
      for (size_t j = 0; j < nd; ++j) cand[j] = c[j] - step * s[j];
      NumericMoments mc = numeric_moments(moment, ctx.dh.expanded, dirs, cand);
      double g1 = grad_norm(mc);
      if (g1 < g0 || g1 <= 1e-14) {
        c = cand;
        mom = mc;
        g0 = g1;
        break;
      }
      step /= 2;
      if (++halvings > opt.max_halvings) throw NewtonStall("soliton Newton stalled");
    }
    ++iter;
  }
  if (g0 > 1e-13) throw NewtonStall("soliton Newton did not converge");

  // certified residual at the dyadic candidate
  QVec xi(ctx.datum.ambient_rank, Rat(0));
  for (size_t j = 0; j < nd; ++j) xi = add(xi, scale(dyadic_from_double(c[j]), dirs[j]));
  Rat tol = opt.grad_tol / 100;
  Enclosure den = integrate_poly_exp(moment, ctx.dh.expanded, xi, tol);
  Rat worst(0);
  for (size_t j = 0; j < nd; ++j) {
    Poly pair = Poly::linear(dirs[j], Rat(0));
    Enclosure num = integrate_poly_exp(moment, pair * ctx.dh.expanded, xi, tol);
    Enclosure gj = num / den - Enclosure::exact(dot(dirs[j], target));
    Rat m = abs_hi(gj);
    if (m > worst) worst = m;
  }
  rep.residual = Enclosure{Rat(0), worst};
  rep.solved_lin = xi;
  rep.solved_c0 = Rat(0);
  rep.verdict = worst <= opt.grad_tol ? Verdict::Exists : Verdict::Boundary;
  rep.certificate = "soliton weight solved, certified gradient bound " + rat_str(worst);
  {
    std::vector<Enclosure> xi_box;
    for (const auto& v : xi) xi_box.push_back(Enclosure::exact(v));
    rep.numerics["xi"] = xi_box;
  }
  return rep;
}

// ----- Mabuchi -----

namespace {

// rows annihilating the span of the dual cone (the equality part of the
// relint condition); empty span means all coordinates are equality-bound
std::vector<QVec> dual_span_complement(const PolyCone& dual, size_t r) {
  QMat span;
  for (const auto& v : dual.rays) span.rows.push_back(v);
  for (const auto& v : dual.lineality) span.rows.push_back(v);
  if (span.rows.empty()) {
    std::vector<QVec> all;
    for (size_t i = 0; i < r; ++i) {
      QVec e(r, Rat(0));
      e[i] = 1;
      all.push_back(e);
    }
    return all;
  }
  return kernel_basis(span);  // functionals vanishing on the span
}

}  // namespace

ExistenceReport solve_mabuchi(const CriteriaContext& ctx, const Polytope& anticanonical) {
  ExistenceReport rep;
  rep.check = "mabuchi";
  size_t r = ctx.datum.rank_m(), da = ctx.datum.ambient_rank;

  // unknowns: ℓ(p) = c_0 + Σ_j c_j <d_j, p> over the central directions
  std::vector<QVec> dirs = ctx.datum.central_directions;
  size_t nu = dirs.size() + 1;

  // E_i(c) = ∫ (m_i(p) − ρ_i) ℓ(p) dh dp, exact and linear in c
  QMat T(r, nu);
  for (size_t i = 0; i < r; ++i) {
    QVec mrow = ctx.m_map.rows[i];
    Poly diff = Poly::linear(mrow, -ctx.rho.m_coords[i]);
    T.at(i, 0) = integrate_poly(anticanonical, diff * ctx.dh.expanded);
    for (size_t j = 0; j < dirs.size(); ++j) {
      Poly pair = Poly::linear(dirs[j], Rat(0));
      T.at(i, j + 1) = integrate_poly(anticanonical, diff * pair * ctx.dh.expanded);
    }
  }
  rep.numerics["moment_matrix"] = {};
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < nu; ++j)
      rep.numerics["moment_matrix"].push_back(Enclosure::exact(T.at(i, j)));

  // equality constraints: components transverse to span((C̄⁺)^∨)
  std::vector<QVec> comp = dual_span_complement(ctx.chamber.dual, r);
  QMat sys;
  for (const auto& n : comp) {
    QVec row(nu, Rat(0));
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < nu; ++j) row[j] += n[i] * T.at(i, j);
    sys.rows.push_back(row);
  }
  rep.numerics["system"] = {};
  for (const auto& row : sys.rows)
    for (const auto& v : row) rep.numerics["system"].push_back(Enclosure::exact(v));

  std::vector<QVec> cands = sys.rows.empty() ? std::vector<QVec>{} : kernel_basis(sys);
  if (sys.rows.empty()) {
    // no equality constraints at all: constant weight candidate
    QVec c(nu, Rat(0));
    c[0] = 1;
    cands = {c};
  }
  if (cands.empty()) {
    rep.verdict = Verdict::NotExists;
    rep.certificate = "the linear barycenter system has no nonzero solution";
    return rep;
  }
  // average of the kernel basis as an extra candidate when dim > 1
  if (cands.size() > 1) {
    QVec avg(nu, Rat(0));
    for (const auto& c : cands) avg = add(avg, c);
    cands.push_back(avg);
  }

  Verdict best = Verdict::NotExists;
  std::string why = "no candidate functional is admissible";
  // report the solved line even when inadmissible: the certificate of a
  // not_exists verdict is precisely this functional together with its sign
  // change or cone failure
  {
    QVec c = cands[0];
    QVec lin(da, Rat(0));
    for (size_t j = 0; j < dirs.size(); ++j) lin = add(lin, scale(c[j + 1], dirs[j]));
    // canonical sign: positive at the unweighted barycenter when nonzero
    auto bar = dh_barycenter(anticanonical, ctx.dh.expanded, WeightSpec::constant(),
                             default_exp_tol());
    QVec barv;
    for (const auto& e : bar) barv.push_back(e.mid());
    Rat at_bar = dot(lin, barv) + c[0];
    int sign = sgn(at_bar);
    if (sign == 0)
      for (const auto& x : c)
        if (x != 0) {
          sign = sgn(x);
          break;
        }
    if (sign < 0) {
      lin = scale(Rat(-1), lin);
      c = scale(Rat(-1), c);
    }
    rep.solved_lin = lin;
    rep.solved_c0 = c[0];
  }
  for (const auto& cand : cands) {
    for (int s = 0; s < 2; ++s) {
      QVec c = s == 0 ? cand : scale(Rat(-1), cand);
      // positivity of ℓ at every vertex
      QVec lin(da, Rat(0));
      for (size_t j = 0; j < dirs.size(); ++j) lin = add(lin, scale(c[j + 1], dirs[j]));
      bool positive = true, zero_at_vertex = false;
      for (const auto& v : anticanonical.vertices) {
        Rat val = dot(lin, v) + c[0];
        if (val < 0) {
          positive = false;
          break;
        }
        if (val == 0) zero_at_vertex = true;
      }
      if (!positive) {
        why = "solved affine weight changes sign on the polytope";
        continue;
      }
      // cone condition on E(c)
      QVec e(r, Rat(0));
      for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < nu; ++j) e[i] += T.at(i, j) * c[j];
      auto cone_cert = contains_relint_cone(ctx.chamber.dual, e);
      bool cone_ok = cone_cert.inside || (is_zero(e) && ctx.chamber.dual.is_trivial());
      if (!cone_ok) {
        why = "barycenter difference misses the relative interior of the dual chamber cone";
        continue;
      }
      Verdict v = zero_at_vertex ? Verdict::Boundary : Verdict::Exists;
      if (v == Verdict::Exists || best == Verdict::NotExists) {
        best = v;
        rep.solved_lin = lin;
        rep.solved_c0 = c[0];
      }
      if (best == Verdict::Exists) break;
    }
    if (best == Verdict::Exists) break;
  }
  rep.verdict = best;
  if (best == Verdict::Exists)
    rep.certificate = "positive affine weight solving the barycenter system";
  else if (best == Verdict::Boundary)
    rep.certificate = "solved weight vanishes at a vertex";
  else
    rep.certificate = why;
  return rep;
}

ExistenceReport solve_power_mabuchi(const CriteriaContext& ctx, const Polytope& anticanonical,
                                    unsigned k) {
  ExistenceReport rep;
  rep.check = "power_mabuchi_k" + std::to_string(k);
  size_t r = ctx.datum.rank_m(), da = ctx.datum.ambient_rank;
  if (ctx.datum.central_directions.size() != 1)
    throw RankTooHigh("power-Mabuchi requires a one-dimensional central direction space");
  const QVec& d0 = ctx.datum.central_directions[0];

  // condition rows: N_i · ∫ (m − ρ)(a ℓ1 + b)^k dh = 0
  std::vector<QVec> comp = dual_span_complement(ctx.chamber.dual, r);
  std::vector<UPoly> rows;  // polynomials in a (with b = 1)
  for (const auto& n : comp) {
    QVec mrow(da, Rat(0));
    Rat shift(0);
    for (size_t i = 0; i < r; ++i) {
      mrow = add(mrow, scale(n[i], ctx.m_map.rows[i]));
      shift -= n[i] * ctx.rho.m_coords[i];
    }
    Poly diff = Poly::linear(mrow, shift);
    std::vector<Rat> mom =
        affine_power_moments(anticanonical, ctx.dh.expanded, d0, Rat(0), diff, k);
    // Σ_j C(k,j) a^j T_j
    std::vector<Rat> coeffs(k + 1, Rat(0));
    Rat binom(1);
    for (unsigned j = 0; j <= k; ++j) {
      coeffs[j] = binom * mom[j];
      binom = binom * Rat((long)(k - j)) / Rat((long)(j + 1));
    }
    UPoly row = u_from(coeffs);
    if (!row.is_zero()) rows.push_back(row);
  }
  UPoly eq;
  if (!rows.empty()) {
    eq = rows[0];
    for (size_t i = 1; i < rows.size(); ++i) eq = ugcd(eq, rows[i]);
  }
  if (eq.is_zero() || eq.degree() == 0) {
    if (rows.empty()) {
      rep.verdict = Verdict::Boundary;
      rep.certificate = "no equality constraints; any positive weight qualifies";
      return rep;
    }
    rep.verdict = Verdict::NotExists;
    rep.certificate = "defining polynomial has no roots";
    rep.defining_poly = u_normalize(rows[0]);
    return rep;
  }
  rep.defining_poly = u_normalize(rows.size() == 1 ? rows[0] : eq);

  Rat width = Rat(1) / Rat(mpz_class("1000000000000"));
  auto roots = isolate_real_roots(eq, width);
  rep.roots = roots;
  bool any_admissible = false, any_boundary = false;
  for (const auto& root : roots) {
    // positivity of a ℓ1(v) + 1 at every vertex, judged on the enclosure
    RootInterval iv = root;
    bool admissible = true, boundary = false;
    for (const auto& v : anticanonical.vertices) {
      Rat pv = dot(d0, v);
      // value interval: 1 + a·pv
      Rat lo = 1 + (pv >= 0 ? iv.lo * pv : iv.hi * pv);
      Rat hi = 1 + (pv >= 0 ? iv.hi * pv : iv.lo * pv);
      int guard = 0;
      while (lo <= 0 && hi >= 0 && !iv.exact() && guard < 64) {
        // refine the root until the sign is determined
        auto finer = isolate_real_roots_in(eq, iv.lo, iv.hi, (iv.hi - iv.lo) / 16);
        if (finer.size() == 1) iv = finer[0];
        lo = 1 + (pv >= 0 ? iv.lo * pv : iv.hi * pv);
        hi = 1 + (pv >= 0 ? iv.hi * pv : iv.lo * pv);
        ++guard;
      }
      if (iv.exact()) {
        Rat val = 1 + iv.lo * pv;
        if (val < 0) {
          admissible = false;
          break;
        }
        if (val == 0) boundary = true;
        continue;
      }
      if (hi < 0) {
        admissible = false;
        break;
      }
      if (lo <= 0) {
        boundary = true;  // undetermined after refinement: report as boundary
      }
    }
    rep.admissible.push_back(admissible && !boundary);
    any_admissible = any_admissible || (admissible && !boundary);
    any_boundary = any_boundary || (admissible && boundary);
  }
  // the b = 0 branch ℓ = a·ℓ1 is admissible only if ℓ1 has constant sign and
  // the leading condition vanishes; cover it for completeness
  if (!any_admissible && !eq.is_zero() && eq.c.back() == 0) {
    bool pos = true;
    for (const auto& v : anticanonical.vertices) pos = pos && dot(d0, v) > 0;
    bool neg = true;
    for (const auto& v : anticanonical.vertices) neg = neg && dot(d0, v) < 0;
    if (pos || neg) any_admissible = true;
  }
  rep.verdict = any_admissible ? Verdict::Exists
                               : (any_boundary ? Verdict::Boundary : Verdict::NotExists);
  rep.certificate = any_admissible
                        ? "admissible root of the defining polynomial"
                        : (any_boundary ? "candidate weight vanishes at a vertex"
                                        : "no admissible root of the defining polynomial");
  return rep;
}

// ----- coupled search -----

CoupledSearchResult coupled_search(const CriteriaContext& ctx, const DecompositionFamily& family,
                                   const Rat& root_width) {
  size_t r = ctx.datum.rank_m(), da = ctx.datum.ambient_rank;
  if (family.classes.empty()) throw InvalidDecomposition("empty family");

  // variables: 0 = parameter s, 1 = segment parameter τ
  auto affine2 = [&](const Rat& base, const Rat& scoef, const Rat& tcoef) {
    Poly p(2);
    p.add_term({0, 0}, base);
    p.add_term({1, 0}, scoef);
    p.add_term({0, 1}, tcoef);
    return p;
  };

  // per class: D_i(s) = ∫ P_DH dτ and N_{c,i}(s) = ∫ m_c(q) P_DH dτ
  std::vector<UPoly> den(family.classes.size());
  std::vector<std::vector<UPoly>> num(family.classes.size(), std::vector<UPoly>(r));
  for (size_t i = 0; i < family.classes.size(); ++i) {
    const auto& cl = family.classes[i];
    QVec dir_base = sub(cl.v1_base, cl.v0_base);
    QVec dir_coeff = sub(cl.v1_coeff, cl.v0_coeff);
    if (!is_zero(dir_coeff))
      throw NotUnivariate("segment direction must not depend on the parameter");
    // q_c(s, τ) = v0_base_c + s·v0_coeff_c + τ·dir_c
    std::vector<Poly> subs;
    for (size_t cc = 0; cc < da; ++cc)
      subs.push_back(affine2(cl.v0_base[cc], cl.v0_coeff[cc], dir_base[cc]));
    Poly dens = compose(ctx.dh.expanded, subs);
    auto integrate_tau = [&](const Poly& p) {
      Poly out(1);
      for (const auto& [e, c2] : p.terms) out.add_term({e[0]}, c2 / Rat((long)e[1] + 1));
      UPoly u;
      for (const auto& [e, c2] : out.terms) {
        if (u.c.size() <= e[0]) u.c.resize(e[0] + 1, Rat(0));
        u.c[e[0]] += c2;
      }
      u.trim();
      return u;
    };
    den[i] = integrate_tau(dens);
    for (size_t cc = 0; cc < r; ++cc) {
      Poly mc = compose(Poly::linear(ctx.m_map.rows[cc], Rat(0)), subs);
      num[i][cc] = integrate_tau(mc * dens);
    }
  }

  // component equations: Σ_i N_{c,i} Π_{j≠i} D_j − ρ_c Π D_j = 0
  UPoly prod_all;
  prod_all.c = {Rat(1)};
  for (const auto& d : den) prod_all = prod_all * d;
  std::vector<UPoly> eqs;
  for (size_t cc = 0; cc < r; ++cc) {
    UPoly lhs;
    for (size_t i = 0; i < family.classes.size(); ++i) {
      UPoly t = num[i][cc];
      for (size_t j = 0; j < family.classes.size(); ++j)
        if (j != i) t = t * den[j];
      lhs = lhs + t;
    }
    UPoly rhs = prod_all;
    for (Rat& x : rhs.c) x *= ctx.rho.m_coords[cc];
    UPoly e = lhs - rhs;
    if (!e.is_zero()) eqs.push_back(e);
  }
  CoupledSearchResult out;
  if (eqs.empty()) throw NotUnivariate("the barycenter condition is identically satisfied");
  UPoly eq = eqs[0];
  for (size_t i = 1; i < eqs.size(); ++i) eq = ugcd(eq, eqs[i]);
  if (eq.degree() == 0) {
    out.defining_poly = u_normalize(eqs[0]);
    return out;  // inconsistent system: no roots
  }
  out.defining_poly = u_normalize(eqs.size() == 1 ? eqs[0] : eq);

  auto roots = isolate_real_roots(eq, root_width);
  for (auto& iv : roots) {
    // admissibility: window constraints strictly positive, and the class
    // masses positive at the root (sign via interval evaluation)
    bool ok = true;
    for (const auto& [c0, c1] : family.window) {
      Rat lo = c0 + (c1 >= 0 ? c1 * iv.lo : c1 * iv.hi);
      Rat hi = c0 + (c1 >= 0 ? c1 * iv.hi : c1 * iv.lo);
      int guard = 0;
      while (lo <= 0 && hi >= 0 && !iv.exact() && guard < 64) {
        auto finer = isolate_real_roots_in(eq, iv.lo, iv.hi, (iv.hi - iv.lo) / 16);
        if (finer.size() != 1) break;
        iv = finer[0];
        lo = c0 + (c1 >= 0 ? c1 * iv.lo : c1 * iv.hi);
        hi = c0 + (c1 >= 0 ? c1 * iv.hi : c1 * iv.lo);
        ++guard;
      }
      if (iv.exact()) {
        if (c0 + c1 * iv.lo <= 0) {
          ok = false;
          break;
        }
      } else if (hi <= 0 || lo <= 0) {
        ok = false;
        break;
      }
    }
    out.roots.push_back(iv);
    out.admissible.push_back(ok);
  }
  return out;
}

ExistenceReport check_twisted_ke_toric(const QVec& bar, const Polytope& twist) {
  ExistenceReport rep;
  rep.check = "twisted_ke_toric";
  Polytope shifted = translate(twist, bar);
  QVec zero(bar.size(), Rat(0));
  auto cert = contains_relint(shifted, zero);
  rep.relint = cert;
  rep.tested_facets = shifted.facets;
  rep.tested_equations = shifted.equations;
  for (const auto& v : zero) rep.tested_point.push_back(Enclosure::exact(v));
  if (cert.inside) {
    if (shifted.dim_affine == 0) {
      // relint of a point is the point; equality is a degenerate boundary hit
      rep.verdict = Verdict::Boundary;
      rep.certificate = "bar + twist polytope degenerates to the origin";
    } else {
      rep.verdict = Verdict::Exists;
      rep.certificate = "relint witness, min facet slack " + rat_str(cert.min_slack);
    }
  } else if (cert.off_affine_hull) {
    rep.verdict = Verdict::NotExists;
    rep.certificate = "origin misses the affine hull of bar + twist polytope";
  } else {
    rep.verdict = cert.tight ? Verdict::Boundary : Verdict::NotExists;
    rep.certificate = std::string(cert.tight ? "tight" : "violated") + " facet " +
                      facet_string(shifted.facets[cert.facet]);
  }
  return rep;
}

}  // namespace horoke
