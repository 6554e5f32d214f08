#include "horoke/geometry.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace horoke {

namespace {

void check_dim(size_t dim) {
  if (dim > kMaxAmbientDim) throw std::invalid_argument("ambient dimension exceeds cap 6");
}

struct DDRay {
  QVec v;
  std::vector<bool> tight;  // per processed inequality
};

bool subset_of(const std::vector<bool>& a, const std::vector<bool>& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

std::vector<QVec> canonical_basis(std::vector<QVec> vs) {
  QMat m;
  for (auto& v : vs) m.rows.push_back(v);
  auto pivots = rref(m);
  std::vector<QVec> out;
  for (size_t r = 0; r < pivots.size(); ++r) out.push_back(primitive(m.rows[r]));
  return out;
}

}  // namespace

DDResult dd_cone(const std::vector<QVec>& ineqs, size_t dim) {
  check_dim(dim);
  std::vector<QVec> lineality;
  for (size_t i = 0; i < dim; ++i) {
    QVec e(dim, Rat(0));
    e[i] = 1;
    lineality.push_back(e);
  }
  std::vector<DDRay> rays;
  size_t processed = 0;

  for (const QVec& a : ineqs) {
    // case 1: lineality not orthogonal to a
    size_t pivot = lineality.size();
    for (size_t i = 0; i < lineality.size(); ++i)
      if (dot(a, lineality[i]) != 0) {
        pivot = i;
        break;
      }
    if (pivot < lineality.size()) {
      QVec l0 = lineality[pivot];
      Rat al0 = dot(a, l0);
      std::vector<QVec> newlin;
      for (size_t i = 0; i < lineality.size(); ++i) {
        if (i == pivot) continue;
        Rat f = dot(a, lineality[i]) / al0;
        newlin.push_back(sub(lineality[i], scale(f, l0)));
      }
      lineality = std::move(newlin);
      for (auto& r : rays) {
        Rat f = dot(a, r.v) / al0;
        r.v = sub(r.v, scale(f, l0));
        r.tight.push_back(true);
      }
      DDRay r0;
      r0.v = sgn(al0) > 0 ? l0 : scale(Rat(-1), l0);
      r0.tight.assign(processed, true);
      r0.tight.push_back(false);
      rays.push_back(std::move(r0));
      ++processed;
      continue;
    }
    // case 2: partition rays by sign
    std::vector<DDRay> plus, zero, minus;
    for (auto& r : rays) {
      int s = sgn(dot(a, r.v));
      if (s > 0)
        plus.push_back(r);
      else if (s == 0)
        zero.push_back(r);
      else
        minus.push_back(r);
    }
    std::vector<DDRay> next;
    for (auto& r : plus) {
      r.tight.push_back(false);
      next.push_back(r);
    }
    for (auto& r : zero) {
      r.tight.push_back(true);
      next.push_back(r);
    }
    for (const auto& rp : plus) {
      for (const auto& rm : minus) {
        // adjacency: no third ray's tight set contains tight(rp) ∩ tight(rm)
        std::vector<bool> common(processed);
        for (size_t i = 0; i < processed; ++i) common[i] = rp.tight[i] && rm.tight[i];
        bool adjacent = true;
        for (const auto& other : rays) {
          if (&other == &rp || &other == &rm) continue;
          if (other.v == rp.v || other.v == rm.v) continue;
          if (subset_of(common, other.tight)) {
            adjacent = false;
            break;
          }
        }
        if (!adjacent) continue;
        DDRay w;
        w.v = primitive_dir(sub(scale(dot(a, rp.v), rm.v), scale(dot(a, rm.v), rp.v)));
        if (is_zero(w.v)) continue;
        w.tight = common;
        w.tight.push_back(true);
        next.push_back(std::move(w));
      }
    }
    rays = std::move(next);
    ++processed;
  }

  DDResult res;
  std::set<QVec, bool (*)(const QVec&, const QVec&)> seen(lex_less);
  for (auto& r : rays) {
    QVec v = primitive_dir(r.v);
    if (is_zero(v)) continue;
    if (seen.insert(v).second) res.rays.push_back(v);
  }
  std::sort(res.rays.begin(), res.rays.end(), lex_less);
  res.lineality = canonical_basis(lineality);
  return res;
}

// homogenize {x : <n,x> <= o} as rows (-n, o) of a cone in dim+1 vars, plus
// t >= 0; extreme rays with positive last coordinate are vertices.
namespace {

struct HomogOut {
  std::vector<QVec> vertices;
  std::vector<QVec> rec_rays;
  std::vector<QVec> rec_lineality;
};

HomogOut homogenize_solve(const std::vector<Halfspace>& hrep, const std::vector<Equation>& eqs,
                          size_t dim) {
  std::vector<QVec> rows;
  for (const auto& h : hrep) {
    QVec r(dim + 1);
    for (size_t i = 0; i < dim; ++i) r[i] = -h.normal[i];
    r[dim] = h.offset;
    rows.push_back(std::move(r));
  }
  for (const auto& e : eqs) {
    QVec r(dim + 1);
    for (size_t i = 0; i < dim; ++i) r[i] = -e.normal[i];
    r[dim] = e.offset;
    rows.push_back(r);
    for (auto& x : r) x = -x;
    rows.push_back(r);
  }
  {
    QVec t(dim + 1, Rat(0));
    t[dim] = 1;
    rows.push_back(std::move(t));
  }
  DDResult dd = dd_cone(rows, dim + 1);
  HomogOut out;
  for (const auto& r : dd.rays) {
    if (r[dim] > 0) {
      QVec v(dim);
      for (size_t i = 0; i < dim; ++i) v[i] = r[i] / r[dim];
      out.vertices.push_back(std::move(v));
    } else {
      out.rec_rays.push_back(QVec(r.begin(), r.begin() + dim));
    }
  }
  for (const auto& l : dd.lineality) {
    // t-component of lineality is 0 given the t >= 0 constraint
    out.rec_lineality.push_back(QVec(l.begin(), l.begin() + dim));
  }
  std::sort(out.vertices.begin(), out.vertices.end(), lex_less);
  return out;
}

// facets and affine hull of conv(points) + cone(rays)
struct HullOut {
  std::vector<Halfspace> facets;
  std::vector<Equation> equations;
};

HullOut hull_hrep(const std::vector<QVec>& points, const std::vector<QVec>& rays, size_t dim) {
  // valid inequalities (n, o) with <n, v> <= o, <n, r> <= 0 form a cone in
  // dim+1 variables; its extreme rays are the facets, its lineality the
  // affine hull equations.
  std::vector<QVec> rows;
  for (const auto& v : points) {
    QVec r(dim + 1);
    for (size_t i = 0; i < dim; ++i) r[i] = -v[i];
    r[dim] = 1;
    rows.push_back(std::move(r));
  }
  for (const auto& rr : rays) {
    QVec r(dim + 1, Rat(0));
    for (size_t i = 0; i < dim; ++i) r[i] = -rr[i];
    rows.push_back(std::move(r));
  }
  DDResult dd = dd_cone(rows, dim + 1);
  HullOut out;
  for (const auto& r : dd.rays) {
    QVec n(r.begin(), r.begin() + dim);
    if (is_zero(n)) continue;  // the trivial 0 <= o ray
    out.facets.push_back({n, r[dim]});
  }
  for (const auto& l : dd.lineality) {
    // lineality (n, o) of the valid-inequality cone satisfies <n, v> = o on
    // every generator: an affine-hull equation
    QVec n(l.begin(), l.begin() + dim);
    if (is_zero(n)) continue;
    out.equations.push_back({n, l[dim]});
  }
  // canonicalize equations: rref of [n | -o] rows
  if (!out.equations.empty()) {
    QMat m;
    for (auto& e : out.equations) {
      QVec row = e.normal;
      row.push_back(-e.offset);
      m.rows.push_back(std::move(row));
    }
    auto piv = rref(m);
    out.equations.clear();
    for (size_t r = 0; r < piv.size(); ++r) {
      QVec row = primitive(m.rows[r]);
      QVec n(row.begin(), row.begin() + dim);
      if (is_zero(n)) continue;
      out.equations.push_back({n, -row[dim]});
    }
  }
  auto facet_less = [](const Halfspace& a, const Halfspace& b) {
    if (a.normal != b.normal) return lex_less(a.normal, b.normal);
    return a.offset < b.offset;
  };
  for (auto& f : out.facets) {
    QVec joint = f.normal;
    joint.push_back(f.offset);
    joint = primitive_dir(joint);
    f.normal = QVec(joint.begin(), joint.end() - 1);
    f.offset = joint.back();
  }
  std::sort(out.facets.begin(), out.facets.end(), facet_less);
  return out;
}

}  // namespace

std::vector<QVec> vertices_from_hrep(const std::vector<Halfspace>& hrep, size_t dim) {
  check_dim(dim);
  HomogOut h = homogenize_solve(hrep, {}, dim);
  if (h.vertices.empty()) throw EmptySet();
  if (!h.rec_rays.empty() || !h.rec_lineality.empty()) throw Unbounded();
  return h.vertices;
}

Polytope polytope_from_hrep(const std::vector<Halfspace>& hrep, const std::vector<Equation>& eqs,
                            size_t dim) {
  check_dim(dim);
  HomogOut h = homogenize_solve(hrep, eqs, dim);
  if (h.vertices.empty()) throw EmptySet();
  if (!h.rec_rays.empty() || !h.rec_lineality.empty()) throw Unbounded();
  return polytope_from_vertices(h.vertices);
}

Polytope polytope_from_vertices(const std::vector<QVec>& points) {
  if (points.empty()) throw EmptySet();
  size_t dim = points[0].size();
  check_dim(dim);
  Polytope p;
  p.dim_ambient = dim;
  HullOut hull = hull_hrep(points, {}, dim);
  p.facets = hull.facets;
  p.equations = hull.equations;
  p.dim_affine = dim - p.equations.size();
  // extreme points only: a point is a vertex iff it is the unique optimum of
  // some facet subset; equivalently DD on the homogenization. Reuse it.
  HomogOut h = homogenize_solve(p.facets, p.equations, dim);
  p.vertices = h.vertices;
  if (p.vertices.empty()) throw std::logic_error("hull reconstruction lost all vertices");
  return p;
}

PolyCone cone_from_generators(const std::vector<QVec>& gens, size_t dim) {
  check_dim(dim);
  PolyCone c;
  c.dim_ambient = dim;
  HullOut hull = hull_hrep({QVec(dim, Rat(0))}, gens, dim);
  for (auto& f : hull.facets) {
    assert(f.offset == 0);
    c.facets.push_back(f);
  }
  for (auto& e : hull.equations) c.equations.push_back({e.normal, Rat(0)});
  // re-derive canonical rays/lineality from the hrep
  std::vector<QVec> rows;
  for (const auto& f : c.facets) rows.push_back(scale(Rat(-1), f.normal));
  for (const auto& e : c.equations) {
    rows.push_back(e.normal);
    rows.push_back(scale(Rat(-1), e.normal));
  }
  DDResult dd = dd_cone(rows, dim);
  c.rays = dd.rays;
  c.lineality = dd.lineality;
  c.pointed = c.lineality.empty();
  return c;
}

PolyCone cone_from_hrep(const std::vector<Halfspace>& hrep, size_t dim) {
  check_dim(dim);
  std::vector<QVec> rows;
  for (const auto& h : hrep) {
    assert(h.offset == 0);
    rows.push_back(scale(Rat(-1), h.normal));
  }
  DDResult dd = dd_cone(rows, dim);
  std::vector<QVec> gens = dd.rays;
  for (const auto& l : dd.lineality) {
    gens.push_back(l);
    gens.push_back(scale(Rat(-1), l));
  }
  return cone_from_generators(gens, dim);
}

PolyCone trivial_cone(size_t dim) { return cone_from_generators({}, dim); }

PolyCone full_space_cone(size_t dim) {
  std::vector<QVec> gens;
  for (size_t i = 0; i < dim; ++i) {
    QVec e(dim, Rat(0));
    e[i] = 1;
    gens.push_back(e);
    e[i] = -1;
    gens.push_back(e);
  }
  return cone_from_generators(gens, dim);
}

Polytope minkowski_sum(const Polytope& a, const Polytope& b) {
  if (a.dim_ambient != b.dim_ambient) throw DimensionMismatch("minkowski_sum");
  std::vector<QVec> sums;
  for (const auto& u : a.vertices)
    for (const auto& v : b.vertices) sums.push_back(add(u, v));
  return polytope_from_vertices(sums);
}

Polytope translate(const Polytope& p, const QVec& v) {
  std::vector<QVec> vs;
  for (const auto& u : p.vertices) vs.push_back(add(u, v));
  return polytope_from_vertices(vs);
}

Polytope scale_polytope(const Rat& c, const Polytope& p) {
  std::vector<QVec> vs;
  for (const auto& u : p.vertices) vs.push_back(scale(c, u));
  return polytope_from_vertices(vs);
}

Polytope intersect(const Polytope& p, const std::vector<Halfspace>& cuts,
                   const std::vector<Equation>& eq_cuts) {
  std::vector<Halfspace> hrep = p.facets;
  hrep.insert(hrep.end(), cuts.begin(), cuts.end());
  std::vector<Equation> eqs = p.equations;
  eqs.insert(eqs.end(), eq_cuts.begin(), eq_cuts.end());
  return polytope_from_hrep(hrep, eqs, p.dim_ambient);
}

Polyhedron sum_with_cone(const Polytope& p, const PolyCone& c) {
  if (p.dim_ambient != c.dim_ambient) throw DimensionMismatch("sum_with_cone");
  Polyhedron s;
  s.base = p;
  s.recession = c;
  std::vector<QVec> rays = c.rays;
  for (const auto& l : c.lineality) {
    rays.push_back(l);
    rays.push_back(scale(Rat(-1), l));
  }
  HullOut hull = hull_hrep(p.vertices, rays, p.dim_ambient);
  s.facets = hull.facets;
  s.equations = hull.equations;
  return s;
}

PolyCone dual_cone(const PolyCone& c, const QMat& gram) {
  // {y : y^T G x >= 0 for all generators x} — an hrep in y with rows G x.
  std::vector<QVec> rows;
  for (const auto& r : c.rays) rows.push_back(mat_vec(gram, r));
  for (const auto& l : c.lineality) {
    QVec gl = mat_vec(gram, l);
    rows.push_back(gl);
    rows.push_back(scale(Rat(-1), gl));
  }
  DDResult dd = dd_cone(rows, c.dim_ambient);
  std::vector<QVec> gens = dd.rays;
  for (const auto& l : dd.lineality) {
    gens.push_back(l);
    gens.push_back(scale(Rat(-1), l));
  }
  return cone_from_generators(gens, c.dim_ambient);
}

PolyCone negate_cone(const PolyCone& c) {
  std::vector<QVec> gens;
  for (const auto& r : c.rays) gens.push_back(scale(Rat(-1), r));
  for (const auto& l : c.lineality) {
    gens.push_back(l);
    gens.push_back(scale(Rat(-1), l));
  }
  return cone_from_generators(gens, c.dim_ambient);
}

Rat support_eval(const Polytope& p, const QVec& xi) {
  assert(!p.vertices.empty());
  Rat best = dot(p.vertices[0], xi);
  for (size_t i = 1; i < p.vertices.size(); ++i) {
    Rat v = dot(p.vertices[i], xi);
    if (v > best) best = v;
  }
  return best;
}

static RelintCertificate relint_check(const std::vector<Halfspace>& facets,
                                      const std::vector<Equation>& eqs, const QVec& p) {
  RelintCertificate cert;
  for (const auto& e : eqs) {
    if (dot(e.normal, p) != e.offset) {
      cert.off_affine_hull = true;
      return cert;
    }
  }
  bool first = true;
  for (size_t i = 0; i < facets.size(); ++i) {
    Rat slack = facets[i].offset - dot(facets[i].normal, p);
    if (slack < 0) {
      cert = {};
      cert.facet = (int)i;
      cert.tight = false;
      return cert;
    }
    if (slack == 0) {
      cert = {};
      cert.facet = (int)i;
      cert.tight = true;
      return cert;
    }
    if (first || slack < cert.min_slack) cert.min_slack = slack;
    first = false;
  }
  cert.inside = true;
  if (first) cert.min_slack = 1;  // no facets at all
  return cert;
}

RelintCertificate contains_relint(const Polyhedron& s, const QVec& p) {
  return relint_check(s.facets, s.equations, p);
}
RelintCertificate contains_relint(const Polytope& s, const QVec& p) {
  return relint_check(s.facets, s.equations, p);
}
RelintCertificate contains_relint_cone(const PolyCone& c, const QVec& p) {
  return relint_check(c.facets, c.equations, p);
}

Rat relint_eps(const std::vector<Halfspace>& facets, const QVec& p, const QVec& d) {
  Rat eps(1);
  bool constrained = false;
  for (const auto& f : facets) {
    Rat nd = dot(f.normal, d);
    if (nd == 0) continue;
    Rat slack = f.offset - dot(f.normal, p);
    Rat bound = slack / abs(nd);
    if (!constrained || bound < eps) eps = bound;
    constrained = true;
  }
  return eps;
}

bool polytope_equal(const Polytope& a, const Polytope& b) {
  return a.dim_ambient == b.dim_ambient && a.vertices == b.vertices;
}

bool contains_point(const Polytope& p, const QVec& x) {
  for (const auto& e : p.equations)
    if (dot(e.normal, x) != e.offset) return false;
  for (const auto& f : p.facets)
    if (dot(f.normal, x) > f.offset) return false;
  return true;
}

// ----- triangulation -----

namespace {

// vertices of p tight on facet f
std::vector<QVec> facet_vertices(const Polytope& p, const Halfspace& f) {
  std::vector<QVec> out;
  for (const auto& v : p.vertices)
    if (dot(f.normal, v) == f.offset) out.push_back(v);
  return out;
}

void triangulate_rec(const std::vector<QVec>& verts, std::vector<Simplex>& out, FanApex apex) {
  Polytope p = polytope_from_vertices(verts);
  if (p.dim_affine == 0) {
    out.push_back({{p.vertices[0]}});
    return;
  }
  QVec v0 = apex == FanApex::Lowest ? p.vertices.front() : p.vertices.back();
  for (const auto& f : p.facets) {
    if (dot(f.normal, v0) == f.offset) continue;  // facet contains the apex
    std::vector<Simplex> sub;
    triangulate_rec(facet_vertices(p, f), sub, apex);
    for (auto& s : sub) {
      s.verts.push_back(v0);
      out.push_back(std::move(s));
    }
  }
}

}  // namespace

std::vector<Simplex> triangulate(const Polytope& p, FanApex apex) {
  std::vector<Simplex> out;
  if (p.vertices.size() == 1) {
    out.push_back({{p.vertices[0]}});
    return out;
  }
  triangulate_rec(p.vertices, out, apex);
  return out;
}

QVec AffineChart::to_ambient(const QVec& chart) const {
  QVec x = origin;
  for (size_t i = 0; i < basis.size(); ++i) x = add(x, scale(chart[i], basis[i]));
  return x;
}

QVec AffineChart::to_chart(const QVec& ambient) const {
  // solve basis * y = ambient - origin (consistent by construction)
  QMat m(origin.size(), basis.size());
  for (size_t j = 0; j < basis.size(); ++j)
    for (size_t i = 0; i < origin.size(); ++i) m.at(i, j) = basis[j][i];
  auto y = solve(m, sub(ambient, origin));
  assert(y.has_value());
  return *y;
}

AffineChart lattice_chart(const Polytope& p) {
  AffineChart ch;
  ch.origin = p.vertices.front();
  std::vector<QVec> dirs;
  for (size_t i = 1; i < p.vertices.size(); ++i) dirs.push_back(sub(p.vertices[i], ch.origin));
  ch.basis = saturated_lattice_basis(dirs, p.dim_ambient);
  assert(ch.basis.size() == p.dim_affine);
  return ch;
}

Rat simplex_volume(const Simplex& s, const AffineChart& chart) {
  size_t k = chart.basis.size();
  assert(s.verts.size() == k + 1);
  if (k == 0) return 1;
  QMat m(k, k);
  QVec y0 = chart.to_chart(s.verts[0]);
  for (size_t j = 1; j <= k; ++j) {
    QVec yj = chart.to_chart(s.verts[j]);
    for (size_t i = 0; i < k; ++i) m.at(i, j - 1) = yj[i] - y0[i];
  }
  Rat d = det(m);
  Rat f(1);
  for (size_t i = 2; i <= k; ++i) f *= Rat((long)i);
  return abs(d) / f;
}

}  // namespace horoke
