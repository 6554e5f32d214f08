#include "horoke/quadrature.hpp"

#include <cassert>

namespace horoke {

WeightSpec WeightSpec::constant() { return {}; }

WeightSpec WeightSpec::affine(const QVec& lin, const Rat& c0) {
  WeightSpec w;
  w.kind = Kind::Affine;
  w.lin = lin;
  w.c0 = c0;
  return w;
}

WeightSpec WeightSpec::exp_affine(const QVec& xi, const Rat& c) {
  WeightSpec w;
  w.kind = Kind::ExpAffine;
  w.lin = xi;
  w.c0 = c;
  return w;
}

WeightSpec WeightSpec::power_affine(const QVec& lin, const Rat& c0, unsigned k) {
  WeightSpec w;
  w.kind = Kind::PowerAffine;
  w.lin = lin;
  w.c0 = c0;
  w.power = k;
  return w;
}

Poly WeightSpec::poly_factor(size_t nvars) const {
  switch (kind) {
    case Kind::Constant:
    case Kind::ExpAffine:
      return Poly::constant(nvars, Rat(1));
    case Kind::Affine:
      return Poly::linear(lin, c0);
    case Kind::PowerAffine: {
      Poly base = Poly::linear(lin, c0);
      Poly r = Poly::constant(nvars, Rat(1));
      for (unsigned i = 0; i < power; ++i) r = r * base;
      return r;
    }
  }
  return Poly::constant(nvars, Rat(1));
}

namespace {

// Dirichlet moment: ∫_{std simplex, m vars} y^e dy = (∏ e_i!) / (|e| + m)!
Rat dirichlet_moment(const Expo& e) {
  size_t m = e.size();
  if (m == 0) return 1;  // a point carries unit mass
  mpz_class num = 1;
  unsigned total = 0;
  for (unsigned k : e) {
    for (unsigned i = 2; i <= k; ++i) num *= i;
    total += k;
  }
  mpz_class den = 1;
  for (unsigned i = 2; i <= total + (unsigned)m; ++i) den *= i;
  Rat r{num, den};
  r.canonicalize();
  return r;
}

// affine substitutions mapping the standard simplex onto the chart-coordinate
// simplex with vertex list ys: y = ys[0] + Σ z_j (ys[j+1] - ys[0])
std::vector<Poly> simplex_subs(const std::vector<QVec>& ys) {
  size_t m = ys.size() - 1;
  size_t k = ys[0].size();
  std::vector<Poly> subs;
  for (size_t i = 0; i < k; ++i) {
    QVec coeffs(m);
    for (size_t j = 0; j < m; ++j) coeffs[j] = ys[j + 1][i] - ys[0][i];
    subs.push_back(Poly::linear(coeffs, ys[0][i]));
  }
  return subs;
}

Rat simplex_jacobian(const std::vector<QVec>& ys) {
  size_t m = ys.size() - 1;
  if (m == 0) return 1;
  QMat mat(m, m);
  for (size_t j = 0; j < m; ++j)
    for (size_t i = 0; i < m; ++i) mat.at(i, j) = ys[j + 1][i] - ys[0][i];
  return abs(det(mat));
}

// ambient polynomial composed into chart coordinates
Poly to_chart_poly(const Poly& f, const AffineChart& ch) {
  size_t k = ch.basis.size();
  std::vector<Poly> subs;
  for (size_t i = 0; i < ch.origin.size(); ++i) {
    QVec coeffs(k);
    for (size_t j = 0; j < k; ++j) coeffs[j] = ch.basis[j][i];
    subs.push_back(Poly::linear(coeffs, ch.origin[i]));
  }
  return compose(f, subs);
}

void check_affine_positive(const Polytope& p, const WeightSpec& w) {
  if (w.kind != WeightSpec::Kind::Affine && w.kind != WeightSpec::Kind::PowerAffine) return;
  for (const auto& v : p.vertices) {
    if (dot(w.lin, v) + w.c0 <= 0)
      throw NonpositiveWeight("affine weight is not positive at a vertex");
  }
}

}  // namespace

Rat integrate_poly(const Polytope& p, const Poly& f, FanApex apex) {
  assert(f.nvars == p.dim_ambient);
  AffineChart ch = lattice_chart(p);
  Poly fc = to_chart_poly(f, ch);
  Rat total(0);
  for (const Simplex& s : triangulate(p, apex)) {
    std::vector<QVec> ys;
    for (const auto& v : s.verts) ys.push_back(ch.to_chart(v));
    Rat jac = simplex_jacobian(ys);
    if (jac == 0) continue;
    Poly g = compose(fc, simplex_subs(ys));
    Rat sum(0);
    for (const auto& [e, c] : g.terms) sum += c * dirichlet_moment(e);
    total += jac * sum;
  }
  return total;
}

Rat ambient_volume(const Polytope& p) {
  if (p.dim_affine < p.dim_ambient) return 0;
  return integrate_poly(p, Poly::constant(p.dim_ambient, Rat(1)));
}

ExpSum integrate_poly_exp_sym(const Polytope& p, const Poly& f, const QVec& xi, FanApex apex) {
  assert(f.nvars == p.dim_ambient && xi.size() == p.dim_ambient);
  AffineChart ch = lattice_chart(p);
  Poly fc = to_chart_poly(f, ch);
  // <xi, x> = <xi, origin> + <B^T xi, y>
  Rat e0 = dot(xi, ch.origin);
  QVec exy(ch.basis.size());
  for (size_t j = 0; j < ch.basis.size(); ++j) exy[j] = dot(xi, ch.basis[j]);

  ExpSum total;
  for (const Simplex& s : triangulate(p, apex)) {
    std::vector<QVec> ys;
    for (const auto& v : s.verts) ys.push_back(ch.to_chart(v));
    Rat jac = simplex_jacobian(ys);
    if (jac == 0) continue;
    size_t m = ys.size() - 1;
    auto subs = simplex_subs(ys);
    Poly g = compose(fc, subs);
    // exponent in z coords: e0 + <exy, y0> + Σ_j <exy, ys[j+1]-ys[0]> z_j
    Rat c0 = e0 + dot(exy, ys[0]);
    QVec lin(m);
    for (size_t j = 0; j < m; ++j) lin[j] = dot(exy, sub(ys[j + 1], ys[0]));
    ExpSum part = integrate_simplex(PolyExp::from_poly_exp(g, lin, c0));
    total = total + esc_scale(jac, part);
  }
  return total;
}

Enclosure integrate_poly_exp(const Polytope& p, const Poly& f, const QVec& xi,
                             const Rat& rel_tol) {
  ExpSum s = integrate_poly_exp_sym(p, f, xi);
  if (s.is_rational()) return Enclosure::exact(s.rational_value());
  // absolute floor scaled well below the relative request
  return enclose(s, rel_tol, rel_tol / 1000000);
}

Rat default_exp_tol() { return Rat(1) / Rat(mpz_class("100000000000000000000")); }

Enclosure weighted_mass(const Polytope& p, const Poly& dh, const WeightSpec& w,
                        const Rat& rel_tol) {
  check_affine_positive(p, w);
  Poly f = dh * w.poly_factor(p.dim_ambient);
  if (w.rational_kind()) {
    Rat mass = integrate_poly(p, f);
    if (mass == 0) throw DegenerateMass();
    return Enclosure::exact(mass);
  }
  ExpSum sym = integrate_poly_exp_sym(p, pscale(Rat(1), f), w.lin);
  ExpSum shifted;
  for (const auto& [e, c] : sym.terms) shifted.add(c, e + w.c0);
  Enclosure mass = enclose(shifted, rel_tol, rel_tol / 1000000);
  if (mass.lo <= 0 && 0 <= mass.hi) throw DegenerateMass();
  return mass;
}

std::vector<Enclosure> dh_barycenter(const Polytope& p, const Poly& dh, const WeightSpec& w,
                                     const Rat& rel_tol) {
  check_affine_positive(p, w);
  size_t d = p.dim_ambient;
  Poly f = dh * w.poly_factor(d);
  std::vector<Enclosure> bar(d);
  if (w.rational_kind()) {
    Rat den = integrate_poly(p, f);
    if (den == 0) throw DegenerateMass();
    for (size_t i = 0; i < d; ++i) {
      Rat num = integrate_poly(p, Poly::variable(d, i) * f);
      bar[i] = Enclosure::exact(num / den);
    }
    return bar;
  }
  ExpSum den_sym = integrate_poly_exp_sym(p, f, w.lin);
  Enclosure den = enclose(den_sym, rel_tol, rel_tol / 1000000);
  if (den.lo <= 0 && 0 <= den.hi) throw DegenerateMass();
  for (size_t i = 0; i < d; ++i) {
    ExpSum num_sym = integrate_poly_exp_sym(p, Poly::variable(d, i) * f, w.lin);
    Enclosure num = enclose(num_sym, rel_tol, rel_tol / 1000000);
    bar[i] = num / den;
  }
  return bar;
}

std::vector<Rat> affine_power_moments(const Polytope& p, const Poly& dh, const QVec& lin,
                                      const Rat& c0, const Poly& m, unsigned jmax) {
  size_t d = p.dim_ambient;
  Poly ell = Poly::linear(lin, c0);
  std::vector<Rat> out;
  Poly pw = Poly::constant(d, Rat(1));
  for (unsigned j = 0; j <= jmax; ++j) {
    out.push_back(integrate_poly(p, pw * m * dh));
    pw = pw * ell;
  }
  return out;
}

}  // namespace horoke
