#include "horoke/rootdata.hpp"

#include <algorithm>

namespace horoke {

HorosymmetricDatum build_datum(HorosymmetricDatum d) {
  size_t n = d.ambient_rank;
  if (n == 0 || n > kMaxAmbientDim) throw ValidationError("ambient_rank out of range");
  auto check_vec = [&](const QVec& v, const char* what) {
    if (v.size() != n) throw ValidationError(std::string(what) + ": wrong dimension");
  };
  if (d.killing.nrows() != n || d.killing.ncols() != n)
    throw InvalidKilling("killing matrix has wrong shape");
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < i; ++j)
      if (d.killing.at(i, j) != d.killing.at(j, i)) throw InvalidKilling("killing not symmetric");

  std::vector<QVec> all_roots;
  for (const auto& r : d.roots_Qu) {
    check_vec(r, "roots_Qu");
    all_roots.push_back(r);
  }
  for (const auto& r : d.roots_s_plus) {
    check_vec(r, "roots_s_plus");
    all_roots.push_back(r);
  }
  for (const auto& r : d.restricted_roots) {
    check_vec(r.root, "restricted_roots");
    all_roots.push_back(r.root);
  }
  if (!all_roots.empty() && !is_positive_definite_on_span(d.killing, all_roots))
    throw InvalidKilling("killing not positive definite on the root span");

  for (const auto& b : d.spherical_basis) check_vec(b, "spherical_basis");
  {
    QMat m;
    for (const auto& b : d.spherical_basis) m.rows.push_back(b);
    if (rank(m) != d.spherical_basis.size())
      throw ValidationError("spherical_basis is linearly dependent");
  }
  for (const auto& b : d.lattice) check_vec(b, "lattice");

  if (d.projection.nrows() != n || d.projection.ncols() != n)
    throw ValidationError("projection has wrong shape");
  // idempotent, identity on M⊗R, image inside span(spherical_basis)
  QMat p2 = mat_mul(d.projection, d.projection);
  if (!(p2.rows == d.projection.rows)) throw ValidationError("projection not idempotent");
  for (const auto& b : d.spherical_basis)
    if (mat_vec(d.projection, b) != b)
      throw ValidationError("projection is not the identity on the spherical basis");
  {
    QMat span;
    for (const auto& b : d.spherical_basis) span.rows.push_back(b);
    size_t base_rank = rank(span);
    for (size_t j = 0; j < n; ++j) {
      QVec e(n, Rat(0));
      e[j] = 1;
      QMat test = span;
      test.rows.push_back(mat_vec(d.projection, e));
      if (rank(test) != base_rank) throw ValidationError("projection image leaves M⊗R");
    }
  }
  for (const auto& f : d.soliton_directions) check_vec(f, "soliton_directions");
  for (const auto& f : d.central_directions) check_vec(f, "central_directions");

  // chamber self-consistency: C̄⁺ must be full-dimensional in M⊗R
  if (!d.roots_s_plus.empty()) {
    ChamberPair cp = positive_chamber(d);
    if (cp.chamber.rays.size() + cp.chamber.lineality.size() == 0 ||
        (size_t)(cp.chamber.lineality.size()) + cp.chamber.rays.size() < 1)
      throw ChamberDegenerate("restricted chamber is degenerate");
    // full-dimensional check: chamber span = M⊗R
    QMat span;
    for (const auto& r : cp.chamber.rays) span.rows.push_back(r);
    for (const auto& l : cp.chamber.lineality) span.rows.push_back(l);
    if (rank(span) != d.rank_m()) throw ChamberDegenerate("restricted chamber is degenerate");
  }
  return d;
}

DHPolynomial dh_polynomial(const HorosymmetricDatum& d) {
  size_t n = d.ambient_rank;
  DHPolynomial dh;
  std::vector<QVec> roots = d.roots_Qu;
  roots.insert(roots.end(), d.roots_s_plus.begin(), d.roots_s_plus.end());
  // canonical factor order, so the expanded form is byte-stable under
  // permutations of the input root lists
  std::sort(roots.begin(), roots.end(), lex_less);
  Poly prod = Poly::constant(n, Rat(1));
  for (const auto& alpha : roots) {
    QVec form = mat_vec(d.killing, alpha);  // q ↦ κ(α, q)
    dh.factors.push_back(form);
    prod = prod * Poly::linear(form, Rat(0));
  }
  dh.expanded = prod;
  return dh;
}

TwoRho two_rho_H(const HorosymmetricDatum& d) {
  TwoRho t;
  t.ambient = QVec(d.ambient_rank, Rat(0));
  for (const auto& r : d.roots_Qu) t.ambient = add(t.ambient, r);
  for (const auto& r : d.roots_s_plus) t.ambient = add(t.ambient, r);
  t.projected = mat_vec(d.projection, t.ambient);
  t.m_coords = to_m_coords(d, t.ambient);
  return t;
}

ChamberPair positive_chamber(const HorosymmetricDatum& d) {
  size_t r = d.rank_m();
  ChamberPair cp;
  cp.gram_m = QMat(r, r);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j)
      cp.gram_m.at(i, j) = d.kappa(d.spherical_basis[i], d.spherical_basis[j]);
  if (d.roots_s_plus.empty()) {
    cp.chamber = full_space_cone(r);
    cp.dual = trivial_cone(r);
    return cp;
  }
  std::vector<Halfspace> hrep;
  for (const auto& beta : d.roots_s_plus) {
    // κ(Σ x_i b_i, β) >= 0, i.e. <-(κ(b_i, β))_i, x> <= 0
    QVec row(r);
    for (size_t i = 0; i < r; ++i) row[i] = -d.kappa(d.spherical_basis[i], beta);
    hrep.push_back({row, Rat(0)});
  }
  cp.chamber = cone_from_hrep(hrep, r);
  cp.dual = dual_cone(cp.chamber, cp.gram_m);
  return cp;
}

QVec to_m_coords(const HorosymmetricDatum& d, const QVec& ambient) {
  QVec proj = mat_vec(d.projection, ambient);
  QMat basis_cols(d.ambient_rank, d.rank_m());
  for (size_t j = 0; j < d.rank_m(); ++j)
    for (size_t i = 0; i < d.ambient_rank; ++i) basis_cols.at(i, j) = d.spherical_basis[j][i];
  auto x = solve(basis_cols, proj);
  if (!x) throw ValidationError("projected point leaves the spherical span");
  return *x;
}

QVec functional_to_m(const HorosymmetricDatum& d, const QVec& f) {
  QVec out(d.rank_m());
  for (size_t j = 0; j < d.rank_m(); ++j) out[j] = dot(f, d.spherical_basis[j]);
  return out;
}

}  // namespace horoke
