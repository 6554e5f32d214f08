#include <doctest.h>

#include "horoke/rootdata.hpp"

#include <random>

using namespace horoke;

namespace {

// SL2: 1d ambient in units of a/2
HorosymmetricDatum sl2() {
  HorosymmetricDatum d;
  d.ambient_rank = 1;
  d.killing = QMat(1, 1);
  d.killing.at(0, 0) = Rat(1, 2);
  d.roots_Qu = {{Rat(2)}};
  d.spherical_basis = {{Rat(1)}};
  d.projection = QMat::identity(1);
  return build_datum(d);
}

// SL2 x C*: basis (f, a), kappa(a,a)=2, f orthogonal
HorosymmetricDatum sl2c() {
  HorosymmetricDatum d;
  d.ambient_rank = 2;
  d.killing = QMat(2, 2);
  d.killing.at(0, 0) = 1;
  d.killing.at(1, 1) = 2;
  d.roots_s_plus = {{Rat(0), Rat(1)}};
  d.restricted_roots = {{{Rat(0), Rat(2)}, 1}};
  d.spherical_basis = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
  d.projection = QMat::identity(2);
  return build_datum(d);
}

// SL2 x SL3 fourfold datum in the (w1, w2, w3) basis
HorosymmetricDatum fourfold() {
  HorosymmetricDatum d;
  d.ambient_rank = 3;
  d.killing = QMat(3, 3);
  d.killing.at(0, 0) = Rat(1, 2);
  d.killing.at(1, 1) = Rat(2, 3);
  d.killing.at(1, 2) = Rat(1, 3);
  d.killing.at(2, 1) = Rat(1, 3);
  d.killing.at(2, 2) = Rat(2, 3);
  d.roots_Qu = {{Rat(2), Rat(0), Rat(0)}, {Rat(0), Rat(2), Rat(-1)}, {Rat(0), Rat(1), Rat(1)}};
  d.spherical_basis = {{Rat(-1), Rat(1), Rat(0)}};
  QMat p(3, 3);
  p.rows = {{Rat(3, 7), Rat(-4, 7), Rat(-2, 7)},
            {Rat(-3, 7), Rat(4, 7), Rat(2, 7)},
            {Rat(0), Rat(0), Rat(0)}};
  d.projection = p;
  return build_datum(d);
}

}  // namespace

TEST_CASE("sl2 datum has degree-1 dh polynomial P(x a/2) = x") {
  auto d = sl2();
  DHPolynomial dh = dh_polynomial(d);
  CHECK(dh.degree() == 1);
  CHECK(dh.eval({Rat(5)}) == Rat(5));
}

TEST_CASE("sl2 x sl2 product: P(x a1/2 + y a2/2) = xy") {
  HorosymmetricDatum d;
  d.ambient_rank = 2;
  d.killing = QMat(2, 2);
  d.killing.at(0, 0) = Rat(1, 2);
  d.killing.at(1, 1) = Rat(1, 2);
  d.roots_Qu = {{Rat(2), Rat(0)}, {Rat(0), Rat(2)}};
  d.spherical_basis = {{Rat(1), Rat(1)}};
  QMat p(2, 2);
  p.rows = {{Rat(1, 2), Rat(1, 2)}, {Rat(1, 2), Rat(1, 2)}};
  d.projection = p;
  auto dd = build_datum(d);
  DHPolynomial dh = dh_polynomial(dd);
  CHECK(dh.degree() == 2);
  CHECK(dh.eval({Rat(3), Rat(5)}) == Rat(15));
  TwoRho r = two_rho_H(dd);
  CHECK(r.ambient == QVec{Rat(2), Rat(2)});
  CHECK(r.m_coords == QVec{Rat(2)});
}

TEST_CASE("symmetric datum: P(x f + y a) proportional to y, chamber is a half-plane") {
  auto d = sl2c();
  DHPolynomial dh = dh_polynomial(d);
  CHECK(dh.degree() == 1);
  CHECK(dh.eval({Rat(7), Rat(3)}) == Rat(6));  // kappa(a, q) = 2y
  ChamberPair cp = positive_chamber(d);
  // half-plane y >= 0: one facet, lineality along f
  CHECK(cp.chamber.lineality.size() == 1);
  CHECK(cp.chamber.facets.size() == 1);
  // dual cone is the ray R+ a
  CHECK(cp.dual.rays.size() == 1);
  CHECK(cp.dual.rays[0] == QVec{Rat(0), Rat(1)});
  CHECK(cp.dual.lineality.empty());
  // dual of dual returns the chamber
  PolyCone dd2 = dual_cone(cp.dual, cp.gram_m);
  CHECK(dd2.rays == cp.chamber.rays);
  CHECK(dd2.lineality == cp.chamber.lineality);
  TwoRho r = two_rho_H(d);
  CHECK(r.ambient == QVec{Rat(0), Rat(1)});
}

TEST_CASE("fourfold: P(x1 w1 + x2 w2) = x1 x2^2 and 2rho = 2w1 + 3w2") {
  auto d = fourfold();
  DHPolynomial dh = dh_polynomial(d);
  CHECK(dh.degree() == 3);
  CHECK(dh.eval({Rat(2), Rat(3), Rat(0)}) == Rat(18));
  CHECK(dh.eval({Rat(1), Rat(1), Rat(0)}) == Rat(1));
  TwoRho r = two_rho_H(d);
  CHECK(r.ambient == QVec{Rat(2), Rat(3), Rat(0)});
  // projection onto M: (2w1+3w2) has m-coordinate (kappa pairing) ... exact:
  // P(2,3,0) = c*e with c = kappa(v,e)/kappa(e,e)
  CHECK(r.projected == scale(r.m_coords[0], d.spherical_basis[0]));
}

TEST_CASE("horospherical chamber is the full space with zero dual") {
  auto d = sl2();
  ChamberPair cp = positive_chamber(d);
  CHECK(cp.chamber.lineality.size() == 1);
  CHECK(cp.dual.is_trivial());
}

TEST_CASE("dh polynomial is invariant under root permutations, byte-identical") {
  auto d = fourfold();
  DHPolynomial a = dh_polynomial(d);
  std::mt19937 rng(3);
  for (int i = 0; i < 5; ++i) {
    std::shuffle(d.roots_Qu.begin(), d.roots_Qu.end(), rng);
    DHPolynomial b = dh_polynomial(d);
    CHECK(a.expanded == b.expanded);
  }
}

TEST_CASE("dh evaluation matches the per-factor product on random points") {
  auto d = fourfold();
  DHPolynomial dh = dh_polynomial(d);
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> num(-9, 9);
  for (int i = 0; i < 100; ++i) {
    QVec q{rat(num(rng), 4), rat(num(rng), 4), rat(num(rng), 4)};
    Rat prod(1);
    for (const auto& f : dh.factors) prod *= dot(f, q);
    CHECK(dh.eval(q) == prod);
  }
}

TEST_CASE("empty root lists give the constant polynomial and zero 2rho") {
  HorosymmetricDatum d;
  d.ambient_rank = 1;
  d.killing = QMat::identity(1);
  d.spherical_basis = {{Rat(1)}};
  d.projection = QMat::identity(1);
  auto dd = build_datum(d);
  DHPolynomial dh = dh_polynomial(dd);
  CHECK(dh.degree() == 0);
  CHECK(dh.eval({Rat(9)}) == Rat(1));
  CHECK(two_rho_H(dd).ambient == QVec{Rat(0)});
}

TEST_CASE("two_rho lies in the cone spanned by the positive roots") {
  for (auto d : {sl2(), sl2c(), fourfold()}) {
    TwoRho r = two_rho_H(d);
    std::vector<QVec> roots = d.roots_Qu;
    roots.insert(roots.end(), d.roots_s_plus.begin(), d.roots_s_plus.end());
    if (roots.empty()) continue;
    PolyCone c = cone_from_generators(roots, d.ambient_rank);
    bool inside = true;
    for (const auto& f : c.facets) inside = inside && dot(f.normal, r.ambient) <= f.offset;
    for (const auto& e : c.equations) inside = inside && dot(e.normal, r.ambient) == e.offset;
    CHECK(inside);
  }
}

TEST_CASE("validation failures") {
  // indefinite killing form on the root span
  HorosymmetricDatum d;
  d.ambient_rank = 2;
  d.killing = QMat(2, 2);
  d.killing.at(0, 0) = 1;
  d.killing.at(1, 1) = Rat(-1);
  d.roots_Qu = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
  d.spherical_basis = {{Rat(1), Rat(0)}};
  d.projection = QMat(2, 2);
  d.projection.at(0, 0) = 1;
  CHECK_THROWS_AS(build_datum(d), InvalidKilling);
  // asymmetric killing
  d.killing.at(1, 1) = 1;
  d.killing.at(0, 1) = 1;
  CHECK_THROWS_AS(build_datum(d), InvalidKilling);
  d.killing.at(0, 1) = 0;
  // projection not the identity on the spherical basis
  d.projection.at(0, 0) = Rat(1, 2);
  CHECK_THROWS_AS(build_datum(d), ValidationError);
  // chamber degenerate: opposite s-roots squeeze the chamber to a line
  HorosymmetricDatum e;
  e.ambient_rank = 2;
  e.killing = QMat::identity(2);
  e.roots_s_plus = {{Rat(0), Rat(1)}, {Rat(0), Rat(-1)}};
  e.spherical_basis = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
  e.projection = QMat::identity(2);
  CHECK_THROWS_AS(build_datum(e), ChamberDegenerate);
}
