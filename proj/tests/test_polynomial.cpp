#include <doctest.h>

#include "horoke/polynomial.hpp"
#include "horoke/sturm.hpp"

using namespace horoke;

TEST_CASE("poly arithmetic and eval") {
  Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
  Poly p = x * x + pscale(Rat(3), y) + Poly::constant(2, Rat(1));
  CHECK(peval(p, {Rat(2), Rat(1)}) == Rat(8));
  CHECK(p.total_degree() == 2);
  Poly q = p - p;
  CHECK(q.is_zero());
}

TEST_CASE("compose with affine substitution") {
  // p(x) = x^2 composed with x = 2t+1 gives 4t^2+4t+1
  Poly p = Poly::variable(1, 0) * Poly::variable(1, 0);
  Poly sub = Poly::linear({Rat(2)}, Rat(1));
  Poly c = compose(p, {sub});
  CHECK(peval(c, {Rat(3)}) == Rat(49));
  UPoly u = to_univariate(c, 0);
  CHECK(u.c == std::vector<Rat>{Rat(1), Rat(4), Rat(4)});
}

TEST_CASE("derivative") {
  Poly x = Poly::variable(1, 0);
  Poly p = x * x * x;
  Poly d = derivative(p, 0);
  CHECK(peval(d, {Rat(2)}) == Rat(12));
}

TEST_CASE("univariate remainder and gcd") {
  // gcd(x^2-1, x^2-2x+1) = x-1
  UPoly a = u_from({Rat(-1), Rat(0), Rat(1)});
  UPoly b = u_from({Rat(1), Rat(-2), Rat(1)});
  UPoly g = ugcd(a, b);
  CHECK(g.c == std::vector<Rat>{Rat(-1), Rat(1)});
}

TEST_CASE("normalization to integer content") {
  UPoly p = u_from({Rat(1, 2), Rat(-3, 2)});
  UPoly n = u_normalize(p);
  CHECK(n.c == std::vector<Rat>{Rat(-1), Rat(3)});
}

TEST_CASE("sturm isolation on a quartic with known roots") {
  // (x-1)(x-2)(x^2+1): roots 1, 2
  UPoly p = u_from({Rat(2), Rat(-3), Rat(3), Rat(-3), Rat(1)});
  auto roots = isolate_real_roots(p, Rat(1, 1000000));
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].exact());
  CHECK(roots[0].lo == Rat(1));
  CHECK(roots[1].exact());
  CHECK(roots[1].lo == Rat(2));
}

TEST_CASE("sturm handles multiple roots and windows") {
  // (x-1)^2 (x+3)
  UPoly p = u_from({Rat(3), Rat(-5), Rat(1), Rat(1)});
  auto roots = isolate_real_roots(p, Rat(1, 1024));
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].lo == Rat(-3));
  CHECK(roots[1].lo == Rat(1));
  auto in_window = isolate_real_roots_in(p, Rat(0), Rat(5), Rat(1, 1024));
  REQUIRE(in_window.size() == 1);
  CHECK(in_window[0].lo == Rat(1));
  // window endpoint equal to a root is excluded
  auto excl = isolate_real_roots_in(p, Rat(1), Rat(5), Rat(1, 1024));
  CHECK(excl.empty());
}

TEST_CASE("sturm on an irrational quadratic") {
  // x^2 - 2
  UPoly p = u_from({Rat(-2), Rat(0), Rat(1)});
  auto roots = isolate_real_roots(p, Rat(1, mpz_class("10000000000000")));
  REQUIRE(roots.size() == 2);
  for (const auto& r : roots) {
    CHECK(!r.exact());
    CHECK(ueval(p, r.lo) * ueval(p, r.hi) < 0);
    CHECK(r.hi - r.lo <= Rat(1, mpz_class("10000000000000")));
  }
}
