#include "horoke/sturm.hpp"

#include <algorithm>
#include <cassert>

namespace horoke {

std::vector<UPoly> sturm_chain(const UPoly& p) {
  std::vector<UPoly> chain;
  UPoly sf = p;
  // square-free part keeps the chain well behaved at multiple roots
  UPoly g = ugcd(p, uderiv(p));
  if (g.degree() > 0) {
    UPoly q, r = p;
    q.c.assign(r.c.size(), Rat(0));
    while (!r.is_zero() && r.c.size() >= g.c.size()) {
      Rat f = r.c.back() / g.c.back();
      size_t shift = r.c.size() - g.c.size();
      q.c[shift] = f;
      for (size_t i = 0; i < g.c.size(); ++i) r.c[shift + i] -= f * g.c[i];
      r.trim();
    }
    q.trim();
    sf = q;
  }
  chain.push_back(sf);
  chain.push_back(uderiv(sf));
  while (!chain.back().is_zero() && chain.back().degree() > 0) {
    UPoly r = urem(chain[chain.size() - 2], chain.back());
    for (Rat& x : r.c) x = -x;
    r.trim();
    if (r.is_zero()) break;
    chain.push_back(std::move(r));
  }
  return chain;
}

static int sign_changes_at(const std::vector<UPoly>& chain, const Rat& x) {
  int changes = 0, last = 0;
  for (const UPoly& p : chain) {
    if (p.is_zero()) continue;
    int s = sgn(ueval(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int sturm_count(const std::vector<UPoly>& chain, const Rat& lo, const Rat& hi) {
  return sign_changes_at(chain, lo) - sign_changes_at(chain, hi);
}

// Simplest rational (smallest denominator, then numerator) in the closed
// interval [a, b]; used to recover exact rational roots from enclosures.
static Rat simplest_in(const Rat& a, const Rat& b) {
  assert(a <= b);
  if (a <= 0 && 0 <= b) return Rat(0);
  if (b < 0) return -simplest_in(-b, -a);
  // 0 < a <= b
  mpz_class fa;
  mpz_cdiv_q(fa.get_mpz_t(), a.get_num().get_mpz_t(), a.get_den().get_mpz_t());
  if (Rat(fa) <= b) return Rat(fa);
  mpz_class n;
  mpz_fdiv_q(n.get_mpz_t(), a.get_num().get_mpz_t(), a.get_den().get_mpz_t());
  Rat sub = simplest_in(1 / (b - Rat(n)), 1 / (a - Rat(n)));
  return Rat(n) + 1 / sub;
}

static RootInterval refine(const UPoly& sf, RootInterval iv, const Rat& width) {
  if (iv.exact()) return iv;
  int slo = sgn(ueval(sf, iv.lo));
  assert(slo != 0);
  while (iv.hi - iv.lo > width) {
    Rat m = iv.mid();
    Rat v = ueval(sf, m);
    if (v == 0) return {m, m};
    if (sgn(v) == slo)
      iv.lo = m;
    else
      iv.hi = m;
  }
  // try to snap to an exact rational root
  Rat cand = simplest_in(iv.lo, iv.hi);
  if (ueval(sf, cand) == 0) return {cand, cand};
  return iv;
}

static void isolate_rec(const std::vector<UPoly>& chain, const UPoly& sf, Rat lo, Rat hi,
                        std::vector<RootInterval>& out) {
  int n = sturm_count(chain, lo, hi);  // roots in (lo, hi]
  if (n == 0) return;
  if (n == 1) {
    if (ueval(sf, hi) == 0) {
      out.push_back({hi, hi});
      return;
    }
    // make the left endpoint sign-definite (lo itself may be another root)
    Rat step = (hi - lo) / 2;
    while (ueval(sf, lo) == 0 || sturm_count(chain, lo, hi) != 1) {
      Rat cand = lo + step;
      step /= 2;
      if (ueval(sf, cand) != 0 && sturm_count(chain, cand, hi) == 1) lo = cand;
    }
    out.push_back({lo, hi});
    return;
  }
  Rat m = (lo + hi) / 2, d = (hi - lo) / 4;
  while (ueval(sf, m) == 0) {
    m += d;
    d /= 2;
  }
  isolate_rec(chain, sf, lo, m, out);
  isolate_rec(chain, sf, m, hi, out);
}

std::vector<RootInterval> isolate_real_roots(const UPoly& p, const Rat& width) {
  if (p.is_zero() || p.degree() == 0) return {};
  auto chain = sturm_chain(p);
  const UPoly& sf = chain[0];
  Rat bound(1);  // Cauchy bound on root magnitude
  for (size_t i = 0; i + 1 < sf.c.size(); ++i) {
    Rat q = abs(sf.c[i] / sf.c.back());
    if (q + 1 > bound) bound = q + 1;
  }
  std::vector<RootInterval> out;
  if (ueval(sf, -bound) == 0) out.push_back({-bound, -bound});
  isolate_rec(chain, sf, -bound, bound, out);
  for (auto& iv : out) iv = refine(sf, iv, width);
  std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  return out;
}

std::vector<RootInterval> isolate_real_roots_in(const UPoly& p, const Rat& lo, const Rat& hi,
                                                const Rat& width) {
  if (p.is_zero() || p.degree() == 0) return {};
  auto chain = sturm_chain(p);
  const UPoly& sf = chain[0];
  auto all = isolate_real_roots(p, width);
  std::vector<RootInterval> out;
  for (auto r : all) {
    if (r.exact()) {
      if (lo < r.lo && r.lo < hi) out.push_back(r);
      continue;
    }
    // a straddling interval whose root is exactly the window endpoint
    if (r.lo < lo && lo < r.hi && ueval(sf, lo) == 0) continue;
    if (r.lo < hi && hi < r.hi && ueval(sf, hi) == 0) continue;
    while (!(r.hi <= lo || r.lo >= hi || (r.lo > lo && r.hi < hi))) {
      r = refine(sf, r, (r.hi - r.lo) / 4);
      if (r.exact()) break;
    }
    if (r.exact()) {
      if (lo < r.lo && r.lo < hi) out.push_back(r);
    } else if (r.lo > lo && r.hi < hi) {
      out.push_back(r);
    }
  }
  return out;
}

}  // namespace horoke
