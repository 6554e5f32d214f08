#include "horoke/polynomial.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace horoke {

Poly Poly::constant(size_t nv, const Rat& c) {
  Poly p(nv);
  if (c != 0) p.terms[Expo(nv, 0)] = c;
  return p;
}

Poly Poly::variable(size_t nv, size_t i) {
  Poly p(nv);
  Expo e(nv, 0);
  e[i] = 1;
  p.terms[e] = 1;
  return p;
}

Poly Poly::linear(const QVec& coeffs, const Rat& c0) {
  Poly p(coeffs.size());
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    Expo e(coeffs.size(), 0);
    e[i] = 1;
    p.terms[e] = coeffs[i];
  }
  if (c0 != 0) p.terms[Expo(coeffs.size(), 0)] = c0;
  return p;
}

unsigned Poly::total_degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms) {
    unsigned s = 0;
    for (unsigned x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

void Poly::add_term(const Expo& e, const Rat& c) {
  if (c == 0) return;
  auto it = terms.find(e);
  if (it == terms.end()) {
    terms[e] = c;
  } else {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

Poly operator+(const Poly& a, const Poly& b) {
  assert(a.nvars == b.nvars);
  Poly r = a;
  for (const auto& [e, c] : b.terms) r.add_term(e, c);
  return r;
}

Poly operator-(const Poly& a, const Poly& b) {
  assert(a.nvars == b.nvars);
  Poly r = a;
  for (const auto& [e, c] : b.terms) r.add_term(e, -c);
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  assert(a.nvars == b.nvars);
  Poly r(a.nvars);
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) {
      Expo e(a.nvars);
      for (size_t i = 0; i < a.nvars; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

Poly pscale(const Rat& c, const Poly& p) {
  Poly r(p.nvars);
  if (c == 0) return r;
  for (const auto& [e, x] : p.terms) r.terms[e] = c * x;
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  return a.nvars == b.nvars && a.terms == b.terms;
}

Rat peval(const Poly& p, const QVec& x) {
  assert(x.size() == p.nvars);
  Rat s(0);
  for (const auto& [e, c] : p.terms) {
    Rat t = c;
    for (size_t i = 0; i < p.nvars; ++i)
      for (unsigned k = 0; k < e[i]; ++k) t *= x[i];
    s += t;
  }
  return s;
}

double peval_d(const Poly& p, const std::vector<double>& x) {
  double s = 0;
  for (const auto& [e, c] : p.terms) {
    double t = to_double(c);
    for (size_t i = 0; i < p.nvars; ++i)
      if (e[i]) t *= std::pow(x[i], e[i]);
    s += t;
  }
  return s;
}

Poly compose(const Poly& p, const std::vector<Poly>& subs) {
  assert(subs.size() == p.nvars);
  size_t nv = subs.empty() ? 0 : subs[0].nvars;
  // cache powers of the substituted variables
  std::vector<std::vector<Poly>> pows(p.nvars);
  for (size_t i = 0; i < p.nvars; ++i) pows[i].push_back(Poly::constant(nv, Rat(1)));
  auto power = [&](size_t i, unsigned k) -> const Poly& {
    while (pows[i].size() <= k) pows[i].push_back(pows[i].back() * subs[i]);
    return pows[i][k];
  };
  Poly r(nv);
  for (const auto& [e, c] : p.terms) {
    Poly t = Poly::constant(nv, c);
    for (size_t i = 0; i < p.nvars; ++i)
      if (e[i]) t = t * power(i, e[i]);
    r = r + t;
  }
  return r;
}

Poly derivative(const Poly& p, size_t var) {
  Poly r(p.nvars);
  for (const auto& [e, c] : p.terms) {
    if (e[var] == 0) continue;
    Expo d = e;
    d[var] -= 1;
    r.add_term(d, c * Rat(e[var]));
  }
  return r;
}

void UPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

UPoly u_from(const std::vector<Rat>& ascending) {
  UPoly p{ascending};
  p.trim();
  return p;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  UPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
  r.trim();
  return r;
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  UPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
  r.trim();
  return r;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  UPoly r;
  r.c.assign(a.c.size() + b.c.size() - 1, Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  r.trim();
  return r;
}

Rat ueval(const UPoly& p, const Rat& x) {
  Rat s(0);
  for (size_t i = p.c.size(); i-- > 0;) s = s * x + p.c[i];
  return s;
}

UPoly uderiv(const UPoly& p) {
  UPoly r;
  if (p.c.size() <= 1) return r;
  r.c.resize(p.c.size() - 1);
  for (size_t i = 1; i < p.c.size(); ++i) r.c[i - 1] = p.c[i] * Rat((long)i);
  r.trim();
  return r;
}

UPoly urem(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::invalid_argument("urem by zero");
  UPoly r = a;
  while (!r.is_zero() && r.c.size() >= b.c.size()) {
    Rat f = r.c.back() / b.c.back();
    size_t shift = r.c.size() - b.c.size();
    for (size_t i = 0; i < b.c.size(); ++i) r.c[shift + i] -= f * b.c[i];
    r.c.pop_back();
    r.trim();
  }
  return r;
}

UPoly ugcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = urem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return u_normalize(a);
}

UPoly u_normalize(const UPoly& p) {
  if (p.is_zero()) return p;
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const Rat& x : p.c) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), x.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den().get_mpz_t());
  }
  Rat f(den_lcm, num_gcd);
  f.canonicalize();
  if (p.c.back() < 0) f = -f;
  UPoly r = p;
  for (Rat& x : r.c) x *= f;
  return r;
}

UPoly to_univariate(const Poly& p, size_t var) {
  UPoly r;
  for (const auto& [e, c] : p.terms) {
    for (size_t i = 0; i < p.nvars; ++i)
      if (i != var && e[i] != 0) throw std::invalid_argument("polynomial is not univariate");
    if (r.c.size() <= e[var]) r.c.resize(e[var] + 1, Rat(0));
    r.c[e[var]] += c;
  }
  r.trim();
  return r;
}

}  // namespace horoke
