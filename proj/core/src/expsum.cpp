#include "horoke/expsum.hpp"

#include <mpfr.h>

#include <cassert>

namespace horoke {

static Rat rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }
static Rat rat_max(const Rat& a, const Rat& b) { return a > b ? a : b; }

Enclosure operator+(const Enclosure& a, const Enclosure& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Enclosure operator-(const Enclosure& a, const Enclosure& b) { return {a.lo - b.hi, a.hi - b.lo}; }

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
  Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return {rat_min(rat_min(p1, p2), rat_min(p3, p4)), rat_max(rat_max(p1, p2), rat_max(p3, p4))};
}

Enclosure operator/(const Enclosure& a, const Enclosure& b) {
  assert(!(b.lo <= 0 && 0 <= b.hi));
  Enclosure binv{1 / b.hi, 1 / b.lo};
  return a * binv;
}

void ExpSum::add(const Rat& coeff, const Rat& expo) {
  if (coeff == 0) return;
  auto it = terms.find(expo);
  if (it == terms.end()) {
    terms[expo] = coeff;
  } else {
    it->second += coeff;
    if (it->second == 0) terms.erase(it);
  }
}

bool ExpSum::is_rational() const {
  return terms.empty() || (terms.size() == 1 && terms.begin()->first == 0);
}

Rat ExpSum::rational_value() const {
  assert(is_rational());
  return terms.empty() ? Rat(0) : terms.begin()->second;
}

ExpSum operator+(const ExpSum& a, const ExpSum& b) {
  ExpSum r = a;
  for (const auto& [e, c] : b.terms) r.add(c, e);
  return r;
}

ExpSum esc_scale(const Rat& c, const ExpSum& a) {
  ExpSum r;
  for (const auto& [e, x] : a.terms) r.add(c * x, e);
  return r;
}

namespace {

// one term c * e^x, outward rounded at precision prec
void term_bounds(const Rat& c, const Rat& x, mpfr_prec_t prec, mpq_t lo_out, mpq_t hi_out) {
  mpfr_t xf, ef_lo, ef_hi, t_lo, t_hi;
  mpfr_inits2(prec, xf, ef_lo, ef_hi, t_lo, t_hi, (mpfr_ptr) nullptr);
  // e^x lower bound: round x down, exp down; upper: x up, exp up
  mpfr_set_q(xf, x.get_mpq_t(), MPFR_RNDD);
  mpfr_exp(ef_lo, xf, MPFR_RNDD);
  mpfr_set_q(xf, x.get_mpq_t(), MPFR_RNDU);
  mpfr_exp(ef_hi, xf, MPFR_RNDU);
  if (sgn(c) >= 0) {
    mpfr_mul_q(t_lo, ef_lo, c.get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(t_hi, ef_hi, c.get_mpq_t(), MPFR_RNDU);
  } else {
    mpfr_mul_q(t_lo, ef_hi, c.get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(t_hi, ef_lo, c.get_mpq_t(), MPFR_RNDU);
  }
  mpfr_get_q(lo_out, t_lo);
  mpfr_get_q(hi_out, t_hi);
  mpfr_clears(xf, ef_lo, ef_hi, t_lo, t_hi, (mpfr_ptr) nullptr);
}

}  // namespace

Enclosure enclose(const ExpSum& s, const Rat& rel_tol, const Rat& abs_tol) {
  if (s.is_rational()) return Enclosure::exact(s.rational_value());
  mpq_t tlo, thi;
  mpq_inits(tlo, thi, nullptr);
  for (mpfr_prec_t prec = 128; prec <= 1 << 16; prec *= 2) {
    Rat lo(0), hi(0);
    for (const auto& [e, c] : s.terms) {
      term_bounds(c, e, prec, tlo, thi);
      lo += Rat(mpq_class(tlo));
      hi += Rat(mpq_class(thi));
    }
    Rat width = hi - lo;
    Rat scale = rat_max(abs(lo), abs(hi));
    if (width <= abs_tol || width <= rel_tol * scale) {
      mpq_clears(tlo, thi, nullptr);
      return {lo, hi};
    }
  }
  mpq_clears(tlo, thi, nullptr);
  throw ToleranceUnreachable("enclose: tolerance unreachable at max precision");
}

PolyExp PolyExp::from_poly_exp(const Poly& p, const QVec& lin, const Rat& c0) {
  PolyExp f(p.nvars);
  assert(lin.size() == p.nvars);
  QVec key(p.nvars + 1);
  key[0] = c0;
  for (size_t i = 0; i < p.nvars; ++i) key[i + 1] = lin[i];
  f.add_term(key, p);
  return f;
}

void PolyExp::add_term(const QVec& key, const Poly& p) {
  if (p.is_zero()) return;
  auto it = terms.find(key);
  if (it == terms.end()) {
    terms.emplace(key, p);
  } else {
    it->second = it->second + p;
    if (it->second.is_zero()) terms.erase(it);
  }
}

PolyExp integrate_last(const PolyExp& f) {
  assert(f.nvars >= 1);
  size_t m = f.nvars, mm = m - 1;
  PolyExp out(mm);

  // u = 1 - y_1 - ... - y_{m-1} as a polynomial in the remaining variables
  Poly u = Poly::constant(mm, Rat(1));
  for (size_t i = 0; i < mm; ++i) u = u - Poly::variable(mm, i);

  for (const auto& [key, p] : f.terms) {
    const Rat& mu = key[m];  // exponent coefficient of the last variable
    QVec base_key(key.begin(), key.end() - 1);  // [c0, λ_1..λ_{m-1}]

    // split p by powers of the last variable: p = Σ_j q_j(y') * y_m^j
    std::map<unsigned, Poly> slices;
    for (const auto& [e, c] : p.terms) {
      unsigned j = e[m - 1];
      Expo re(e.begin(), e.end() - 1);
      auto it = slices.find(j);
      if (it == slices.end()) slices.emplace(j, Poly(mm)).first->second.add_term(re, c);
      else it->second.add_term(re, c);
    }

    for (const auto& [j, qj] : slices) {
      if (mu == 0) {
        // ∫_0^u y^j dy = u^{j+1} / (j+1)
        Poly upow = Poly::constant(mm, Rat(1));
        for (unsigned k = 0; k <= j; ++k) upow = upow * u;
        out.add_term(base_key, pscale(Rat(1, (long)j + 1), qj * upow));
      } else {
        // ∫_0^u y^j e^{mu y} dy = e^{mu u} B(u) - B(0),
        // B(y) = Σ_{i=0..j} (-1)^i * j!/(j-i)! * y^{j-i} / mu^{i+1}
        std::vector<Rat> bcoef(j + 1, Rat(0));  // B as univariate coeffs
        Rat fact(1), mupow = mu;
        for (unsigned i = 0; i <= j; ++i) {
          Rat coef = fact / mupow;
          if (i % 2 == 1) coef = -coef;
          bcoef[j - i] = coef;
          fact *= Rat((long)(j - i));
          mupow *= mu;
        }
        // B(u) as polynomial in remaining vars
        Poly Bu = Poly::constant(mm, Rat(0));
        Poly upow = Poly::constant(mm, Rat(1));
        for (unsigned d = 0; d <= j; ++d) {
          if (bcoef[d] != 0) Bu = Bu + pscale(bcoef[d], upow);
          upow = upow * u;
        }
        Rat B0 = bcoef[0];
        // e^{mu u} = e^{mu} * e^{-mu (y_1+..+y_{m-1})}
        QVec shifted = base_key;
        shifted[0] += mu;
        for (size_t i = 1; i <= mm; ++i) shifted[i] -= mu;
        out.add_term(shifted, qj * Bu);
        if (B0 != 0) out.add_term(base_key, pscale(-B0, qj));
      }
    }
  }
  return out;
}

ExpSum integrate_simplex(const PolyExp& f) {
  PolyExp cur = f;
  while (cur.nvars > 0) cur = integrate_last(cur);
  ExpSum s;
  for (const auto& [key, p] : cur.terms) {
    Rat c = p.terms.empty() ? Rat(0) : p.terms.begin()->second;
    s.add(c, key[0]);
  }
  return s;
}

}  // namespace horoke
