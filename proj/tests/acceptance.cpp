// Acceptance suite: one test case per criterion, each printing PASS/FAIL
// lines. Exact claims run in rational arithmetic with zero tolerance; numeric
// claims carry their stated tolerances pinned in code.
//
// Known red: line 1d asserts the stated coefficient triple (912, 398, 40)
// for the F3_2.36 squared-weight equation. That triple contradicts the
// printed barycenter fraction it is derived from; exact arithmetic from the
// same moments forces (912, 392, 40) (line 1d', green, together with the
// fraction reproduction and the existence verdict). 1d is kept as stated and
// fails honestly rather than being loosened to match.

#include <doctest.h>

#include "horoke/catalog.hpp"
#include "horoke/masolver.hpp"
#include "horoke/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>

using namespace horoke;

namespace {

struct Line {
  const char* name;
  bool ok = true;
  double seconds = 0;
};

template <typename F>
bool run_line(const char* name, F&& body) {
  auto start = std::chrono::steady_clock::now();
  bool ok = body();
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("[acceptance] %-62s %s (%.2fs)\n", name, ok ? "PASS" : "FAIL", secs);
  std::fflush(stdout);
  return ok;
}

CriteriaContext ctx_of(const std::string& id) {
  return CriteriaContext::make(catalog::get(id).datum);
}

const Polytope& ac_of(const std::string& id) { return catalog::get(id).anticanonical; }

// the Mabuchi condition row as a primitive pair (coef_a, coef_b)
std::pair<Rat, Rat> mabuchi_condition(const std::string& id) {
  auto rep = solve_mabuchi(ctx_of(id), ac_of(id));
  const auto& sys = rep.numerics.at("system");
  QVec row = primitive({sys[1].lo, sys[0].lo});  // (T_a, T_b)
  return {row[0], row[1]};
}

bool same_condition(std::pair<Rat, Rat> got, long ca, long cb) {
  QVec want = primitive({Rat(ca), Rat(cb)});
  return (got.first == want[0] && got.second == want[1]) ||
         (got.first == -want[0] && got.second == -want[1]);
}

std::vector<QVec> brute_force_vertices(const std::vector<Halfspace>& hrep, size_t dim) {
  std::vector<QVec> out;
  size_t m = hrep.size();
  std::vector<size_t> idx(dim);
  std::function<void(size_t, size_t)> rec = [&](size_t start, size_t k) {
    if (k == dim) {
      QMat a(dim, dim);
      QVec b(dim);
      for (size_t i = 0; i < dim; ++i) {
        a.rows[i] = hrep[idx[i]].normal;
        b[i] = hrep[idx[i]].offset;
      }
      if (rank(a) != dim) return;
      auto x = solve(a, b);
      if (!x) return;
      for (const auto& h : hrep)
        if (dot(h.normal, *x) > h.offset) return;
      out.push_back(*x);
      return;
    }
    for (size_t i = start; i < m; ++i) {
      idx[k] = i;
      rec(i + 1, k + 1);
    }
  };
  rec(0, 0);
  std::sort(out.begin(), out.end(), lex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

TEST_CASE("criterion 1: exact section-5 constants, rational arithmetic") {
  bool rest = true;

  rest &= run_line("1a F3_3.31 symbolic barycenter fraction; 63a+20b=0 exists", [] {
    bool ok = true;
    // moments of the weight (a t + b) against density t^2 on [1,3]:
    // 15*(∫t^4, ∫t^3) = (726, 300) and 15*(∫t^3, ∫t^2) = (300, 130); the
    // barycenter is (726a+300b)/(300a+130b) = 2(363a+150b)/(300a+130b)
    Polytope seg = polytope_from_vertices({{Rat(1)}, {Rat(3)}});
    Poly t = Poly::variable(1, 0);
    Poly dh = t * t;
    auto m = affine_power_moments(seg, dh, {Rat(1)}, Rat(0), Poly::constant(1, Rat(1)), 1);
    auto mt = affine_power_moments(seg, dh, {Rat(1)}, Rat(0), t, 1);
    ok &= Rat(15) * mt[1] == Rat(726) && Rat(15) * mt[0] == Rat(300);
    ok &= Rat(15) * m[1] == Rat(300) && Rat(15) * m[0] == Rat(130);
    // the fraction as a symbolic identity of linear forms in (a, b)
    for (auto [a, b] : {std::pair<long, long>{1, 0}, {0, 1}, {3, 7}, {13, -2}}) {
      Rat num = Rat(a) * mt[1] + Rat(b) * mt[0];
      Rat den = Rat(a) * m[1] + Rat(b) * m[0];
      if (den == 0) continue;
      ok &= num * (Rat(300) * a + Rat(130) * b) ==
            den * Rat(2) * (Rat(363) * a + Rat(150) * b);
    }
    ok &= same_condition(mabuchi_condition("F3_3.31"), 63, 20);
    ok &= solve_mabuchi(ctx_of("F3_3.31"), ac_of("F3_3.31")).verdict == Verdict::Exists;
    CHECK(ok);
    return ok;
  });

  rest &= run_line("1b F3_2.33: 2a-5b=0, exists", [] {
    bool ok = same_condition(mabuchi_condition("F3_2.33"), 2, -5);
    ok &= solve_mabuchi(ctx_of("F3_2.33"), ac_of("F3_2.33")).verdict == Verdict::Exists;
    CHECK(ok);
    return ok;
  });

  rest &= run_line("1c F3_2.36: 196a+40b=0, positivity fails on [1,5]", [] {
    bool ok = same_condition(mabuchi_condition("F3_2.36"), 196, 40);
    ok &= solve_mabuchi(ctx_of("F3_2.36"), ac_of("F3_2.36")).verdict == Verdict::NotExists;
    // the solved line has its zero at 4.9, strictly inside [1, 5]
    Rat zero = Rat(49, 10);
    ok &= zero > Rat(1) && zero < Rat(5);
    CHECK(ok);
    return ok;
  });

  bool stated_1d = run_line("1d F3_2.36 k=2 stated coefficients (912,398,40)", [] {
    auto rep = solve_power_mabuchi(ctx_of("F3_2.36"), ac_of("F3_2.36"), 2);
    REQUIRE(rep.defining_poly.has_value());
    UPoly stated = u_normalize(u_from({Rat(40), Rat(398), Rat(912)}));
    bool ok = u_normalize(*rep.defining_poly).c == stated.c;
    CHECK_MESSAGE(ok, "computed ", upoly_string(u_normalize(*rep.defining_poly), "a"),
                  " (content-normalized), not proportional to 912a^2+398ab+40b^2");
    return ok;
  });

  rest &= run_line("1d' F3_2.36 k=2 equation from its own fraction; a+ exists", [] {
    auto rep = solve_power_mabuchi(ctx_of("F3_2.36"), ac_of("F3_2.36"), 2);
    REQUIRE(rep.defining_poly.has_value());
    // reproduce the printed squared-weight fraction verbatim from moments,
    // then the defining equation is its numerator-minus-denominator
    Polytope seg = polytope_from_vertices({{Rat(1)}, {Rat(5)}});
    Poly t = Poly::variable(1, 0);
    Poly dh = t * t;
    auto m0 = affine_power_moments(seg, dh, {Rat(1)}, Rat(0), Poly::constant(1, Rat(1)), 2);
    auto m1 = affine_power_moments(seg, dh, {Rat(1)}, Rat(0), t, 2);
    bool ok = m1[2] * Rat(5, 4) == Rat(3255) && Rat(2) * m1[1] * Rat(5, 4) == Rat(1562) &&
              m1[0] * Rat(5, 4) == Rat(195);
    ok &= m0[2] * Rat(15, 4) == Rat(2343) && Rat(2) * m0[1] * Rat(15, 4) == Rat(1170) &&
          m0[0] * Rat(15, 4) == Rat(155);
    UPoly expect = u_normalize(u_from({Rat(40), Rat(392), Rat(912)}));
    ok &= u_normalize(*rep.defining_poly).c == expect.c;
    ok &= rep.verdict == Verdict::Exists;
    REQUIRE(rep.roots.size() == 2);
    ok &= rep.roots[1].exact() && rep.roots[1].lo == Rat(-1, 6) && rep.admissible[1];
    ok &= rep.roots[0].exact() && rep.roots[0].lo == Rat(-5, 19) && !rep.admissible[0];
    CHECK(ok);
    return ok;
  });

  rest &= run_line("1e RC5: 49a-20b=0 with zero at -49/20, no Mabuchi", [] {
    bool ok = same_condition(mabuchi_condition("RC5"), 49, -20);
    ok &= solve_mabuchi(ctx_of("RC5"), ac_of("RC5")).verdict == Verdict::NotExists;
    Rat zero = Rat(-49, 20);
    ok &= zero > Rat(-3) && zero < Rat(1);
    CHECK(ok);
    return ok;
  });

  rest &= run_line("1f RA3: 112a-65b=0 exists; RB3 exists", [] {
    bool ok = same_condition(mabuchi_condition("RA3"), 112, -65);
    ok &= solve_mabuchi(ctx_of("RA3"), ac_of("RA3")).verdict == Verdict::Exists;
    ok &= solve_mabuchi(ctx_of("RB3"), ac_of("RB3")).verdict == Verdict::Exists;
    CHECK(ok);
    return ok;
  });

  rest &= run_line("1g P(1,1,k) necessary-condition coefficients", [] {
    bool ok = true;
    for (long k = 1; k <= 6; ++k) {
      DatumFile f = catalog::get("P2");
      Rat M = 1 + rat(k, 2);
      f.anticanonical = polytope_from_vertices({{Rat(0)}, {Rat(2) * M}});
      auto ctx = CriteriaContext::make(f.datum);
      auto rep = solve_mabuchi(ctx, f.anticanonical);
      REQUIRE(rep.solved_lin.has_value());
      // (a, b) in the t-parametrization of [0, M]
      Rat a = (*rep.solved_lin)[0] * 2, b = *rep.solved_c0;
      Rat ea = Rat(6) * (3 - 2 * M) / (M * M), eb = Rat(3) * (3 * M - 4) / M;
      // normalize by the stated mass convention V(a,b) = V(0,1)
      Rat vab = a * M * M * M / 3 + b * M * M / 2;
      REQUIRE(vab != 0);
      Rat s = (M * M / 2) / vab;
      ok &= s * a == ea && s * b == eb;
      if (k == 1) {
        ok &= ea == 0 && eb == 1;
        ok &= rep.verdict == Verdict::Exists;
      } else {
        Rat zero = -eb / ea;
        // strict interior zero for k >= 3; the k = 2 zero sits exactly at M
        ok &= zero > 0 && zero <= M && ((zero == M) == (k == 2));
        ok &= rep.verdict != Verdict::Exists;
      }
    }
    CHECK(ok);
    return ok;
  });

  rest &= run_line("1h fourfold bar(1,3,5) and the general rational function", [] {
    bool ok = true;
    auto ctx = ctx_of("P4_O(1,-1)");
    auto bar = dh_barycenter(ac_of("P4_O(1,-1)"), ctx.dh.expanded, WeightSpec::constant(),
                             default_exp_tol());
    ok &= bar[0].lo == Rat(244, 125) && bar[1].lo == Rat(5) - Rat(244, 125) && bar[2].lo == 0;
    auto closed = [](const Rat& s1, const Rat& s2, const Rat& s3) -> Rat {
      auto p = [](const Rat& x, int k) -> Rat {
        Rat r(1);
        for (int i = 0; i < k; ++i) r *= x;
        return r;
      };
      Rat num = Rat(6) * (p(s2, 5) - p(s1, 5)) - Rat(15) * s3 * (p(s2, 4) - p(s1, 4)) +
                Rat(10) * s3 * s3 * (p(s2, 3) - p(s1, 3));
      Rat den = Rat(3) * (p(s2, 4) - p(s1, 4)) - Rat(8) * s3 * (p(s2, 3) - p(s1, 3)) +
                Rat(6) * s3 * s3 * (s2 * s2 - s1 * s1);
      return Rat(2, 5) * num / den;
    };
    std::mt19937 rng(2026);
    std::uniform_int_distribution<int> num(1, 24);
    for (int done = 0; done < 24; ++done) {
      Rat s1 = rat(num(rng), 8), s2 = s1 + rat(num(rng), 8), s3 = s2 + rat(num(rng), 8);
      Polytope seg =
          polytope_from_vertices({{s1, s3 - s1, Rat(0)}, {s2, s3 - s2, Rat(0)}});
      auto b = dh_barycenter(seg, ctx.dh.expanded, WeightSpec::constant(), default_exp_tol());
      ok &= b[0].lo == closed(s1, s2, s3);
      ok &= b[1].lo == s3 - closed(s1, s2, s3);
    }
    CHECK(ok);
    return ok;
  });

  std::printf("[acceptance] criterion 1 overall: %s%s\n", (rest && stated_1d) ? "PASS" : "FAIL",
              (rest && !stated_1d) ? " (only the stated-coefficient line 1d)" : "");
}

TEST_CASE("criterion 2: root enclosures at 1e-9") {
  bool all = true;
  all &= run_line("2a stated quartic: admissible root inside [2.6825, 2.6836]", [] {
    UPoly q = u_from({Rat(115587), Rat(-348246), Rat(386272), Rat(-184000), Rat(30720)});
    Rat width = Rat(1, mpz_class("1000000000"));
    auto roots = isolate_real_roots_in(q, Rat(3, 2), Rat(7, 2), width);
    bool ok = roots.size() == 1;
    if (ok) {
      ok &= roots[0].hi - roots[0].lo <= width;
      ok &= roots[0].lo >= rat(26825, 10000) && roots[0].hi <= rat(26836, 10000);
    }
    CHECK(ok);
    return ok;
  });

  all &= run_line("2b (-1,2) fourfold: two z-roots in (3/2,11/2); 7/2 no root", [] {
    const auto& f = catalog::get("P4_O(-1,2)");
    auto ctx = CriteriaContext::make(f.datum);
    auto r = coupled_search(ctx, bind_family(*f.family, {}, "s3"),
                            Rat(1, mpz_class("1000000000")));
    // the defining polynomial is 10(z^2-7z)^2 + 261(z^2-7z) + 1631
    UPoly w = u_from({Rat(0), Rat(-7), Rat(1)});
    UPoly expect = u_from({Rat(1631)}) + u_from({Rat(261)}) * w + u_from({Rat(10)}) * w * w;
    bool ok = u_normalize(r.defining_poly).c == u_normalize(expect).c;
    ok &= r.roots.size() == 2;
    for (size_t i = 0; i < r.roots.size(); ++i) {
      ok &= r.admissible[i];
      ok &= r.roots[i].lo > Rat(3, 2) && r.roots[i].hi < Rat(11, 2);
      ok &= r.roots[i].hi - r.roots[i].lo <= Rat(1, mpz_class("1000000000"));
    }
    ok &= ueval(r.defining_poly, Rat(7, 2)) != 0;
    ok &= check_ke(ctx, f.anticanonical).verdict == Verdict::NotExists;
    CHECK(ok);
    return ok;
  });
  std::printf("[acceptance] criterion 2 overall: %s\n", all ? "PASS" : "FAIL");
  CHECK(all);
}

TEST_CASE("criterion 3: KE symmetry checks") {
  bool all = run_line("3 F3_3.25 exists; 3.31/2.36/both fourfolds do not", [] {
    bool ok = check_ke(ctx_of("F3_3.25"), ac_of("F3_3.25")).verdict == Verdict::Exists;
    for (const std::string id : {"F3_3.31", "F3_2.36", "P4_O(1,-1)", "P4_O(-1,2)"})
      ok &= check_ke(ctx_of(id), ac_of(id)).verdict == Verdict::NotExists;
    CHECK(ok);
    return ok;
  });
  std::printf("[acceptance] criterion 3 overall: %s\n", all ? "PASS" : "FAIL");
  CHECK(all);
}

TEST_CASE("criterion 4: property suites") {
  bool all = true;

  all &= run_line("4a exact integrals vs Monte-Carlo, 50 cases, 3 sigma", [] {
    std::mt19937 rng(424242);
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_real_distribution<double> unif(0, 1);
    int done = 0, misses = 0;
    while (done < 50) {
      int dim = 2 + (done % 2);
      std::vector<QVec> pts;
      for (int i = 0; i < dim + 3; ++i) {
        QVec v;
        for (int d = 0; d < dim; ++d) v.push_back(Rat(coef(rng)));
        pts.push_back(v);
      }
      Polytope p;
      try {
        p = polytope_from_vertices(pts);
      } catch (...) {
        continue;
      }
      if ((int)p.dim_affine < dim) continue;
      Poly f(dim);
      for (int m = 0; m < 4; ++m) {
        Expo e(dim, 0);
        unsigned tot = 0;
        for (int d = 0; d < dim; ++d) {
          e[d] = (unsigned)std::abs(coef(rng)) % 2;
          tot += e[d];
        }
        if (tot <= 3) f.add_term(e, Rat(coef(rng)));
      }
      Rat exact = integrate_poly(p, f);
      std::vector<double> lo(dim, 1e300), hi(dim, -1e300);
      for (const auto& v : p.vertices)
        for (int d = 0; d < dim; ++d) {
          lo[d] = std::min(lo[d], to_double(v[d]));
          hi[d] = std::max(hi[d], to_double(v[d]));
        }
      double boxvol = 1;
      for (int d = 0; d < dim; ++d) boxvol *= hi[d] - lo[d];
      size_t n = 60000;
      double sum = 0, sumsq = 0;
      std::vector<double> x(dim);
      for (size_t s = 0; s < n; ++s) {
        for (int d = 0; d < dim; ++d) x[d] = lo[d] + (hi[d] - lo[d]) * unif(rng);
        bool inside = true;
        for (const auto& h : p.facets) {
          double slack = to_double(h.offset);
          for (int d = 0; d < dim; ++d) slack -= to_double(h.normal[d]) * x[d];
          if (slack < 0) {
            inside = false;
            break;
          }
        }
        double val = inside ? peval_d(f, x) : 0.0;
        sum += val;
        sumsq += val * val;
      }
      double mean = sum / n, var = sumsq / n - mean * mean;
      double sigma = boxvol * std::sqrt(std::max(var, 0.0) / n);
      if (std::fabs(boxvol * mean - to_double(exact)) > 3 * sigma + 1e-9) ++misses;
      ++done;
    }
    bool ok = misses <= 3;  // a 3-sigma bound leaves room for rare misses
    CHECK(ok);
    return ok;
  });

  all &= run_line("4b exp-affine integrals vs Gauss quadrature at 1e-12", [] {
    static const double gx[12] = {0.009219682876640378, 0.047941371814762571,
                                  0.115048662902847656, 0.206341022856691276,
                                  0.316084250500909903, 0.437383295744265542,
                                  0.562616704255734458, 0.683915749499090097,
                                  0.793658977143308724, 0.884951337097152344,
                                  0.952058628185237429, 0.990780317123359622};
    static const double gw[12] = {0.023587668193255914, 0.053469662997659215,
                                  0.080039164271673113, 0.101583713361532961,
                                  0.116746268269177404, 0.124573522906701393,
                                  0.124573522906701393, 0.116746268269177404,
                                  0.101583713361532961, 0.080039164271673113,
                                  0.053469662997659215, 0.023587668193255914};
    std::mt19937 rng(31337);
    std::uniform_int_distribution<int> coef(-2, 2);
    bool ok = true;
    int done = 0;
    while (done < 12) {
      QVec a{Rat(coef(rng)), Rat(coef(rng))}, b{Rat(coef(rng)), Rat(coef(rng))},
          c{Rat(coef(rng)), Rat(coef(rng))};
      Polytope tri;
      try {
        tri = polytope_from_vertices({a, b, c});
      } catch (...) {
        continue;
      }
      if (tri.dim_affine != 2) continue;
      Poly f(2);
      for (unsigned i = 0; i <= 2; ++i)
        for (unsigned j = 0; i + j <= 2; ++j) f.add_term({i, j}, Rat(coef(rng)));
      QVec xi{rat(coef(rng), 2), rat(coef(rng), 2)};
      Enclosure v = integrate_poly_exp(tri, f, xi, default_exp_tol());
      double va = to_double(a[0]), vb = to_double(a[1]);
      double e1x = to_double(b[0]) - va, e1y = to_double(b[1]) - vb;
      double e2x = to_double(c[0]) - va, e2y = to_double(c[1]) - vb;
      double jac = std::fabs(e1x * e2y - e1y * e2x);
      double acc = 0;
      for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j) {
          double s = gx[i], t = gx[j] * (1 - s);
          double x = va + s * e1x + t * e2x, y = vb + s * e1y + t * e2y;
          acc += gw[i] * gw[j] * (1 - s) * peval_d(f, {x, y}) *
                 std::exp(to_double(xi[0]) * x + to_double(xi[1]) * y);
        }
      acc *= jac;
      ok &= std::fabs(to_double(v.mid()) - acc) <= 1e-12 * std::max(1.0, std::fabs(acc));
      ++done;
    }
    CHECK(ok);
    return ok;
  });

  all &= run_line("4c barycenter scaling and translation invariances, exact", [] {
    Polytope seg = polytope_from_vertices({{Rat(1), Rat(4)}, {Rat(3), Rat(2)}});
    Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
    Poly dh = x * y * y;
    auto bar = dh_barycenter(seg, dh, WeightSpec::constant(), default_exp_tol());
    auto bar_scaled =
        dh_barycenter(seg, pscale(Rat(9, 2), dh), WeightSpec::constant(), default_exp_tol());
    bool ok = bar[0].lo == bar_scaled[0].lo && bar[1].lo == bar_scaled[1].lo;
    auto w1 =
        dh_barycenter(seg, dh, WeightSpec::affine({Rat(1), Rat(0)}, Rat(1)), default_exp_tol());
    auto w2 =
        dh_barycenter(seg, dh, WeightSpec::affine({Rat(3), Rat(0)}, Rat(3)), default_exp_tol());
    ok &= w1[0].lo == w2[0].lo;
    QVec v{Rat(-2), Rat(3)};
    Poly xs = Poly::linear({Rat(1), Rat(0)}, -v[0]);
    Poly ys = Poly::linear({Rat(0), Rat(1)}, -v[1]);
    auto bart = dh_barycenter(translate(seg, v), xs * ys * ys, WeightSpec::constant(),
                              default_exp_tol());
    ok &= bart[0].lo == bar[0].lo + v[0] && bart[1].lo == bar[1].lo + v[1];
    CHECK(ok);
    return ok;
  });

  all &= run_line("4d vertex enumeration vs subset oracle, 100 3d instances", [] {
    std::mt19937 rng(1123581321);
    std::uniform_int_distribution<int> coef(-4, 4);
    int done = 0;
    bool ok = true;
    while (done < 100) {
      std::vector<Halfspace> hrep;
      for (int i = 0; i < 3; ++i) {
        QVec e(3, Rat(0));
        e[i] = 1;
        hrep.push_back({e, Rat(5)});
        e[i] = -1;
        hrep.push_back({e, Rat(5)});
      }
      for (int i = 0; i < 5; ++i) {
        QVec n{Rat(coef(rng)), Rat(coef(rng)), Rat(coef(rng))};
        if (is_zero(n)) continue;
        hrep.push_back({n, Rat(coef(rng) + 6)});
      }
      auto oracle = brute_force_vertices(hrep, 3);
      if (oracle.empty()) continue;
      ok &= vertices_from_hrep(hrep, 3) == oracle;
      ++done;
    }
    CHECK(ok);
    return ok;
  });

  all &= run_line("4e dual-cone involution; relint certificates re-verify", [] {
    std::mt19937 rng(555);
    std::uniform_int_distribution<int> coef(-3, 3);
    bool ok = true;
    for (int iter = 0; iter < 40; ++iter) {
      std::vector<QVec> gens;
      for (int i = 0; i < 4; ++i) {
        QVec g{Rat(coef(rng)), Rat(coef(rng)), Rat(coef(rng))};
        if (!is_zero(g)) gens.push_back(g);
      }
      if (gens.empty()) continue;
      PolyCone c = cone_from_generators(gens, 3);
      PolyCone dd = dual_cone(dual_cone(c, QMat::identity(3)), QMat::identity(3));
      ok &= dd.rays == c.rays && dd.lineality == c.lineality;
    }
    for (const std::string id : {"RA1", "RC4", "F3_3.25"}) {
      auto rep = check_ke(ctx_of(id), ac_of(id));
      ok &= rep.verdict == Verdict::Exists;
      ok &= rep.relint.has_value() && rep.relint->inside && rep.relint->min_slack > 0;
      QVec p;
      for (const auto& e : rep.tested_point) p.push_back(e.lo);
      for (size_t i = 0; i < p.size(); ++i) {
        QVec d(p.size(), Rat(0));
        d[i] = 1;
        bool on_hull = true;
        for (const auto& eq : rep.tested_equations) on_hull &= dot(eq.normal, d) == 0;
        if (!on_hull) continue;
        Rat eps = relint_eps(rep.tested_facets, p, d);
        ok &= eps > 0;
        for (int s : {1, -1}) {
          QVec moved = add(p, scale(Rat(s) * eps / 2, d));
          for (const auto& fct : rep.tested_facets) ok &= dot(fct.normal, moved) <= fct.offset;
        }
      }
    }
    CHECK(ok);
    return ok;
  });

  all &= run_line("4f soliton residuals certified at 1e-12; symmetric xi = 0", [] {
    Rat tol = Rat(1) / Rat(mpz_class("1000000000000"));
    bool ok = true;
    for (const std::string id : {"F3_3.31", "F3_2.36", "F3_2.35", "F3_2.33", "P2", "P3_A2",
                                 "P4_O(1,-1)", "P4_O(-1,2)"}) {
      auto rep = solve_soliton(ctx_of(id), ac_of(id));
      ok &= rep.verdict == Verdict::Exists;
      ok &= rep.residual.has_value() && rep.residual->hi <= tol;
    }
    auto sym = solve_soliton(ctx_of("F3_3.25"), ac_of("F3_3.25"));
    REQUIRE(sym.solved_lin.has_value());
    for (const auto& c : *sym.solved_lin) ok &= c == 0;
    CHECK(ok);
    return ok;
  });

  std::printf("[acceptance] criterion 4 overall: %s\n", all ? "PASS" : "FAIL");
  CHECK(all);
}

TEST_CASE("criterion 5: continuity-path cross-validation at rank 1") {
  bool all = true;
  MAConfig cfg;
  cfg.n = 3000;
  cfg.window = 15;

  const auto& f236 = catalog::get("F3_2.36");
  auto ctx236 = CriteriaContext::make(f236.datum);
  Decomposition dec236;
  dec236.classes.push_back({f236.anticanonical, QVec(2, Rat(0)), WeightSpec::constant()});
  MAProblem p236 = build_problem(ctx236, dec236);
  Rat R = greatest_ricci_lower_bound(ctx236, f236.anticanonical).value;

  std::optional<MASolution> mid_sol;
  all &= run_line("5a F3_2.36: converges below exact R(X), diverges above", [&] {
    bool ok = R == Rat(31, 43);
    for (double t : {0.25, 0.5}) {
      REQUIRE(to_double(R) - t > 0.02);
      auto start = std::chrono::steady_clock::now();
      auto r = solve_at_t(p236, t, cfg);
      double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      ok &= secs < 60;
      ok &= r.converged();
      if (r.converged()) {
        ok &= r.solution->residual_inf <= cfg.tol;
        ok &= std::fabs(r.solution->mass - 1.0) <= 1e-6;
        if (t == 0.5) mid_sol = r.solution;
      }
    }
    {
      double t = 0.75;
      REQUIRE(t - to_double(R) > 0.02);
      auto start = std::chrono::steady_clock::now();
      auto r = solve_at_t(p236, t, cfg);
      double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      ok &= secs < 60;
      ok &= !r.converged() && r.divergence.has_value();
    }
    CHECK(ok);
    return ok;
  });

  all &= run_line("5b F3_3.31 at t=1 with the solved soliton weight", [&] {
    const auto& f = catalog::get("F3_3.31");
    auto ctx = CriteriaContext::make(f.datum);
    auto sol = solve_soliton(ctx, f.anticanonical);
    REQUIRE(sol.solved_lin.has_value());
    Decomposition dec;
    dec.classes.push_back(
        {f.anticanonical, QVec(2, Rat(0)), WeightSpec::exp_affine(*sol.solved_lin, Rat(0))});
    MAProblem p = build_problem(ctx, dec);
    auto start = std::chrono::steady_clock::now();
    auto r = solve_at_t(p, 1.0, cfg);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool ok = secs < 60 && r.converged();
    if (r.converged()) {
      const auto& s = *r.solution;
      ok &= s.residual_inf <= cfg.tol && std::fabs(s.mass - 1.0) <= 1e-6;
      double bar = 0;
      int n = (int)s.nodes.size() - 1;
      for (int j = 1; j < n; ++j)
        bar += (s.u[0][j + 1] - s.u[0][j - 1]) / (2 * s.h) * std::exp(-s.nu[j]) * s.h;
      ok &= std::fabs(bar - p.G[0].barycenter()) <= 1e-6;
    }
    CHECK(ok);
    return ok;
  });

  all &= run_line("5c Stokes residual <= 5e-5, halving under grid doubling", [&] {
    REQUIRE(mid_sol.has_value());
    double s1p = stokes_residual(p236, *mid_sol, 1.0);
    bool ok = std::fabs(s1p) <= 5e-5;
    MAConfig fine = cfg;
    fine.n = 6000;
    auto r2 = solve_at_t(p236, 0.5, fine);
    REQUIRE(r2.converged());
    double s2p = stokes_residual(p236, *r2.solution, 1.0);
    ok &= std::fabs(s2p) <= 5e-5;
    ok &= std::fabs(s1p) / std::fabs(s2p) >= 1.8;
    CHECK(ok);
    return ok;
  });

  all &= run_line("5d Legendre involution error within C*h on refining grids", [] {
    bool ok = true;
    double L = 3;
    for (int nn : {500, 1000, 2000}) {
      GridFunction w;
      for (int j = 0; j <= nn; ++j) {
        double x = -L + 2 * L * j / nn;
        w.x.push_back(x);
        w.y.push_back(std::cosh(x));
      }
      double p_lo = -std::sinh(L), p_hi = std::sinh(L);
      GridFunction lw = legendre(w, p_lo, p_hi, nn);
      GridFunction llw = legendre(lw, -L, L, nn);
      double err = 0;
      for (int j = 0; j <= nn; ++j) err = std::max(err, std::fabs(llw.y[j] - w.y[j]));
      double h = (p_hi - p_lo) / nn;
      double C = L + (p_hi - p_lo);  // a priori: window radius + slope range
      ok &= err <= C * h;
    }
    CHECK(ok);
    return ok;
  });

  std::printf("[acceptance] criterion 5 overall: %s\n", all ? "PASS" : "FAIL");
  CHECK(all);
}

TEST_CASE("criterion 6: byte-identical reports across runs") {
  bool all = run_line("6 determinism of the full JSON report set", [] {
    auto full_run = [] {
      std::string out;
      for (const auto& id : catalog::list()) {
        const auto& f = catalog::get(id);
        auto ctx = CriteriaContext::make(f.datum);
        out += report_json(check_ke(ctx, f.anticanonical), id);
        out += rlb_json(greatest_ricci_lower_bound(ctx, f.anticanonical), id);
        out += report_json(solve_mabuchi(ctx, f.anticanonical), id);
        out += serialize_datum(f);
      }
      const auto& f = catalog::get("F3_3.31");
      auto ctx = CriteriaContext::make(f.datum);
      out += report_json(solve_soliton(ctx, f.anticanonical), f.id);
      Decomposition dec;
      dec.classes.push_back({f.anticanonical, QVec(2, Rat(0)), WeightSpec::constant()});
      MAProblem p = build_problem(ctx, dec);
      MAConfig cfg;
      cfg.n = 500;
      cfg.window = 10;
      auto r = solve_at_t(p, 0.5, cfg);
      REQUIRE(r.converged());
      out += masolution_json(p, *r.solution, f.id);
      out += masolution_csv(p, *r.solution);
      return out;
    };
    std::string a = full_run(), b = full_run();
    bool ok = a == b && !a.empty();
    CHECK(ok);
    return ok;
  });
  std::printf("[acceptance] criterion 6 overall: %s\n", all ? "PASS" : "FAIL");
  CHECK(all);
}
