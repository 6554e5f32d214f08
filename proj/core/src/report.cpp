#include "horoke/report.hpp"

#include <json.hpp>
#include <mpfr.h>

#include <cstdio>
#include <sstream>

namespace horoke {

using json = nlohmann::ordered_json;

namespace {

std::string decimal(const Rat& r, mpfr_rnd_t rnd) {
  mpfr_t x;
  mpfr_init2(x, 128);
  mpfr_set_q(x, r.get_mpq_t(), rnd);
  char buf[64];
  mpfr_snprintf(buf, sizeof buf, "%.17R*e", rnd, x);
  mpfr_clear(x);
  return buf;
}

json enclosure_json(const Enclosure& e) {
  if (e.is_exact()) return json{{"exact", rat_str(e.lo)}};
  return json{{"interval", {decimal_lo(e.lo), decimal_hi(e.hi)}}};
}

json enclosures_json(const std::vector<Enclosure>& v) {
  json a = json::array();
  for (const auto& e : v) a.push_back(enclosure_json(e));
  return a;
}

json root_json(const RootInterval& r) {
  if (r.exact()) return json{{"exact", rat_str(r.lo)}};
  return json{{"interval", {decimal_lo(r.lo), decimal_hi(r.hi)}},
              {"width", decimal_hi(r.hi - r.lo)}};
}

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string decimal_lo(const Rat& r) { return decimal(r, MPFR_RNDD); }
std::string decimal_hi(const Rat& r) { return decimal(r, MPFR_RNDU); }

std::string tagged_json(const Enclosure& e) { return enclosure_json(e).dump(); }

std::string upoly_string(const UPoly& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = p.c.size(); i-- > 0;) {
    if (p.c[i] == 0) continue;
    Rat c = p.c[i];
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0)
      os << "-";
    Rat a = abs(c);
    if (a != 1 || i == 0) os << a;
    if (i >= 1) {
      if (a != 1) os << "*";
      os << var;
      if (i >= 2) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

std::string report_json(const ExistenceReport& rep, const std::string& id) {
  json j;
  j["schema"] = 1;
  j["id"] = id;
  j["check"] = rep.check;
  j["t"] = rat_str(rep.t_value);
  j["verdict"] = verdict_name(rep.verdict);
  j["certificate"] = rep.certificate;
  if (rep.relint) {
    json c;
    c["inside"] = rep.relint->inside;
    if (rep.relint->inside) c["min_slack"] = rat_str(rep.relint->min_slack);
    if (rep.relint->off_affine_hull) c["off_affine_hull"] = true;
    if (rep.relint->facet >= 0) {
      c["facet"] = rep.relint->facet;
      c["tight"] = rep.relint->tight;
    }
    j["relint"] = c;
  }
  if (!rep.tested_facets.empty() || !rep.tested_equations.empty()) {
    json f = json::array();
    for (const auto& h : rep.tested_facets) {
      json row;
      row["normal"] = json::array();
      for (const auto& x : h.normal) row["normal"].push_back(rat_str(x));
      row["offset"] = rat_str(h.offset);
      f.push_back(row);
    }
    j["tested_facets"] = f;
    json eqs = json::array();
    for (const auto& e : rep.tested_equations) {
      json row;
      row["normal"] = json::array();
      for (const auto& x : e.normal) row["normal"].push_back(rat_str(x));
      row["offset"] = rat_str(e.offset);
      eqs.push_back(row);
    }
    j["tested_equations"] = eqs;
    j["tested_point"] = enclosures_json(rep.tested_point);
  }
  if (rep.solved_lin) {
    json s;
    s["lin"] = json::array();
    for (const auto& x : *rep.solved_lin) s["lin"].push_back(rat_str(x));
    if (rep.solved_c0) s["c0"] = rat_str(*rep.solved_c0);
    if (rep.residual) s["residual"] = enclosure_json(*rep.residual);
    j["solved_functional"] = s;
  }
  if (rep.defining_poly) {
    j["defining_poly"] = upoly_string(*rep.defining_poly, "x");
    json cs = json::array();
    for (const auto& c : rep.defining_poly->c) cs.push_back(rat_str(c));
    j["defining_poly_coeffs"] = cs;
    json roots = json::array();
    for (size_t i = 0; i < rep.roots.size(); ++i) {
      json r = root_json(rep.roots[i]);
      if (i < rep.admissible.size()) r["admissible"] = rep.admissible[i];
      roots.push_back(r);
    }
    j["roots"] = roots;
  }
  if (!rep.numerics.empty()) {
    json n;
    for (const auto& [k, v] : rep.numerics) n[k] = enclosures_json(v);
    j["numerics"] = n;
  }
  return j.dump(2) + "\n";
}

std::string rlb_json(const RicciLowerBound& r, const std::string& id) {
  json j;
  j["schema"] = 1;
  j["id"] = id;
  j["check"] = "rlb";
  j["value"] = {{"exact", rat_str(r.value)}};
  j["value_decimal"] = decimal_lo(r.value);
  j["boundary_flag"] = r.boundary_flag;
  if (!r.note.empty()) j["note"] = r.note;
  return j.dump(2) + "\n";
}

std::string coupled_json(const CoupledSearchResult& r, const std::string& id,
                         const std::string& param) {
  json j;
  j["schema"] = 1;
  j["id"] = id;
  j["check"] = "coupled_search";
  j["parameter"] = param;
  j["defining_poly"] = upoly_string(r.defining_poly, param);
  json cs = json::array();
  for (const auto& c : r.defining_poly.c) cs.push_back(rat_str(c));
  j["defining_poly_coeffs"] = cs;
  json roots = json::array();
  for (size_t i = 0; i < r.roots.size(); ++i) {
    json row = root_json(r.roots[i]);
    row["admissible"] = r.admissible[i];
    roots.push_back(row);
  }
  j["roots"] = roots;
  size_t n_adm = 0;
  for (bool b : r.admissible) n_adm += b;
  j["admissible_roots"] = n_adm;
  j["verdict"] = n_adm > 0 ? "exists" : "not_exists";
  return j.dump(2) + "\n";
}

std::string masolution_json(const MAProblem& p, const MASolution& s, const std::string& id) {
  json j;
  j["schema"] = 1;
  j["id"] = id;
  j["check"] = "solve_ma";
  j["t"] = fmt_double(s.t);
  j["converged"] = true;
  j["window"] = {fmt_double(s.a_lo), fmt_double(s.a_hi)};
  j["n"] = s.nodes.size() - 1;
  j["h"] = fmt_double(s.h);
  j["iterations"] = s.iterations;
  j["enlargements"] = s.enlargements;
  j["residual_inf"] = fmt_double(s.residual_inf);
  j["mass"] = fmt_double(s.mass);
  j["m_t"] = fmt_double(s.m_t);
  j["x_t"] = fmt_double(s.x_t);
  j["min_second_difference"] = fmt_double(s.min_second_difference);
  json st;
  st["plus"] = fmt_double(stokes_residual(p, s, 1.0));
  st["minus"] = fmt_double(stokes_residual(p, s, -1.0));
  j["stokes_residual"] = st;
  return j.dump(2) + "\n";
}

std::string divergence_json(const DivergenceDiagnosis& d, const std::string& id) {
  json j;
  j["schema"] = 1;
  j["id"] = id;
  j["check"] = "solve_ma";
  j["t"] = fmt_double(d.t);
  j["converged"] = false;
  j["reason"] = d.reason;
  json xs = json::array(), ws = json::array();
  for (double x : d.x_t_history) xs.push_back(fmt_double(x));
  for (double w : d.window_history) ws.push_back(fmt_double(w));
  j["x_t_history"] = xs;
  j["window_history"] = ws;
  return j.dump(2) + "\n";
}

std::string masolution_csv(const MAProblem& p, const MASolution& s) {
  (void)p;
  std::ostringstream os;
  os << "node,a";
  for (size_t i = 0; i < s.u.size(); ++i) os << ",u_" << (i + 1);
  os << ",density\n";
  for (size_t j = 0; j < s.nodes.size(); ++j) {
    os << j << "," << fmt_double(s.nodes[j]);
    for (const auto& ui : s.u) os << "," << fmt_double(ui[j]);
    double dens = std::isfinite(s.nu[j]) ? std::exp(-s.nu[j]) : 0.0;
    os << "," << fmt_double(dens) << "\n";
  }
  return os.str();
}

std::string track_json(const std::vector<TrackPoint>& pts, const std::string& id) {
  json j;
  j["schema"] = 1;
  j["id"] = id;
  j["check"] = "track";
  json a = json::array();
  for (const auto& tp : pts) {
    json row;
    row["t"] = fmt_double(tp.t);
    row["converged"] = tp.converged;
    row["m_t"] = fmt_double(tp.m_t);
    row["x_t"] = fmt_double(tp.x_t);
    row["enlargements"] = tp.enlargements;
    a.push_back(row);
  }
  j["path"] = a;
  return j.dump(2) + "\n";
}

}  // namespace horoke
