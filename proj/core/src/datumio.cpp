#include "horoke/datumio.hpp"

#include <json.hpp>

namespace horoke {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError(0, 0, what); }

Rat parse_rat_or_fail(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rat((long)j.get<long long>());
  if (!j.is_string()) fail(where + ": expected a rational string");
  auto r = parse_rat(j.get<std::string>());
  if (!r) fail(where + ": malformed rational '" + j.get<std::string>() + "'");
  return *r;
}

QVec parse_vec(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where + ": expected an array");
  QVec v;
  for (const auto& x : j) v.push_back(parse_rat_or_fail(x, where));
  return v;
}

std::vector<QVec> parse_vecs(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where + ": expected an array of vectors");
  std::vector<QVec> out;
  for (const auto& x : j) out.push_back(parse_vec(x, where));
  return out;
}

QMat parse_mat(const json& j, const std::string& where) {
  auto rows = parse_vecs(j, where);
  QMat m;
  m.rows = rows;
  return m;
}

json vec_json(const QVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(rat_str(x));
  return a;
}

json vecs_json(const std::vector<QVec>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(vec_json(v));
  return a;
}

}  // namespace

QMat orthogonal_projection(const QMat& gram, const std::vector<QVec>& basis) {
  size_t n = gram.nrows(), r = basis.size();
  QMat b_cols(n, r);
  for (size_t j = 0; j < r; ++j)
    for (size_t i = 0; i < n; ++i) b_cols.at(i, j) = basis[j][i];
  QMat bt = b_cols.transpose();
  QMat core = mat_mul(bt, mat_mul(gram, b_cols));  // B^T G B
  auto inv = inverse(core);
  if (!inv) throw ValidationError("killing form degenerate on the spherical basis");
  return mat_mul(b_cols, mat_mul(*inv, mat_mul(bt, gram)));
}

DatumFile parse_datum(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // recover line/column from the byte offset
    int line = 1, col = 1;
    for (size_t i = 0; i < std::min(text.size(), (size_t)e.byte); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(line, col, e.what());
  }

  DatumFile f;
  f.schema = j.value("schema", 1);
  f.id = j.value("id", std::string{});
  f.dim = j.value("dim", 0);
  f.provenance = j.value("provenance", std::string{});
  f.notes = j.value("notes", std::string{});

  HorosymmetricDatum d;
  if (!j.contains("ambient") || !j["ambient"].contains("rank"))
    fail("missing ambient.rank");
  d.ambient_rank = j["ambient"]["rank"].get<size_t>();
  d.killing = parse_mat(j.at("killing"), "killing");
  if (j.contains("roots_qu")) d.roots_Qu = parse_vecs(j["roots_qu"], "roots_qu");
  if (j.contains("roots_s_plus"))
    d.roots_s_plus = parse_vecs(j["roots_s_plus"], "roots_s_plus");
  if (j.contains("restricted_roots")) {
    for (const auto& rr : j["restricted_roots"]) {
      RestrictedRoot r;
      r.root = parse_vec(rr.at("root"), "restricted_roots.root");
      r.multiplicity = rr.value("mult", 1u);
      d.restricted_roots.push_back(r);
    }
  }
  d.spherical_basis = parse_vecs(j.at("spherical_basis"), "spherical_basis");
  if (j.contains("lattice")) d.lattice = parse_vecs(j["lattice"], "lattice");
  if (j.contains("projection"))
    d.projection = parse_mat(j["projection"], "projection");
  else
    d.projection = orthogonal_projection(d.killing, d.spherical_basis);
  if (j.contains("soliton_directions"))
    d.soliton_directions = parse_vecs(j["soliton_directions"], "soliton_directions");
  if (j.contains("central_directions"))
    d.central_directions = parse_vecs(j["central_directions"], "central_directions");
  f.datum = build_datum(d);

  if (j.contains("anticanonical"))
    f.anticanonical = polytope_from_vertices(parse_vecs(j["anticanonical"], "anticanonical"));

  if (j.contains("known"))
    for (auto it = j["known"].begin(); it != j["known"].end(); ++it)
      f.known[it.key()] = it.value().get<std::string>();
  if (j.contains("known_derived"))
    for (auto it = j["known_derived"].begin(); it != j["known_derived"].end(); ++it)
      f.known_derived[it.key()] = it.value().get<std::string>();
  if (j.contains("same_manifold"))
    for (const auto& s : j["same_manifold"]) f.same_manifold.push_back(s.get<std::string>());

  if (j.contains("family")) {
    const auto& jf = j["family"];
    FamilyTemplate tf;
    for (const auto& p : jf.at("params")) tf.params.push_back(p.get<std::string>());
    if (jf.contains("defaults"))
      for (auto it = jf["defaults"].begin(); it != jf["defaults"].end(); ++it)
        tf.defaults[it.key()] = parse_rat_or_fail(it.value(), "family.defaults");
    tf.default_free = jf.value("free", std::string{});
    for (const auto& jc : jf.at("classes")) {
      FamilyTemplate::ClassTemplate ct;
      auto parse_affine = [&](const json& ja, QVec& base, std::map<std::string, QVec>& coeff) {
        base = parse_vec(ja.at("const"), "family.class.const");
        for (auto it = ja.begin(); it != ja.end(); ++it)
          if (it.key() != "const") coeff[it.key()] = parse_vec(it.value(), "family.class");
      };
      parse_affine(jc.at("v0"), ct.v0_base, ct.v0_coeff);
      parse_affine(jc.at("v1"), ct.v1_base, ct.v1_coeff);
      tf.classes.push_back(ct);
    }
    if (jf.contains("window")) {
      for (const auto& jw : jf["window"]) {
        FamilyTemplate::WindowRow row;
        row.c0 = jw.contains("const") ? parse_rat_or_fail(jw["const"], "family.window") : Rat(0);
        for (auto it = jw.begin(); it != jw.end(); ++it)
          if (it.key() != "const")
            row.coeff[it.key()] = parse_rat_or_fail(it.value(), "family.window");
        tf.window.push_back(row);
      }
    }
    f.family = tf;
  }
  return f;
}

std::string serialize_datum(const DatumFile& f) {
  json j;
  j["schema"] = f.schema;
  j["id"] = f.id;
  if (f.dim) j["dim"] = f.dim;
  if (!f.provenance.empty()) j["provenance"] = f.provenance;
  if (!f.notes.empty()) j["notes"] = f.notes;
  j["ambient"] = {{"rank", f.datum.ambient_rank}};
  j["killing"] = vecs_json(f.datum.killing.rows);
  j["roots_qu"] = vecs_json(f.datum.roots_Qu);
  j["roots_s_plus"] = vecs_json(f.datum.roots_s_plus);
  if (!f.datum.restricted_roots.empty()) {
    json a = json::array();
    for (const auto& r : f.datum.restricted_roots)
      a.push_back({{"root", vec_json(r.root)}, {"mult", r.multiplicity}});
    j["restricted_roots"] = a;
  }
  j["spherical_basis"] = vecs_json(f.datum.spherical_basis);
  if (!f.datum.lattice.empty()) j["lattice"] = vecs_json(f.datum.lattice);
  j["projection"] = vecs_json(f.datum.projection.rows);
  if (!f.datum.soliton_directions.empty())
    j["soliton_directions"] = vecs_json(f.datum.soliton_directions);
  if (!f.datum.central_directions.empty())
    j["central_directions"] = vecs_json(f.datum.central_directions);
  if (!f.anticanonical.vertices.empty()) j["anticanonical"] = vecs_json(f.anticanonical.vertices);
  if (!f.known.empty()) {
    json k;
    for (const auto& [key, val] : f.known) k[key] = val;
    j["known"] = k;
  }
  if (!f.known_derived.empty()) {
    json k;
    for (const auto& [key, val] : f.known_derived) k[key] = val;
    j["known_derived"] = k;
  }
  if (!f.same_manifold.empty()) j["same_manifold"] = f.same_manifold;
  if (f.family) {
    json jf;
    jf["params"] = f.family->params;
    if (!f.family->defaults.empty()) {
      json dd;
      for (const auto& [k, v] : f.family->defaults) dd[k] = rat_str(v);
      jf["defaults"] = dd;
    }
    if (!f.family->default_free.empty()) jf["free"] = f.family->default_free;
    json cl = json::array();
    for (const auto& c : f.family->classes) {
      json jc;
      json v0, v1;
      v0["const"] = vec_json(c.v0_base);
      for (const auto& [k, v] : c.v0_coeff) v0[k] = vec_json(v);
      v1["const"] = vec_json(c.v1_base);
      for (const auto& [k, v] : c.v1_coeff) v1[k] = vec_json(v);
      jc["v0"] = v0;
      jc["v1"] = v1;
      cl.push_back(jc);
    }
    jf["classes"] = cl;
    if (!f.family->window.empty()) {
      json w = json::array();
      for (const auto& row : f.family->window) {
        json jr;
        jr["const"] = rat_str(row.c0);
        for (const auto& [k, v] : row.coeff) jr[k] = rat_str(v);
        w.push_back(jr);
      }
      jf["window"] = w;
    }
    j["family"] = jf;
  }
  return j.dump(2) + "\n";
}

DecompositionFamily bind_family(const FamilyTemplate& tmpl,
                                const std::map<std::string, Rat>& fixed,
                                const std::string& free_param) {
  DecompositionFamily fam;
  fam.param_name = free_param;
  bool free_known = false;
  for (const auto& p : tmpl.params) free_known = free_known || p == free_param;
  if (!free_known) throw std::invalid_argument("unknown free parameter " + free_param);
  auto value_of = [&](const std::string& p) -> Rat {
    auto it = fixed.find(p);
    if (it != fixed.end()) return it->second;
    auto dt = tmpl.defaults.find(p);
    if (dt != tmpl.defaults.end()) return dt->second;
    throw std::invalid_argument("parameter " + p + " is neither fixed nor defaulted");
  };
  for (const auto& ct : tmpl.classes) {
    FamilyClass fc;
    auto bind_vec = [&](const QVec& base, const std::map<std::string, QVec>& coeff, QVec& out_base,
                        QVec& out_coeff) {
      out_base = base;
      out_coeff = QVec(base.size(), Rat(0));
      for (const auto& [p, v] : coeff) {
        if (p == free_param)
          out_coeff = add(out_coeff, v);
        else
          out_base = add(out_base, scale(value_of(p), v));
      }
    };
    bind_vec(ct.v0_base, ct.v0_coeff, fc.v0_base, fc.v0_coeff);
    bind_vec(ct.v1_base, ct.v1_coeff, fc.v1_base, fc.v1_coeff);
    fam.classes.push_back(fc);
  }
  for (const auto& row : tmpl.window) {
    Rat c0 = row.c0, c1(0);
    for (const auto& [p, v] : row.coeff) {
      if (p == free_param)
        c1 += v;
      else
        c0 += value_of(p) * v;
    }
    if (c1 == 0) {
      if (c0 <= 0)
        throw std::invalid_argument("fixed parameters violate the admissibility window");
      continue;
    }
    fam.window.emplace_back(c0, c1);
  }
  return fam;
}

}  // namespace horoke
