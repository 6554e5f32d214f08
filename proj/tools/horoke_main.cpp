// horoke: existence checks and continuity-path solves for canonical metrics
// on horosymmetric Fano data.
//
// Exit codes: 0 exists/computed, 3 not_exists, 4 boundary, 2 usage error,
// >= 10 input or solver errors (stable per error family), so shell pipelines
// can branch on mathematical verdicts.

#include <CLI11.hpp>

#include "horoke/catalog.hpp"
#include "horoke/report.hpp"

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

using namespace horoke;

namespace {

constexpr int kExitExists = 0;
constexpr int kExitNotExists = 3;
constexpr int kExitBoundary = 4;
constexpr int kExitParse = 10;
constexpr int kExitValidation = 11;
constexpr int kExitUnknownId = 12;
constexpr int kExitDecomposition = 13;
constexpr int kExitInfeasible = 14;
constexpr int kExitNewton = 15;
constexpr int kExitUnsupported = 16;
constexpr int kExitAssumption = 17;
constexpr int kExitInternal = 19;

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::Exists:
      return kExitExists;
    case Verdict::NotExists:
      return kExitNotExists;
    case Verdict::Boundary:
      return kExitBoundary;
  }
  return kExitInternal;
}

struct JobSpec {
  std::string command;
  std::vector<std::string> inputs;  // catalog ids or @file paths
  std::string format = "text";
  Rat tol = default_exp_tol();
  Rat t = Rat(1);
  unsigned power_k = 2;
  std::string free_param;
  std::map<std::string, Rat> fixed;
  Rat root_width = Rat(1) / Rat(mpz_class("1000000000"));
  // masolver options
  MAConfig ma;
  std::vector<double> ts;
  std::string weight = "constant";
  std::string csv_out;
  int jobs = 1;
};

DatumFile load_input(const std::string& input) {
  if (!input.empty() && input[0] == '@') {
    std::ifstream in(input.substr(1));
    if (!in) throw ParseError(0, 0, "cannot open " + input.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_datum(ss.str());
  }
  if (catalog::has(input)) return catalog::get(input);
  // fall back to a path without the @ prefix
  std::ifstream in(input);
  if (!in) throw UnknownId(input);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_datum(ss.str());
}

Polytope chamber_clipped(const CriteriaContext& ctx, const Polytope& p) {
  if (ctx.datum.roots_s_plus.empty()) return p;
  std::vector<Halfspace> cuts;
  for (const auto& beta : ctx.datum.roots_s_plus) {
    QVec row = scale(Rat(-1), mat_vec(ctx.datum.killing, beta));
    cuts.push_back({row, Rat(0)});
  }
  return intersect(p, cuts, {});
}

Decomposition anticanonical_decomposition(const CriteriaContext& ctx, const DatumFile& f,
                                          const WeightSpec& w) {
  Decomposition dec;
  dec.classes.push_back(
      {chamber_clipped(ctx, f.anticanonical), QVec(ctx.datum.ambient_rank, Rat(0)), w});
  return dec;
}

struct RunResult {
  int exit_code = kExitExists;
  std::string text;
  std::string json;
};

RunResult run_one(const JobSpec& job, const std::string& input) {
  RunResult out;
  DatumFile f = load_input(input);
  std::string id = f.id.empty() ? input : f.id;
  CriteriaContext ctx = CriteriaContext::make(f.datum);

  if (job.command == "validate") {
    out.text = id + ": datum validated\n";
    out.json = std::string("{\n  \"schema\": 1,\n  \"id\": \"") + id +
               "\",\n  \"check\": \"validate\",\n  \"ok\": true\n}\n";
    return out;
  }
  if (job.command == "show") {
    out.text = serialize_datum(f);
    out.json = out.text;
    return out;
  }

  Polytope ac = chamber_clipped(ctx, f.anticanonical);

  auto finish_report = [&](const ExistenceReport& rep) {
    out.exit_code = verdict_exit(rep.verdict);
    std::ostringstream os;
    os << id << " [" << rep.check << "] " << verdict_name(rep.verdict);
    if (!rep.certificate.empty()) os << ": " << rep.certificate;
    os << "\n";
    out.text = os.str();
    out.json = report_json(rep, id);
  };

  if (job.command == "check-ke") {
    finish_report(check_ke(ctx, ac));
  } else if (job.command == "check-general") {
    Decomposition dec = anticanonical_decomposition(ctx, f, WeightSpec::constant());
    finish_report(check_general(ctx, dec, job.t, job.tol));
  } else if (job.command == "rlb") {
    RicciLowerBound r = greatest_ricci_lower_bound(ctx, ac);
    out.text = id + " R(X) = " + rat_str(r.value) + " (" + decimal_lo(r.value) + ")" +
               (r.boundary_flag ? " [boundary]" : "") + "\n";
    out.json = rlb_json(r, id);
    out.exit_code = kExitExists;
  } else if (job.command == "solve-soliton") {
    finish_report(solve_soliton(ctx, ac));
  } else if (job.command == "solve-mabuchi") {
    finish_report(solve_mabuchi(ctx, ac));
  } else if (job.command == "power-mabuchi") {
    finish_report(solve_power_mabuchi(ctx, ac, job.power_k));
  } else if (job.command == "coupled-search") {
    if (!f.family) throw NotUnivariate(id + " carries no decomposition family");
    std::string free_p = job.free_param.empty() ? f.family->default_free : job.free_param;
    DecompositionFamily fam = bind_family(*f.family, job.fixed, free_p);
    CoupledSearchResult r = coupled_search(ctx, fam, job.root_width);
    size_t n_adm = 0;
    for (bool b : r.admissible) n_adm += b;
    std::ostringstream os;
    os << id << " coupled search in " << free_p << ": "
       << upoly_string(r.defining_poly, free_p) << " = 0, " << r.roots.size()
       << " real root(s), " << n_adm << " admissible\n";
    out.text = os.str();
    out.json = coupled_json(r, id, free_p);
    out.exit_code = n_adm > 0 ? kExitExists : kExitNotExists;
  } else if (job.command == "solve-ma") {
    WeightSpec w = WeightSpec::constant();
    if (job.weight == "soliton") {
      ExistenceReport sol = solve_soliton(ctx, ac);
      if (!sol.solved_lin) throw NewtonStall("no soliton weight available");
      w = WeightSpec::exp_affine(*sol.solved_lin, Rat(0));
    } else if (job.weight != "constant") {
      throw std::invalid_argument("unknown weight kind " + job.weight);
    }
    Decomposition dec = anticanonical_decomposition(ctx, f, w);
    MAProblem prob = build_problem(ctx, dec);
    std::ostringstream text, js;
    int code = kExitExists;
    for (double t : job.ts) {
      MAResult r = solve_at_t(prob, t, job.ma);
      if (r.converged()) {
        const MASolution& s = *r.solution;
        text << id << " t=" << t << " converged: residual " << s.residual_inf << ", mass "
             << s.mass << ", m_t " << s.m_t << ", x_t " << s.x_t << "\n";
        js << masolution_json(prob, s, id);
        if (!job.csv_out.empty()) {
          std::ofstream csv(job.csv_out + (job.ts.size() > 1
                                               ? "." + std::to_string(t)
                                               : std::string{}));
          csv << masolution_csv(prob, s);
        }
      } else {
        text << id << " t=" << t << " diverged: " << r.divergence->reason << "\n";
        js << divergence_json(*r.divergence, id);
        code = kExitNotExists;
      }
    }
    out.text = text.str();
    out.json = js.str();
    out.exit_code = code;
  } else {
    throw std::invalid_argument("unknown command " + job.command);
  }
  return out;
}

int run(const JobSpec& job) {
  std::vector<RunResult> results(job.inputs.size());
  if (job.jobs > 1 && job.inputs.size() > 1) {
    std::vector<std::future<RunResult>> futs;
    for (const auto& input : job.inputs)
      futs.push_back(std::async(std::launch::async, [&job, input] { return run_one(job, input); }));
    for (size_t i = 0; i < futs.size(); ++i) results[i] = futs[i].get();
  } else {
    for (size_t i = 0; i < job.inputs.size(); ++i) results[i] = run_one(job, job.inputs[i]);
  }
  int code = 0;
  for (const auto& r : results) {
    std::cout << (job.format == "json" ? r.json : r.text);
    if (r.exit_code >= 10) code = std::max(code, r.exit_code);
    else if (code < 10)
      code = std::max(code, r.exit_code);
  }
  return code;
}

Rat parse_rat_arg(const std::string& s, const std::string& what) {
  auto r = parse_rat(s);
  if (!r) throw CLI::ValidationError(what, "malformed rational '" + s + "'");
  return *r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"existence of canonical Kaehler metrics on horosymmetric Fano data"};
  app.require_subcommand(1);

  JobSpec job;
  std::string ids, t_str = "1", tol_str, fix_str, width_str, ts_str = "1";

  if (const char* env = std::getenv("HOROKE_TOL")) tol_str = env;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--id", ids, "catalog id(s), comma separated");
    sub->add_option("--input", ids, "datum file path (or @path)");
    sub->add_option("--format", job.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--tol", tol_str, "certified relative tolerance (rational)");
    sub->add_option("--jobs", job.jobs, "parallel fan-out over inputs");
  };

  auto* cke = app.add_subcommand("check-ke", "Kaehler-Einstein existence");
  add_common(cke);
  auto* cg = app.add_subcommand("check-general", "continuity-path condition at t");
  add_common(cg);
  cg->add_option("--t", t_str, "path parameter in (0,1]");
  auto* rlb = app.add_subcommand("rlb", "greatest Ricci lower bound, exact");
  add_common(rlb);
  auto* sol = app.add_subcommand("solve-soliton", "Kaehler-Ricci soliton weight");
  add_common(sol);
  auto* mab = app.add_subcommand("solve-mabuchi", "Mabuchi metric via the linear system");
  add_common(mab);
  auto* pmab = app.add_subcommand("power-mabuchi", "power-of-affine density variant");
  add_common(pmab);
  pmab->add_option("--k", job.power_k, "power of the affine density (>= 2)");
  auto* cps = app.add_subcommand("coupled-search", "coupled pairs over a decomposition family");
  add_common(cps);
  cps->add_option("--free", job.free_param, "free family parameter");
  cps->add_option("--fix", fix_str, "fixed parameters, e.g. s1=1/4,s2=3/2");
  cps->add_option("--width", width_str, "root enclosure width (rational)");
  auto* sma = app.add_subcommand("solve-ma", "real continuity-path grid solve");
  add_common(sma);
  sma->add_option("--t", ts_str, "t values, comma separated");
  sma->add_option("--weight", job.weight, "constant or soliton");
  sma->add_option("--grid-n", job.ma.n, "grid intervals");
  sma->add_option("--window", job.ma.window, "window half-width L");
  sma->add_option("--ma-tol", job.ma.tol, "Newton residual tolerance");
  sma->add_option("--csv-out", job.csv_out, "write per-node CSV here");
  auto* cat = app.add_subcommand("catalog", "list or show embedded entries");
  auto* cat_list = cat->add_subcommand("list", "list ids");
  auto* cat_show = cat->add_subcommand("show", "print an entry document");
  cat_show->add_option("--id", ids, "catalog id")->required();
  auto* val = app.add_subcommand("validate", "parse and validate a datum document");
  add_common(val);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cat_list->parsed()) {
      for (const auto& id : catalog::list()) std::cout << id << "\n";
      return 0;
    }
    if (!tol_str.empty()) job.tol = parse_rat_arg(tol_str, "--tol");
    if (!width_str.empty()) job.root_width = parse_rat_arg(width_str, "--width");
    job.t = parse_rat_arg(t_str, "--t");
    {
      std::stringstream ss(ts_str);
      std::string item;
      job.ts.clear();
      while (std::getline(ss, item, ',')) job.ts.push_back(std::stod(item));
    }
    if (!fix_str.empty()) {
      std::stringstream ss(fix_str);
      std::string item;
      while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
          throw std::invalid_argument("--fix expects name=value pairs");
        job.fixed[item.substr(0, eq)] = parse_rat_arg(item.substr(eq + 1), "--fix");
      }
    }
    if (catalog::has(ids)) {
      job.inputs.push_back(ids);  // ids may legitimately contain commas
    } else {
      std::stringstream ss(ids);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (!item.empty()) job.inputs.push_back(item);
      }
    }
    if (job.inputs.empty()) {
      std::cerr << "no --id or --input given\n";
      return 2;
    }

    if (cke->parsed()) job.command = "check-ke";
    else if (cg->parsed()) job.command = "check-general";
    else if (rlb->parsed()) job.command = "rlb";
    else if (sol->parsed()) job.command = "solve-soliton";
    else if (mab->parsed()) job.command = "solve-mabuchi";
    else if (pmab->parsed()) job.command = "power-mabuchi";
    else if (cps->parsed()) job.command = "coupled-search";
    else if (sma->parsed()) job.command = "solve-ma";
    else if (cat_show->parsed()) job.command = "show";
    else if (val->parsed()) job.command = "validate";
    else {
      std::cerr << "missing command\n";
      return 2;
    }
    return run(job);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const UnknownId& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnknownId;
  } catch (const InvalidKilling& e) {
    std::cerr << "error: InvalidKilling: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ChamberDegenerate& e) {
    std::cerr << "error: ChamberDegenerate: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const InvalidDecomposition& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDecomposition;
  } catch (const UnnormalizedWeights& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDecomposition;
  } catch (const TargetOutsidePolytope& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const NewtonStall& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNewton;
  } catch (const NewtonDiverged& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNewton;
  } catch (const RankTooHigh& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const NotUnivariate& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const AssumptionViolated& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAssumption;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
}
