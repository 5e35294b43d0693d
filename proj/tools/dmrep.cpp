// dmrep: solve, classify and reconcile representations of the 3-fold type one
// Deligne-Mostow lattices. JSON goes to stdout (or --out), logs to stderr.

#include "dmrep/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>

using namespace dmrep;

namespace {

enum Exit { ok = 0, internal = 1, budget = 2, mismatch = 3, usage = 4 };

struct Common {
  int p = 3, k = 6;
  std::vector<std::string> cases;
  long precision = 256;
  std::string denom_bound = "10000";
  std::size_t budget = 5'000'000;
  std::vector<int> conductors;
  std::string out;
};

void add_common(CLI::App* app, Common& c, bool with_cases = true) {
  app->add_option("--p", c.p, "order of R")->capture_default_str();
  app->add_option("--k", c.k, "half order of RJ")->capture_default_str();
  if (with_cases) app->add_option("--cases", c.cases, "cases by kind or full label (default: all)");
  app->add_option("--precision", c.precision, "working precision in bits")->capture_default_str();
  app->add_option("--denom-bound", c.denom_bound, "denominator bound for reconstruction")->capture_default_str();
  app->add_option("--budget", c.budget, "Groebner basis step budget")->capture_default_str();
  app->add_option("--conductors", c.conductors, "conductors tried in reconstruction");
  app->add_option("--out", c.out, "write JSON here instead of stdout");
}

RunConfig config_of(const Common& c) {
  if (!valid_lattice(c.p, c.k))
    throw std::invalid_argument("(" + std::to_string(c.p) + "," + std::to_string(c.k) + ") is not a 3-fold type one lattice");
  RunConfig cfg;
  cfg.p = c.p;
  cfg.k = c.k;
  cfg.cases = parse_cases(c.cases, c.p);
  cfg.solver.precision = c.precision;
  cfg.solver.denom_bound = Integer(c.denom_bound);
  cfg.solver.budget = c.budget;
  if (!c.conductors.empty()) cfg.solver.conductors = c.conductors;
  return cfg;
}

void emit(const Json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << j.dump(2) << "\n";
}

void log_line(const std::string& s) { std::cerr << s << std::endl; }

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ReportError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ReportError("cannot parse " + path + ": " + e.what());
  }
}

/// "r1=1/2*z - 1; r2=z^2" with z = zeta_n
RepPoint point_from_values(const Family& fam, const std::string& text, int n) {
  std::map<std::string, CycloNum> vals;
  std::string t = text;
  std::replace(t.begin(), t.end(), ',', ';');
  std::stringstream ss(t);
  std::string item;
  auto constants = make_ring({});
  while (std::getline(ss, item, ';')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected name=value in '" + item + "'");
    std::string name = item.substr(0, eq);
    name.erase(0, name.find_first_not_of(' '));
    name.erase(name.find_last_not_of(' ') + 1);
    KPoly c = parse_poly<CycloNum>(item.substr(eq + 1), constants, n);
    vals[name] = c.is_zero() ? CycloNum(0) : c.leading_coeff();
  }
  return instantiate(fam, vals);
}

Json recheck(const Report& rep) {
  int good = 0, bad = 0;
  for (const auto& c : rep.reps) {
    Certificate cert = verify(c.point);
    bool same = cert.valid && cert.lambdas == c.point.lambdas;
    (same ? good : bad)++;
  }
  return Json{{"verified", good}, {"failed", bad}};
}

int exit_for(const Report& rep) {
  if (rep.budget_exceeded) return budget;
  if (!rep.diff.empty()) return mismatch;
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Representations of 3-fold type one Deligne-Mostow lattices into PGL(3,C)"};
  app.require_subcommand(1);

  Common solve_opt;
  auto* solve = app.add_subcommand("solve", "solve the case systems and reconstruct exact points");
  add_common(solve, solve_opt);

  Common cls_opt;
  std::string expect;
  bool recheck_flag = false;
  auto* cls = app.add_subcommand("classify", "full pipeline with table aggregation");
  add_common(cls, cls_opt);
  cls->add_option("--expect", expect, "expectations file, or 'bundled' for the shipped tables");
  cls->add_flag("--recheck", recheck_flag, "re-verify every certificate from scratch");
  std::vector<std::string> cusp_word_text;
  cls->add_option("--cusp-word", cusp_word_text,
                  "cusp centraliser generator, then parabolic generators (default: published words, (3,6) only)");

  Common dims_opt;
  auto* dims = app.add_subcommand("dims", "dimension of every case system");
  add_common(dims, dims_opt, false);

  Common ver_opt;
  std::string ver_report, ver_case, ver_values;
  int ver_n = 9;
  auto* ver = app.add_subcommand("verify", "exact relator check of a point or of every point in a report");
  add_common(ver, ver_opt, false);
  ver->add_option("--report", ver_report, "report written by classify");
  ver->add_option("--case", ver_case, "case label of the point");
  ver->add_option("--values", ver_values, "parameter values separated by ';' or ',', e.g. 'r1=0; r2=1; x=z^3'");
  ver->add_option("--conductor", ver_n, "z stands for zeta_n")->capture_default_str();

  std::string cmp_report, cmp_expect;
  std::string cmp_out;
  auto* cmp = app.add_subcommand("compare", "compare a report's aggregate row with expectations");
  cmp->add_option("--report", cmp_report, "report written by classify")->required();
  cmp->add_option("--expect", cmp_expect, "expectations file")->required();
  cmp->add_option("--out", cmp_out, "write JSON here instead of stdout");

  Common we_opt;
  std::string we_word, we_case, we_values;
  int we_n = 9;
  auto* we = app.add_subcommand("word-eval", "evaluate a word in J, R at a point");
  add_common(we, we_opt, false);
  we->add_option("--word", we_word, "word, e.g. '(R J)^12' or 'J R J2'")->required();
  we->add_option("--case", we_case, "case label of the point")->required();
  we->add_option("--values", we_values, "parameter values")->required();
  we->add_option("--conductor", we_n, "z stands for zeta_n")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? ok : usage;
  }

  try {
    if (*solve) {
      RunConfig cfg = config_of(solve_opt);
      if (cfg.cases.empty()) cfg.cases = all_cases(cfg.p);
      Presentation pres = make_presentation(cfg.p, cfg.k);
      Json cases = Json::array();
      bool over = false;
      for (const auto& gc : cfg.cases) {
        log_line("solving " + gc.label());
        SolveOutcome so = solve_case(pres, gc, cfg.solver);
        over = over || so.budget_exceeded;
        Json j = to_json(so);
        Json pts = Json::array();
        for (const auto& sp : so.points)
          if (sp.certified) pts.push_back(to_json(*sp.exact));
        j["points"] = pts;
        cases.push_back(j);
      }
      emit(Json{{"schema", 1}, {"p", cfg.p}, {"k", cfg.k}, {"cases", cases}}, solve_opt.out);
      return over ? budget : ok;
    }
    if (*cls) {
      RunConfig cfg = config_of(cls_opt);
      if (!cusp_word_text.empty()) {
        CuspWords cw{Word(cfg.p), Word(cfg.p), Word::parse(cusp_word_text[0], cfg.p), {}};
        for (std::size_t i = 1; i < cusp_word_text.size(); ++i) cw.parabolic_gens.push_back(Word::parse(cusp_word_text[i], cfg.p));
        cfg.cusp_words = cw;
      }
      Report rep = run(cfg, log_line);
      if (!expect.empty()) {
        std::string path = expect == "bundled" ? expectations_path(rep.aggregate.compact) : expect;
        rep.diff = compare(rep.aggregate, load_expectations(path));
        for (const auto& d : rep.diff) log_line("mismatch " + d.row + " [" + d.column + "] expected " + d.expected + ", got " + d.actual);
      }
      Json j = to_json(rep);
      if (recheck_flag) {
        j["recheck"] = recheck(rep);
        if (j["recheck"]["failed"].get<int>() > 0) {
          emit(j, cls_opt.out);
          return internal;
        }
      }
      emit(j, cls_opt.out);
      return exit_for(rep);
    }
    if (*dims) {
      RunConfig cfg = config_of(dims_opt);
      Json cases = Json::array();
      bool over = false;
      for (const auto& cd : dimension_scan(cfg.p, cfg.k, cfg.solver)) {
        over = over || cd.budget_exceeded;
        cases.push_back({{"case", cd.gcase.label()},
                         {"dimension", cd.dimension},
                         {"system_dimensions", cd.system_dimensions},
                         {"budget_exceeded", cd.budget_exceeded}});
      }
      emit(Json{{"schema", 1}, {"p", cfg.p}, {"k", cfg.k}, {"cases", cases}}, dims_opt.out);
      return over ? budget : ok;
    }
    if (*ver) {
      if (!ver_report.empty()) {
        Json rep = read_json(ver_report);
        Json results = Json::array();
        bool all = true;
        for (const auto& r : rep.at("representations")) {
          auto mat = [](const Json& m) {
            KMatrix out(3, 3, CycloNum(0));
            for (std::size_t i = 0; i < 3; ++i)
              for (std::size_t j = 0; j < 3; ++j) out(i, j) = cyclo_from_json(m.at(i).at(j));
            return out;
          };
          Certificate c = verify(make_presentation(r.at("p").get<int>(), r.at("k").get<int>()), mat(r.at("J")), mat(r.at("R")));
          all = all && c.valid;
          Json cj = to_json(c);
          cj["case"] = r.at("case");
          results.push_back(cj);
        }
        emit(Json{{"schema", 1}, {"all_valid", all}, {"certificates", results}}, ver_opt.out);
        return all ? ok : mismatch;
      }
      if (ver_case.empty() || ver_values.empty()) throw std::invalid_argument("verify needs --report or --case and --values");
      RunConfig cfg = config_of(ver_opt);
      auto gcs = parse_cases({ver_case}, cfg.p);
      if (gcs.size() != 1) throw std::invalid_argument("verify: --case must name a single sub-case");
      Family fam = family(gcs[0], cfg.p, cfg.k);
      Certificate c;
      try {
        c = verify(point_from_values(fam, ver_values, ver_n));
      } catch (const NotARepresentation& e) {
        c.failing_relator = e.relator();
        c.message = e.what();
      }
      emit(Json{{"schema", 1}, {"case", gcs[0].label()}, {"certificate", to_json(c)}}, ver_opt.out);
      return c.valid ? ok : mismatch;
    }
    if (*cmp) {
      Json rep = read_json(cmp_report);
      AggregateRow row = aggregate_from_json(rep.at("aggregate"));
      auto diff = compare(row, load_expectations(cmp_expect));
      Json d = Json::array();
      for (const auto& e : diff) d.push_back({{"row", e.row}, {"column", e.column}, {"expected", e.expected}, {"actual", e.actual}});
      emit(Json{{"schema", 1}, {"diff", d}}, cmp_out);
      return diff.empty() ? ok : mismatch;
    }
    if (*we) {
      RunConfig cfg = config_of(we_opt);
      auto gcs = parse_cases({we_case}, cfg.p);
      if (gcs.size() != 1) throw std::invalid_argument("word-eval: --case must name a single sub-case");
      Family fam = family(gcs[0], cfg.p, cfg.k);
      RepPoint pt;
      try {
        pt = point_from_values(fam, we_values, we_n);
      } catch (const NotARepresentation& e) {
        log_line(std::string("warning: ") + e.what());
        throw;
      }
      Word w = Word::parse(we_word, cfg.p);
      int n = pt.conductor();
      KMatrix m = evaluate_word(w, embed_matrix(pt.J, n), embed_matrix(pt.R, n));
      Json j{{"schema", 1}, {"word", w.to_string()}, {"matrix", to_json(m)}};
      if (auto s = m.scalar_value()) j["scalar"] = to_json(*s);
      j["class"] = to_json(classify_element(m, 2 * std::lcm(std::lcm(3, cfg.p), 2 * cfg.k)));
      emit(j, we_opt.out);
      return ok;
    }
  } catch (const ReportError& e) {
    log_line(std::string("error: ") + e.what());
    return usage;
  } catch (const std::invalid_argument& e) {
    log_line(std::string("error: ") + e.what());
    return usage;
  } catch (const std::exception& e) {
    log_line(std::string("internal error: ") + e.what());
    return internal;
  }
  return ok;
}
