#pragma once

// End-to-end run for one lattice, table aggregation, JSON output and
// comparison with table expectations.

#include "dmrep/invariants.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#ifndef DMREP_DATA_DIR
#define DMREP_DATA_DIR "data"
#endif

namespace dmrep {

using Json = nlohmann::ordered_json;

class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int p = 3, k = 6;
  std::vector<GeneratorCase> cases;  ///< empty: all cases of p
  SolverOptions solver;
  std::optional<CuspWords> cusp_words;  ///< empty: default_cusp_words(p, k)
};

struct SubRow {
  int conductor = 1;
  std::string hermitian;  ///< "(2,1)", "(3,0)", "Degenerate", "None"; empty for compact rows
  int irreducible = 0;
  int reducible_nondegenerate = 0;
  int reducible_degenerate = 0;
  int factors = 0;         ///< centraliser generator elliptic or scalar
  int factors_scalar = 0;  ///< centraliser generator scalar
};

struct AggregateRow {
  int p = 3, k = 6;
  bool compact = true;
  int total = 0;
  int orbits = 0;
  bool cusp_analysed = false;  ///< Factors column filled
  std::vector<SubRow> subrows;
};

struct DiffEntry {
  std::string row;
  std::string column;
  std::string expected;
  std::string actual;
};

struct Report {
  RunConfig config;
  std::vector<SolveOutcome> outcomes;
  std::vector<ClassifiedRep> reps;
  GaloisOrbits orbits;
  AggregateRow aggregate;
  std::vector<DiffEntry> diff;
  bool budget_exceeded = false;
};

inline std::string field_label(int n) { return n == 1 ? "Q" : "Q(zeta_" + std::to_string(n) + ")"; }

/// Cases named by kind ("ReflDegenerate": all sub-cases) or by full label
/// ("ReflDegenerate/form2", "BothRegular/1,2").
inline std::vector<GeneratorCase> parse_cases(const std::vector<std::string>& names, int p) {
  std::vector<GeneratorCase> out;
  for (const auto& name : names) {
    std::string kind = name.substr(0, name.find('/'));
    auto k = parse_case_kind(kind);
    if (!k) throw std::invalid_argument("unknown case '" + name + "'");
    bool found = false;
    for (const auto& gc : sub_cases(*k, p))
      if (name == kind || gc.label() == name) {
        if (std::find(out.begin(), out.end(), gc) == out.end()) out.push_back(gc);
        found = true;
      }
    if (!found) throw std::invalid_argument("no sub-case '" + name + "' for p = " + std::to_string(p));
  }
  return out;
}

/// Table row over the type-preserving cases; Galois orbits are the counting
/// unit of every column except Total.
inline AggregateRow aggregate(int p, int k, const std::vector<ClassifiedRep>& reps, const GaloisOrbits& orb,
                              bool cusp_analysed) {
  AggregateRow row;
  row.p = p;
  row.k = k;
  row.compact = make_presentation(p, k).compact();
  row.cusp_analysed = !row.compact && cusp_analysed;
  std::set<int> seen;
  std::map<std::pair<int, std::string>, SubRow> rows;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const ClassifiedRep& c = reps[i];
    if (!type_preserving(c.point.gcase.kind)) continue;
    ++row.total;
    int o = orb.orbit_of.at(i);
    if (!seen.insert(o).second) continue;
    ++row.orbits;
    std::string herm = row.compact ? "" : c.hermitian.table_label();
    SubRow& s = rows[{c.field_conductor, herm}];
    s.conductor = c.field_conductor;
    s.hermitian = herm;
    if (c.irreducibility.irreducible) {
      ++s.irreducible;
    } else if (c.degenerate_configuration.value_or(false)) {
      ++s.reducible_degenerate;
    } else {
      ++s.reducible_nondegenerate;
    }
    if (c.cusp) {
      s.factors += c.cusp->factors_elliptic_or_scalar();
      s.factors_scalar += c.cusp->factors_scalar();
    }
  }
  for (auto& [key, s] : rows) row.subrows.push_back(s);
  // largest field first, as in the tables
  std::stable_sort(row.subrows.begin(), row.subrows.end(), [](const SubRow& a, const SubRow& b) {
    return euler_phi(a.conductor) > euler_phi(b.conductor);
  });
  return row;
}

/// Solve every requested case, classify the certified points, aggregate.
/// `log` receives progress lines.
template <class Log>
Report run(const RunConfig& cfg, Log&& log) {
  if (!valid_lattice(cfg.p, cfg.k)) throw PresentationError("run: invalid lattice");
  Report rep;
  rep.config = cfg;
  if (rep.config.cases.empty()) rep.config.cases = all_cases(cfg.p);
  Presentation pres = make_presentation(cfg.p, cfg.k);
  std::vector<RepPoint> pts;
  for (const auto& gc : rep.config.cases) {
    log("solving " + gc.label());
    SolveOutcome so = solve_case(pres, gc, cfg.solver);
    rep.budget_exceeded = rep.budget_exceeded || so.budget_exceeded;
    for (const auto& sp : so.points)
      if (sp.certified) pts.push_back(*sp.exact);
    log("  dimension " + std::to_string(so.dimension) + ", " + std::to_string(so.points.size()) + " points, " +
        std::to_string(so.certified_count()) + " certified");
    rep.outcomes.push_back(std::move(so));
  }
  const auto words = cfg.cusp_words ? cfg.cusp_words : default_cusp_words(cfg.p, cfg.k);
  if (!pres.compact() && !words) log("no cusp words for this lattice; Factors not computed");
  log("classifying " + std::to_string(pts.size()) + " points");
  for (const auto& p : pts) rep.reps.push_back(classify(p, words));
  rep.orbits = galois_orbits(pts);
  for (std::size_t i = 0; i < rep.reps.size(); ++i) rep.reps[i].orbit = rep.orbits.orbit_of[i];
  rep.aggregate = aggregate(cfg.p, cfg.k, rep.reps, rep.orbits, words.has_value());
  return rep;
}

inline Report run(const RunConfig& cfg) {
  return run(cfg, [](const std::string&) {});
}

// ---------------------------------------------------------------------------
// JSON

inline Json to_json(const CycloNum& x) {
  CycloNum c = x.canonical();
  Json coeffs = Json::array();
  for (const auto& q : c.coeffs()) coeffs.push_back(q.get_str());
  return Json{{"conductor", c.conductor()}, {"coeffs", coeffs}, {"text", c.to_string("z")}};
}

inline CycloNum cyclo_from_json(const Json& j) {
  int n = j.at("conductor").get<int>();
  std::vector<Rational> c;
  for (const auto& s : j.at("coeffs")) {
    Rational q(s.get<std::string>());
    q.canonicalize();
    c.push_back(q);
  }
  if (static_cast<int>(c.size()) != euler_phi(n)) throw ReportError("cyclotomic number: wrong coefficient count");
  return CycloNum::from_coeffs(n, c);
}

inline Json to_json(const KMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(to_json(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

inline Json to_json(const Certificate& c) {
  Json l = Json::array();
  for (const auto& x : c.lambdas) l.push_back(to_json(x));
  return Json{{"valid", c.valid}, {"failing_relator", c.failing_relator}, {"message", c.message}, {"lambdas", l}};
}

inline Json to_json(const RepPoint& pt) {
  Json vals = Json::object();
  for (std::size_t i = 0; i < pt.vars.size(); ++i) vals[pt.vars[i]] = to_json(pt.values[i]);
  Json l = Json::array();
  for (const auto& x : pt.lambdas) l.push_back(to_json(x));
  return Json{{"case", pt.gcase.label()}, {"p", pt.p},          {"k", pt.k},
              {"values", vals},         {"J", to_json(pt.J)}, {"R", to_json(pt.R)},
              {"lambdas", l}};
}

inline Json to_json(const ElementClass& e) {
  Json j{{"type", to_string(e.type)}};
  if (e.type == ElementType::elliptic || e.type == ElementType::scalar) j["order"] = e.order;
  if (e.type == ElementType::unipotent) j["jordan_block"] = e.jordan_block;
  if (e.type == ElementType::other) {
    Json cp = Json::array();
    for (const auto& c : e.charpoly) cp.push_back(c.to_string("z"));
    j["charpoly"] = cp;
  }
  return j;
}

inline Json to_json(const ClassifiedRep& c) {
  Json j = to_json(c.point);
  j["field"] = field_label(c.field_conductor);
  j["entry_field"] = field_label(c.entry_conductor);
  j["galois_orbit"] = c.orbit;
  Json h{{"label", c.hermitian.label()}, {"kernel_dimension", c.hermitian.kernel_dimension}};
  if (c.hermitian.H) {
    h["H"] = to_json(*c.hermitian.H);
    h["signature"] = {c.hermitian.sig->pos, c.hermitian.sig->neg, c.hermitian.sig->zero};
    h["eps"] = {c.hermitian.eps_J, c.hermitian.eps_R};
  }
  j["hermitian"] = h;
  j["irreducible"] = c.irreducibility.irreducible;
  j["algebra_dimension"] = c.irreducibility.algebra_dimension;
  if (c.degenerate_configuration) {
    j["degenerate_configuration"] = *c.degenerate_configuration;
  } else {
    j["degenerate_configuration"] = "undetermined";
  }
  Json lift{{"liftable", c.lift.liftable}, {"status", c.lift.status}, {"exhaustive", c.lift.search_exhaustive},
            {"bound", c.lift.bound}};
  if (c.lift.liftable) {
    lift["kappa"] = to_json(*c.lift.kappa);
    lift["tau"] = to_json(*c.lift.tau);
  }
  j["lift"] = lift;
  j["integrality"] = {{"J", c.integral.J}, {"R", c.integral.R}, {"R_denominator", c.integral.R_denominator.get_str()}};
  if (c.cusp) {
    Json par = Json::array();
    for (const auto& e : c.cusp->parabolic) par.push_back(to_json(e));
    j["cusp"] = Json{{"centraliser", to_json(c.cusp->center)},
                     {"parabolic_generators", par},
                     {"factors", c.cusp->factors_elliptic_or_scalar()},
                     {"factors_scalar_only", c.cusp->factors_scalar()}};
  }
  return j;
}

inline Json to_json(const SolveOutcome& so) {
  Json sys = Json::array();
  for (const auto& s : so.systems) {
    Json js{{"label", s.label}, {"dimension", s.dimension}, {"over_rationals", s.over_rationals}, {"gb_size", s.gb_size},
            {"budget_exceeded", s.budget_exceeded}};
    if (s.standard_monomials) js["standard_monomials"] = *s.standard_monomials;
    if (!s.basis.empty()) js["basis"] = s.basis;
    sys.push_back(js);
  }
  Json j{{"case", so.gcase.label()},
         {"dimension", so.dimension},
         {"vars", so.vars},
         {"systems", sys},
         {"distinct_solution_count", so.distinct_solution_count},
         {"recheck_count", so.recheck_count},
         {"count_stable", so.count_stable},
         {"separated", so.separated},
         {"certified", so.certified_count()},
         {"budget_exceeded", so.budget_exceeded}};
  Json un = Json::array();
  for (const auto& sp : so.points)
    if (!sp.certified) {
      Json coords = Json::array();
      for (const auto& z : sp.numeric) coords.push_back(z.to_string(20));
      un.push_back(coords);
    }
  if (!un.empty()) j["uncertified_numeric"] = un;
  return j;
}

inline std::string reducible_text(int m, int n) {
  if (m == 0 && n == 0) return "0";
  return "(" + std::to_string(m) + "," + std::to_string(n) + ")";
}

inline Json to_json(const AggregateRow& r) {
  Json subs = Json::array();
  for (const auto& s : r.subrows) {
    Json j{{"field", field_label(s.conductor)},
           {"conductor", s.conductor},
           {"irreducible", s.irreducible},
           {"reducible", reducible_text(s.reducible_nondegenerate, s.reducible_degenerate)}};
    if (!r.compact) j["hermitian"] = s.hermitian;
    if (r.cusp_analysed) {
      j["factors"] = s.factors;
      j["factors_scalar_only"] = s.factors_scalar;
    }
    subs.push_back(j);
  }
  return Json{{"p", r.p}, {"k", r.k}, {"compact", r.compact}, {"total", r.total}, {"galois_orbits", r.orbits},
              {"subrows", subs}};
}

inline Json to_json(const Report& rep) {
  Json cases = Json::array();
  for (const auto& gc : rep.config.cases) cases.push_back(gc.label());
  Json cfg{{"p", rep.config.p},
           {"k", rep.config.k},
           {"cases", cases},
           {"precision", rep.config.solver.precision},
           {"denom_bound", rep.config.solver.denom_bound.get_str()},
           {"conductors", rep.config.solver.conductors},
           {"budget", rep.config.solver.budget}};
  if (rep.config.cusp_words) {
    Json cw{{"centraliser", rep.config.cusp_words->center.to_string()}, {"parabolic", Json::array()}};
    for (const auto& w : rep.config.cusp_words->parabolic_gens) cw["parabolic"].push_back(w.to_string());
    cfg["cusp_words"] = cw;
  }
  Json outs = Json::array();
  for (const auto& o : rep.outcomes) outs.push_back(to_json(o));
  Json reps = Json::array();
  for (const auto& c : rep.reps) reps.push_back(to_json(c));
  Json viol = Json::array();
  for (auto [i, k] : rep.orbits.closure_violations) viol.push_back({{"point", i}, {"sigma", k}});
  Json j{{"schema", 1},
         {"config", cfg},
         {"cases", outs},
         {"representations", reps},
         {"galois", {{"conductor", rep.orbits.conductor}, {"orbits", rep.orbits.orbits}, {"closure_violations", viol}}},
         {"aggregate", to_json(rep.aggregate)}};
  if (!rep.diff.empty()) {
    Json d = Json::array();
    for (const auto& e : rep.diff)
      d.push_back({{"row", e.row}, {"column", e.column}, {"expected", e.expected}, {"actual", e.actual}});
    j["diff"] = d;
  }
  return j;
}

/// Aggregate row back from its JSON form.
inline AggregateRow aggregate_from_json(const Json& j) {
  AggregateRow r;
  r.p = j.at("p").get<int>();
  r.k = j.at("k").get<int>();
  r.compact = j.value("compact", make_presentation(r.p, r.k).compact());
  r.total = j.at("total").get<int>();
  r.orbits = j.at("galois_orbits").get<int>();
  for (const auto& s : j.at("subrows")) {
    SubRow sr;
    sr.conductor = s.at("conductor").get<int>();
    sr.hermitian = s.value("hermitian", "");
    sr.irreducible = s.at("irreducible").get<int>();
    std::string red = s.at("reducible").get<std::string>();
    if (red != "0" && std::sscanf(red.c_str(), "(%d,%d)", &sr.reducible_nondegenerate, &sr.reducible_degenerate) != 2)
      throw ReportError("bad Reducible cell '" + red + "'");
    sr.factors = s.value("factors", 0);
    r.cusp_analysed = r.cusp_analysed || (!r.compact && s.contains("factors"));
    r.subrows.push_back(sr);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Expectations

/// Expectation file: {"schema": 1, "table": ..., "rows": [row, ...]} with
/// rows in the aggregate JSON form (the table cells as written, plus the
/// canonical conductor of each Q-extension).
inline std::vector<AggregateRow> load_expectations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ReportError("cannot open expectations file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ReportError("cannot parse expectations file " + path + ": " + e.what());
  }
  std::vector<AggregateRow> out;
  try {
    for (const auto& r : j.at("rows")) out.push_back(aggregate_from_json(r));
  } catch (const nlohmann::json::exception& e) {
    throw ReportError("malformed expectations file " + path + ": " + e.what());
  }
  return out;
}

/// Column-by-column comparison of an aggregate row with the expected row of
/// the same lattice. Sub-rows match on (conductor, Hermitian label); an
/// expected row without Hermitian labels is compared per field.
inline std::vector<DiffEntry> compare(const AggregateRow& actual, const std::vector<AggregateRow>& expected) {
  std::vector<DiffEntry> d;
  const std::string name = "(" + std::to_string(actual.p) + "," + std::to_string(actual.k) + ")";
  const AggregateRow* exp = nullptr;
  for (const auto& r : expected)
    if (r.p == actual.p && r.k == actual.k) exp = &r;
  if (!exp) {
    d.push_back({name, "row", "present", "missing from expectations"});
    return d;
  }
  auto cmp = [&](const std::string& row, const std::string& col, const std::string& e, const std::string& a) {
    if (e != a) d.push_back({row, col, e, a});
  };
  cmp(name, "Total", std::to_string(exp->total), std::to_string(actual.total));
  cmp(name, "Galois Orbits", std::to_string(exp->orbits), std::to_string(actual.orbits));
  const bool by_form = std::any_of(exp->subrows.begin(), exp->subrows.end(), [](const SubRow& s) { return !s.hermitian.empty(); });
  auto key_rows = [&](const std::vector<SubRow>& rows) {
    std::map<std::pair<int, std::string>, SubRow> m;
    for (const auto& s : rows) {
      auto key = std::make_pair(s.conductor, by_form ? s.hermitian : std::string());
      SubRow& t = m[key];
      t.conductor = s.conductor;
      t.hermitian = key.second;
      t.irreducible += s.irreducible;
      t.reducible_nondegenerate += s.reducible_nondegenerate;
      t.reducible_degenerate += s.reducible_degenerate;
      t.factors += s.factors;
    }
    return m;
  };
  auto em = key_rows(exp->subrows), am = key_rows(actual.subrows);
  std::set<std::pair<int, std::string>> keys;
  for (auto& [k, v] : em) keys.insert(k);
  for (auto& [k, v] : am) keys.insert(k);
  for (const auto& key : keys) {
    std::string row = name + " " + field_label(key.first) + (key.second.empty() ? "" : " " + key.second);
    auto e = em.find(key), a = am.find(key);
    if (e == em.end()) {
      d.push_back({row, "Q-extension", "absent", "present"});
      continue;
    }
    if (a == am.end()) {
      d.push_back({row, "Q-extension", "present", "absent"});
      continue;
    }
    cmp(row, "Irreducible", std::to_string(e->second.irreducible), std::to_string(a->second.irreducible));
    cmp(row, "Reducible", reducible_text(e->second.reducible_nondegenerate, e->second.reducible_degenerate),
        reducible_text(a->second.reducible_nondegenerate, a->second.reducible_degenerate));
    if (by_form && exp->cusp_analysed && actual.cusp_analysed) cmp(row, "Factors", std::to_string(e->second.factors), std::to_string(a->second.factors));
  }
  return d;
}

inline std::string expectations_path(bool compact) {
  return std::string(DMREP_DATA_DIR) + (compact ? "/expectations/table1.json" : "/expectations/table2.json");
}

}  // namespace dmrep
