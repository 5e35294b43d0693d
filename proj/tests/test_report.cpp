#include "dmrep/report.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

using namespace dmrep;

namespace {

AggregateRow table_row_36() {
  for (const auto& r : load_expectations(expectations_path(false)))
    if (r.p == 3 && r.k == 6) return r;
  throw std::runtime_error("no (3,6) row");
}

std::string write_temp(const std::string& name, const Json& j) {
  std::string path = testing::TempDir() + name;
  std::ofstream(path) << j.dump(2);
  return path;
}

}  // namespace

TEST(Expectations, BundledTablesParse) {
  auto t1 = load_expectations(expectations_path(true));
  auto t2 = load_expectations(expectations_path(false));
  EXPECT_EQ(t1.size(), 5u);
  EXPECT_EQ(t2.size(), 4u);
  for (const auto& r : t1) EXPECT_TRUE(make_presentation(r.p, r.k).compact());
  for (const auto& r : t2) EXPECT_FALSE(make_presentation(r.p, r.k).compact());
  AggregateRow r = table_row_36();
  EXPECT_EQ(r.total, 39);
  EXPECT_EQ(r.orbits, 14);
  ASSERT_EQ(r.subrows.size(), 4u);
  EXPECT_EQ(r.subrows[2].reducible_nondegenerate, 6);
  EXPECT_EQ(r.subrows[2].reducible_degenerate, 4);
}

TEST(Compare, IdenticalRowHasEmptyDiff) {
  AggregateRow r = table_row_36();
  EXPECT_TRUE(compare(r, {r}).empty());
  // JSON round trip
  AggregateRow back = aggregate_from_json(to_json(r));
  EXPECT_TRUE(compare(back, {r}).empty());
}

TEST(Compare, CorruptedTotalIsNamed) {
  AggregateRow r = table_row_36();
  AggregateRow bad = r;
  bad.total = 38;
  auto d = compare(r, {bad});
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].column, "Total");
  EXPECT_EQ(d[0].expected, "38");
  EXPECT_EQ(d[0].actual, "39");
}

TEST(Compare, SubRowColumns) {
  AggregateRow r = table_row_36();
  AggregateRow got = r;
  got.subrows[1].factors = 1;
  got.subrows[2].reducible_degenerate = 3;
  got.subrows.pop_back();
  auto d = compare(got, {r});
  std::set<std::string> cols;
  for (const auto& e : d) cols.insert(e.column);
  EXPECT_EQ(cols, (std::set<std::string>{"Factors", "Reducible", "Q-extension"}));
}

TEST(Compare, FactorsSkippedWithoutCuspWords) {
  AggregateRow r = table_row_36();
  EXPECT_TRUE(r.cusp_analysed);
  AggregateRow got = r;
  got.cusp_analysed = false;
  for (auto& s : got.subrows) s.factors = 0;
  EXPECT_TRUE(compare(got, {r}).empty());
  EXPECT_FALSE(to_json(got)["subrows"][0].contains("factors"));
}

TEST(Compare, CompactRowsMatchPerField) {
  AggregateRow exp;
  exp.p = 5;
  exp.k = 2;
  exp.total = 12;
  exp.orbits = 2;
  exp.subrows = {SubRow{15, "", 1, 0, 0, 0, 0}, SubRow{5, "", 1, 0, 0, 0, 0}};
  AggregateRow got = exp;
  got.subrows = {SubRow{15, "", 1, 0, 0, 0, 0}, SubRow{5, "", 1, 0, 0, 0, 0}};
  EXPECT_TRUE(compare(got, {exp}).empty());
  got.subrows[1].conductor = 10;
  EXPECT_FALSE(compare(got, {exp}).empty());
}

TEST(Expectations, Errors) {
  EXPECT_THROW(load_expectations("/nonexistent/table.json"), ReportError);
  std::string path = testing::TempDir() + "broken.json";
  std::ofstream(path) << "{ not json";
  EXPECT_THROW(load_expectations(path), ReportError);
  std::string bad = write_temp("badcell.json", Json{{"rows", {{{"p", 3}, {"k", 6}, {"total", 1}, {"galois_orbits", 1},
                                                              {"subrows", {{{"conductor", 1}, {"irreducible", 0}, {"reducible", "x"}}}}}}}});
  EXPECT_THROW(load_expectations(bad), ReportError);
}

TEST(Json, CycloRoundTrip) {
  CycloNum x = CycloNum::zeta(9, 2).scaled(Rational(3, 7)) - CycloNum(Rational(1, 2));
  Json j = to_json(x);
  EXPECT_EQ(j["conductor"], 9);
  EXPECT_EQ(cyclo_from_json(j), x);
  EXPECT_EQ(cyclo_from_json(to_json(omega().embed(9))).conductor(), 3);
}

TEST(Cases, Parse) {
  EXPECT_EQ(parse_cases({"ReflDegenerate"}, 3).size(), 2u);
  auto one = parse_cases({"ReflDegenerate/form2", "ReflDegenerate/form2"}, 3);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].form, 2);
  EXPECT_EQ(parse_cases({"BothRegular/1,2"}, 4).size(), 1u);
  EXPECT_THROW(parse_cases({"Bogus"}, 3), std::invalid_argument);
  EXPECT_THROW(parse_cases({"BothRegular/1,5"}, 4), std::invalid_argument);
}

TEST(Run, InvertedOnlyIsEmpty) {
  RunConfig cfg;
  cfg.cases = parse_cases({"InvertedCase"}, 3);
  Report rep = run(cfg);
  EXPECT_TRUE(rep.reps.empty());
  for (const auto& o : rep.outcomes) EXPECT_EQ(o.dimension, -1);
  EXPECT_EQ(rep.aggregate.total, 0);
  Json j = to_json(rep);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j.dump(), to_json(run(cfg)).dump());
}

TEST(Run, InvalidLattice) {
  RunConfig cfg;
  cfg.p = 3;
  cfg.k = 3;
  EXPECT_THROW(run(cfg), PresentationError);
}
