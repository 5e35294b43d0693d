#include "dmrep/repfamily.hpp"

#include "published.hpp"

#include <gtest/gtest.h>

using namespace dmrep;

namespace {

Family refl_regular(int p, int k) { return family({CaseKind::refl_regular, 0, {}}, p, k); }

}  // namespace

TEST(RepFamily, CaseEnumeration) {
  EXPECT_EQ(sub_cases(CaseKind::inverted, 3).size(), 2u);
  EXPECT_EQ(sub_cases(CaseKind::inverted, 5).size(), 12u);
  EXPECT_EQ(sub_cases(CaseKind::both_regular, 3).size(), 1u);
  EXPECT_EQ(sub_cases(CaseKind::both_regular, 6).size(), 10u);
  EXPECT_EQ(sub_cases(CaseKind::refl_degenerate, 4).size(), 2u);
  EXPECT_EQ(parse_case_kind("BothRegular"), std::optional<CaseKind>(CaseKind::both_regular));
  EXPECT_EQ(parse_case_kind("Nope"), std::nullopt);
  EXPECT_EQ((GeneratorCase{CaseKind::inverted, 0, {0, 1, 2}}).label(), "InvertedCase/0,1,2");
}

TEST(RepFamily, PublishedPointsAreRepresentations) {
  Family f = refl_regular(3, 6);
  int i = 0;
  for (auto [r1, r2] : published::alphas()) {
    ++i;
    RepPoint pt = instantiate(f, std::vector<CycloNum>{r1, r2, omega()});
    EXPECT_LE(pt.field_conductor(), 9) << "alpha" << i;
    EXPECT_EQ(pt.lambdas.size(), 4u);
    EXPECT_EQ(pt.lambdas[0], CycloNum(-1));
    EXPECT_EQ(pt.lambdas[1], CycloNum(1)) << "alpha" << i;
  }
}

TEST(RepFamily, PerturbedPointFails) {
  Family f = refl_regular(3, 6);
  try {
    instantiate(f, std::vector<CycloNum>{CycloNum(Rational(1, 1000)), CycloNum(1), omega()});
    FAIL() << "expected NotARepresentation";
  } catch (const NotARepresentation& e) {
    EXPECT_EQ(e.relator(), 3);
    EXPECT_NE(std::string(e.what()).find("(RJ)^12"), std::string::npos);
  }
  EXPECT_THROW(instantiate(f, {CycloNum(0), CycloNum(1), CycloNum(2)}), NotARepresentation);
}

TEST(RepFamily, SymbolicRIsOfOrderP) {
  for (int p = 3; p <= 6; ++p) {
    int k = p == 3 ? 6 : (p == 4 ? 4 : 2);
    Family f = refl_regular(p, k);
    auto ms = relator_matrices(make_presentation(p, k), f);
    EXPECT_TRUE(scalar_equations(ms[1]).empty()) << p;
    EXPECT_TRUE(scalar_equations(ms[0]).empty());
  }
  for (auto [p, k] : all_lattices()) {
    for (auto gc : sub_cases(CaseKind::both_regular, p)) {
      Family f = family(gc, p, k);
      auto ms = relator_matrices(make_presentation(p, k), f);
      EXPECT_TRUE(scalar_equations(ms[1]).empty()) << p << " " << gc.label();
    }
  }
}

TEST(RepFamily, InvertedTemplate) {
  for (auto gc : sub_cases(CaseKind::inverted, 4)) {
    Family f = family(gc, 4, 4);
    KMatrix R = f.R.map([](const KPoly& e) { return e.leading_coeff(); });
    auto s = f.R.map([](const KPoly& e) { return e.is_constant(); });
    for (bool b : s.data()) ASSERT_TRUE(b);
    EXPECT_EQ(R.pow(4), KMatrix::identity(3)) << gc.label();
    auto ms = relator_matrices(make_presentation(4, 4), f);
    EXPECT_TRUE(scalar_equations(ms[0]).empty());
  }
}

TEST(RepFamily, TrivialOnlyWhenThreeDividesK) {
  GeneratorCase t{CaseKind::refl_trivial, 0, {}};
  for (auto [p, k] : all_lattices()) {
    Family f = family(t, p, k);
    bool ok = true;
    try {
      instantiate(f, std::vector<CycloNum>{});
    } catch (const NotARepresentation&) {
      ok = false;
    }
    EXPECT_EQ(ok, k % 3 == 0) << p << "," << k;
  }
}

TEST(RepFamily, SpecializeX) {
  Family f = refl_regular(3, 6);
  Family g = specialize(f, "x", omega());
  EXPECT_EQ(g.vars(), (std::vector<std::string>{"r1", "r2"}));
  EXPECT_TRUE(g.side.empty());
  auto a = published::alphas()[6];
  RepPoint p1 = instantiate(g, std::vector<CycloNum>{a.first, a.second});
  RepPoint p2 = instantiate(f, std::vector<CycloNum>{a.first, a.second, omega()});
  EXPECT_EQ(p1.R, p2.R);
  EXPECT_THROW(specialize(f, "x", CycloNum(1)), std::invalid_argument);
}

TEST(RepFamily, FixedStructureOfAlpha1) {
  Family f = refl_regular(3, 6);
  auto a = published::alphas()[0];
  FixedStructure fs = fixed_structure(instantiate(f, {a.first, a.second, omega()}));
  EXPECT_EQ(fs.j_eigen.size(), 3u);
  EXPECT_TRUE(fs.r_is_reflection);
  ASSERT_EQ(fs.incidence.size(), 3u);
  for (bool b : fs.incidence) EXPECT_FALSE(b);
  // eigenvectors of the standard J
  KMatrix P = standard_J_eigenvectors();
  KMatrix J = standard_J();
  CycloNum w = omega();
  std::vector<CycloNum> ev = {CycloNum(-1), -w * w, -w};
  for (int c = 0; c < 3; ++c) {
    std::vector<CycloNum> v = {P(0, c), P(1, c), P(2, c)};
    auto jv = mat_vec(J, v);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(jv[i], ev[c] * v[i]) << c;
  }
}

TEST(RepFamily, DegenerateFormsHaveCommonEigenvector) {
  for (int form : {1, 2}) {
    Family f = family({CaseKind::refl_degenerate, form, {}}, 3, 6);
    EXPECT_EQ(f.conductor(), 3);
    auto ms = relator_matrices(make_presentation(3, 6), f);
    EXPECT_TRUE(scalar_equations(ms[1]).empty());
  }
}
