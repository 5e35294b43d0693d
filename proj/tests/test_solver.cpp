#include "dmrep/solver.hpp"

#include "published.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace dmrep;

namespace {

// a + b i sqrt3
CycloNum is3(Rational a, Rational b) {
  a.canonicalize();
  b.canonicalize();
  return (CycloNum(a) + i_sqrt3().scaled(b)).canonical();
}

CycloNum q(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return CycloNum(r);
}

// (r1, r2, s1, s2, s3) of the published both-regular (3,6) list
std::vector<std::vector<CycloNum>> both_regular_published() {
  CycloNum w = omega(), wb = conj(omega());
  auto s = [](long a, long b, long c, long d) { return is3(Rational(a, b), Rational(c, d)); };
  return {
      {q(0, 1), q(-1, 1), q(-1, 1), q(-1, 1), q(1, 1)},
      {q(1, 1), q(1, 1), q(0, 1), q(0, 1), q(-1, 1)},
      {q(0, 1), -w, w, q(-1, 1), wb},
      {q(0, 1), q(0, 1), q(0, 1), w, q(0, 1)},
      {s(6, 7, 4, 7), s(-4, 7, 2, 7), s(-4, 7, 2, 7), s(-11, 14, -5, 14), s(1, 7, 3, 7)},
      {s(4, 7, -2, 7), s(1, 7, 3, 7), s(-6, 7, -4, 7), s(-3, 14, 5, 14), s(-4, 7, 2, 7)},
      {w, wb, q(0, 1), q(0, 1), -w},
      {s(3, 7, -5, 7), s(-1, 7, -3, 7), s(-1, 7, -3, 7), s(-11, 14, -5, 14), s(4, 7, -2, 7)},
      {s(-9, 7, 1, 7), s(5, 7, 1, 7), s(5, 7, 1, 7), s(-11, 14, -5, 14), s(-5, 7, -1, 7)},
      {s(1, 7, 3, 7), s(4, 7, -2, 7), s(-3, 7, 5, 7), s(-3, 14, 5, 14), s(-1, 7, -3, 7)},
      {s(-5, 7, 1, 7), s(-5, 7, 1, 7), s(9, 7, 1, 7), s(-3, 14, -5, 14), s(5, 7, -1, 7)},
  };
}

}  // namespace

TEST(Verify, PublishedAlphasAndPerturbation) {
  Family f = family({CaseKind::refl_regular, 0, {}}, 3, 6);
  for (auto [r1, r2] : published::alphas()) {
    Certificate c = verify(f, {r1, r2, omega()});
    EXPECT_TRUE(c.valid) << c.message;
    EXPECT_EQ(c.relator_scalar, std::vector<bool>(4, true));
  }
  auto [r1, r2] = published::alphas()[7];
  Certificate bad = verify(f, {r1 + q(1, 1000), r2, omega()});
  EXPECT_FALSE(bad.valid);
  EXPECT_GT(bad.failing_relator, 2);
}

TEST(Verify, BothRegularPublishedList) {
  Family f = family({CaseKind::both_regular, 0, {1, 2}}, 3, 6);
  auto sols = both_regular_published();
  for (std::size_t i = 0; i < sols.size(); ++i) {
    Certificate c = verify(f, sols[i]);
    // the third entry verifies with s1 = -omega
    EXPECT_EQ(c.valid, i != 2) << "solution " << i + 1 << ": " << c.message;
  }
  auto fixed = sols[2];
  fixed[2] = -omega();
  EXPECT_TRUE(verify(f, fixed).valid);
}

TEST(Solve, InvertedCaseIsEmpty) {
  Presentation pres = make_presentation(3, 6);
  for (const auto& gc : sub_cases(CaseKind::inverted, 3)) {
    SolveOutcome so = solve_case(pres, gc);
    EXPECT_EQ(so.dimension, -1) << gc.label();
    ASSERT_EQ(so.systems.size(), 1u);
    EXPECT_EQ(so.systems[0].gb_size, 1u);
    EXPECT_TRUE(so.points.empty());
  }
}

TEST(Solve, DegenerateValues) {
  Presentation pres = make_presentation(3, 6);
  std::set<std::string> expect;
  for (const auto& v : {is3(1, Rational(-1, 3)), is3(Rational(1, 2), Rational(-1, 6))}) {
    expect.insert(v.to_string());
    expect.insert(conj(v).canonical().to_string());
  }
  for (const auto& gc : sub_cases(CaseKind::refl_degenerate, 3)) {
    SolveOutcome so = solve_case(pres, gc);
    EXPECT_EQ(so.dimension, 0);
    EXPECT_EQ(so.certified_count(), 4u) << gc.label();
    std::set<std::string> got;
    for (const auto& sp : so.points) got.insert(sp.exact->value("r2")->canonical().to_string());
    EXPECT_EQ(got, expect) << gc.label();
  }
}

TEST(Solve, TrivialCase) {
  SolveOutcome so = solve_case(make_presentation(3, 6), {CaseKind::refl_trivial, 0, {}});
  EXPECT_EQ(so.dimension, 0);
  ASSERT_EQ(so.certified_count(), 1u);
  EXPECT_EQ(so.points[0].exact->R, KMatrix::identity(3));
  // R = Id fails relator (RJ)^{2k} projectively unless 3 | 2k
  SolveOutcome none = solve_case(make_presentation(3, 4), {CaseKind::refl_trivial, 0, {}});
  EXPECT_EQ(none.dimension, -1);
}

TEST(Reconstruct, NumbersOverSmallFields) {
  const mpfr_prec_t prec = 256;
  Integer D = 10000;
  CycloNum x = is3(Rational(6, 7), Rational(4, 7));
  auto r = reconstruct_number(x.to_complex(prec), 3, D, prec);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(*r, x);
  CycloNum y = published::alphas()[9].first;
  auto ry = reconstruct_number(y.to_complex(prec), 9, D, prec);
  ASSERT_TRUE(ry.has_value());
  EXPECT_EQ(*ry, y);
  // not in Q(zeta_3)
  EXPECT_FALSE(reconstruct_number(y.to_complex(prec), 3, D, prec).has_value());
}

TEST(Numeric, ZeroDimensionalEnumeration) {
  auto r = make_ring({"x", "y"});
  std::vector<RatPoly> gens = {parse_poly<Rational>("x^2 - 2", r), parse_poly<Rational>("y^2 - x*y - 1", r)};
  auto gb = buchberger(gens, r);
  auto lo = numeric_solutions(gb, 128, 1), hi = numeric_solutions(gb, 256, 1);
  EXPECT_EQ(lo.points.size(), 4u);
  EXPECT_EQ(hi.points.size(), 4u);
  EXPECT_TRUE(hi.separated);
  for (const auto& p : hi.points) {
    Real res = abs(p[1].re * p[1].re - p[0].re * p[1].re - Real(1.0, 256));
    EXPECT_LT(res.to_double(), 1e-40);
  }
}
