#include "dmrep/poly.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dmrep;

namespace {

using QPoly = MultiPoly<Rational>;
using KPoly = MultiPoly<CycloNum>;

QPoly q(const std::string& s, const RingPtr& r) { return parse_poly<Rational>(s, r); }

std::vector<QPoly> qs(std::initializer_list<const char*> ss, const RingPtr& r) {
  std::vector<QPoly> out;
  for (const char* s : ss) out.push_back(q(s, r));
  return out;
}

QPoly random_poly(std::mt19937& rng, const RingPtr& r, int terms, int maxdeg) {
  std::uniform_int_distribution<int> coef(-3, 3), ex(0, maxdeg);
  std::vector<Term<Rational>> ts;
  for (int i = 0; i < terms; ++i) {
    Monomial m;
    for (std::size_t v = 0; v < r->nvars(); ++v) {
      m.e[v] = static_cast<std::uint16_t>(ex(rng) / 2);
      m.deg += m.e[v];
    }
    int c = coef(rng);
    if (c) ts.push_back({m, Rational(c)});
  }
  return QPoly(r, ts);
}

}  // namespace

TEST(Poly, ParseAndPrintRoundTrip) {
  auto r = make_ring({"x", "y"});
  QPoly f = q("x^2*y - 3/2*y + 1", r);
  EXPECT_EQ(f.to_string(), "x^2*y - 3/2*y + 1");
  EXPECT_EQ(q(f.to_string(), r), f);
  EXPECT_EQ(q("(x+y)^2", r), q("x^2 + 2*x*y + y^2", r));
  EXPECT_THROW(q("x + w", r), ParseError);
  EXPECT_THROW(q("x +", r), ParseError);
  EXPECT_THROW(q("z*x", r), ParseError);
}

TEST(Poly, CyclotomicCoefficientsParse) {
  auto r = make_ring({"r2"});
  KPoly f = parse_poly<CycloNum>("8*r2^3 + 6*(2*z + 1 - 3)*r2^2", r, 3);
  EXPECT_EQ(f.leading_coeff(), CycloNum(8));
  EXPECT_EQ(f.terms()[1].c, (i_sqrt3() - CycloNum(3)).scaled(6));
  EXPECT_EQ(parse_poly<CycloNum>(f.to_string(), r, 3), f);
}

TEST(Poly, MonomialOrders) {
  auto dr = make_ring({"x", "y", "z2"});
  auto lx = make_ring({"x", "y", "z2"}, OrderKind::lex);
  Monomial a = Monomial::var(0) * Monomial::var(2, 2);  // x z^2
  Monomial b = Monomial::var(1, 2);                     // y^2
  EXPECT_GT(dr->compare(a, b), 0);                      // degree 3 > 2
  EXPECT_GT(lx->compare(a, b), 0);
  Monomial c = Monomial::var(0) * Monomial::var(2);  // x z
  Monomial d = Monomial::var(1, 2);                  // y^2
  EXPECT_LT(dr->compare(c, d), 0);                   // revlex: z is penalised
  auto el = make_ring({"x", "y", "z2"}, OrderKind::elimination, 1);
  EXPECT_GT(el->compare(Monomial::var(0), Monomial::var(1, 5)), 0);
}

TEST(Poly, NormalFormExamples) {
  auto r = make_ring({"x", "y"});
  auto g = q("x^2 + x + 1", r);
  EXPECT_TRUE(normal_form(g, {g}).is_zero());
  EXPECT_EQ(normal_form(q("x^3", r), {g}), q("1", r));
  EXPECT_TRUE(normal_form(q("x*y", r), {q("x", r)}).is_zero());
  auto other = make_ring({"u"});
  EXPECT_THROW(normal_form(q("x", r), {parse_poly<Rational>("u", other)}), RingMismatch);
}

TEST(Poly, BuchbergerExamples) {
  auto r = make_ring({"x"});
  auto gb = buchberger(qs({"x - 1", "x^2 + x + 1"}, r));
  EXPECT_TRUE(gb.is_unit());
  auto gb2 = buchberger(qs({"x^2 + x + 1"}, r));
  ASSERT_EQ(gb2.basis.size(), 1u);
  EXPECT_EQ(gb2.basis[0], q("x^2 + x + 1", r));
  auto gb3 = buchberger(qs({"2*x^2 + 2*x + 2"}, r));
  EXPECT_EQ(gb3.basis[0], q("x^2 + x + 1", r));
}

TEST(Poly, BuchbergerOverCyclotomicField) {
  auto r = make_ring({"x", "y"});
  std::vector<KPoly> gens{parse_poly<CycloNum>("x^2 - z*y", r, 3), parse_poly<CycloNum>("y^2 - x", r, 3)};
  auto gb = buchberger(gens);
  EXPECT_TRUE(is_groebner_basis(gb.basis));
  EXPECT_TRUE(is_reduced_basis(gb.basis));
  for (const auto& g : gens) EXPECT_TRUE(normal_form(g, gb.basis).is_zero());
}

TEST(Poly, TrivialityAndDimension) {
  auto r1 = make_ring({"x"});
  EXPECT_TRUE(is_trivial(Ideal<Rational>(r1, qs({"x - 1", "x^2 + x + 1"}, r1))));
  EXPECT_FALSE(is_trivial(Ideal<Rational>(r1, qs({"x^2 + x + 1"}, r1))));
  EXPECT_FALSE(is_trivial(Ideal<Rational>(r1, {QPoly(r1)})));
  EXPECT_EQ(hilbert_dimension(Ideal<Rational>(r1, qs({"x^2 + x + 1"}, r1))), 0);
  EXPECT_EQ(hilbert_dimension(Ideal<Rational>(r1, qs({"x - 1", "x^2 + x + 1"}, r1))), -1);
  auto r2 = make_ring({"x", "y"});
  EXPECT_EQ(hilbert_dimension(Ideal<Rational>(r2, qs({"x*y"}, r2))), 1);
  EXPECT_EQ(hilbert_dimension(Ideal<Rational>(r2, {QPoly(r2)})), 2);
  auto r3 = make_ring({"x", "y", "w"});
  EXPECT_EQ(hilbert_dimension(Ideal<Rational>(r3, qs({"x*y", "x*w"}, r3))), 2);
}

TEST(Poly, EliminationExamples) {
  auto r = make_ring({"x", "y"});
  auto e1 = eliminate(Ideal<Rational>(r, qs({"x - y"}, r)), {"y"});
  ASSERT_EQ(e1.generators().size(), 1u);
  EXPECT_TRUE(e1.generators()[0].is_zero());
  auto e2 = eliminate(Ideal<Rational>(r, qs({"x^2 - y", "x - 1"}, r)), {"y"});
  ASSERT_EQ(e2.generators().size(), 1u);
  EXPECT_EQ(e2.generators()[0], q("y - 1", r));
  auto e3 = eliminate(Ideal<Rational>(r, qs({"x^2 - 2", "y - x^3"}, r)), {"y"});
  EXPECT_EQ(e3.generators()[0], q("y^2 - 8", r));
}

TEST(Poly, StandardMonomials) {
  auto r1 = make_ring({"x"});
  auto sm = standard_monomials(Ideal<Rational>(r1, qs({"x^2 + x + 1"}, r1)));
  ASSERT_TRUE(sm.has_value());
  ASSERT_EQ(sm->size(), 2u);
  EXPECT_TRUE((*sm)[0].is_one());
  auto r2 = make_ring({"x", "y"});
  auto sm2 = standard_monomials(Ideal<Rational>(r2, qs({"x", "y"}, r2)));
  ASSERT_TRUE(sm2.has_value());
  EXPECT_EQ(sm2->size(), 1u);
  EXPECT_FALSE(standard_monomials(Ideal<Rational>(r2, qs({"x*y"}, r2))).has_value());
}

TEST(Poly, MinimalPolynomialOfVariable) {
  auto r = make_ring({"x", "y"});
  Ideal<Rational> I(r, qs({"x^2 - 2", "y^2 - 3"}, r));
  const auto& gb = I.groebner();
  auto mp = minimal_polynomial(q("x + y", r), gb);
  // (x+y) = sqrt2 + sqrt3 has minimal polynomial t^4 - 10 t^2 + 1
  std::vector<Rational> expect{1, 0, -10, 0, 1};
  EXPECT_EQ(mp, expect);
  auto my = minimal_polynomial(q("y", r), gb);
  EXPECT_EQ(my, (std::vector<Rational>{-3, 0, 1}));
}

TEST(Poly, UnivariateHelpers) {
  std::vector<Rational> f{1, 2, 1};  // (1+t)^2
  EXPECT_EQ(squarefree_part(f), (std::vector<Rational>{1, 1}));
  auto [qq, rr] = udivmod<Rational>({-1, 0, 0, 1}, {-1, 1});
  EXPECT_EQ(qq, (std::vector<Rational>{1, 1, 1}));
  EXPECT_TRUE(rr.empty());
}

TEST(Poly, BudgetIsEnforced) {
  auto r = make_ring({"x", "y", "w"});
  GroebnerOptions opt;
  opt.budget = 3;
  EXPECT_THROW(buchberger(qs({"x^2 + y*w - 1", "x*y - w^2", "y^2 - x*w + 2"}, r), r, opt), BudgetExceeded);
}

// property: Buchberger criterion and ideal membership checked post hoc
TEST(PolyProperty, GroebnerCertification) {
  std::mt19937 rng(23);
  auto r = make_ring({"x", "y", "w"});
  for (int i = 0; i < 20; ++i) {
    std::vector<QPoly> gens;
    for (int j = 0; j < 3; ++j) gens.push_back(random_poly(rng, r, 4, 4));
    gens.erase(std::remove_if(gens.begin(), gens.end(), [](const QPoly& p) { return p.is_zero(); }), gens.end());
    if (gens.empty()) continue;
    auto gb = buchberger(gens, r);
    EXPECT_TRUE(is_groebner_basis(gb.basis));
    EXPECT_TRUE(is_reduced_basis(gb.basis));
    for (const auto& g : gens) EXPECT_TRUE(normal_form(g, gb.basis).is_zero());
  }
}

TEST(PolyProperty, ReducedBasisUniqueUnderShuffles) {
  std::mt19937 rng(29);
  auto r = make_ring({"x", "y", "w"});
  for (int i = 0; i < 10; ++i) {
    std::vector<QPoly> gens;
    for (int j = 0; j < 3; ++j) {
      auto p = random_poly(rng, r, 4, 4);
      if (!p.is_zero()) gens.push_back(p);
    }
    if (gens.empty()) continue;
    auto a = buchberger(gens, r).basis;
    std::shuffle(gens.begin(), gens.end(), rng);
    for (auto& g : gens) g = g.scaled(Rational(-7, 2));
    auto b = buchberger(gens, r).basis;
    EXPECT_EQ(a, b);
  }
}

TEST(PolyProperty, NormalFormIsLinear) {
  std::mt19937 rng(31);
  auto r = make_ring({"x", "y"});
  auto gb = buchberger(qs({"x^2 - y^3 + 1", "x*y - 2"}, r)).basis;
  for (int i = 0; i < 20; ++i) {
    auto f = random_poly(rng, r, 5, 6), g = random_poly(rng, r, 5, 6);
    EXPECT_EQ(normal_form(f + g, gb), normal_form(normal_form(f, gb) + normal_form(g, gb), gb));
  }
}

TEST(PolyProperty, DimensionIsOrderIndependent) {
  std::mt19937 rng(37);
  auto dr = make_ring({"x", "y", "w"});
  auto lx = make_ring({"x", "y", "w"}, OrderKind::lex);
  int tested = 0;
  while (tested < 20) {
    std::vector<QPoly> gens;
    int ngens = 1 + tested % 3;
    for (int j = 0; j < ngens; ++j) {
      auto p = random_poly(rng, dr, 3, 3);
      if (!p.is_zero()) gens.push_back(p);
    }
    if (gens.empty()) continue;
    std::vector<QPoly> lgens;
    for (const auto& g : gens) lgens.push_back(g.in_ring(lx));
    int d1 = dimension_from_basis(buchberger(gens, dr));
    int d2 = dimension_from_basis(buchberger(lgens, lx));
    EXPECT_EQ(d1, d2);
    ++tested;
  }
}
