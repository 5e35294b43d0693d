#include "dmrep/presentation.hpp"
#include "dmrep/cyclotomic.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dmrep;

TEST(Presentation, NineLattices) {
  auto l = all_lattices();
  std::vector<std::pair<int, int>> expected = {{3, 4}, {3, 5}, {3, 6}, {4, 3}, {4, 4},
                                               {5, 2}, {5, 3}, {6, 2}, {6, 3}};
  EXPECT_EQ(l, expected);
  EXPECT_THROW(make_presentation(3, 100), PresentationError);
  EXPECT_THROW(make_presentation(7, 2), PresentationError);
  EXPECT_THROW(make_presentation(3, 3), PresentationError);
}

TEST(Presentation, CompactnessMatchesBallTuple) {
  for (auto [p, k] : all_lattices()) {
    bool noncompact = (p == 3 && k == 6) || (p == 4 && k == 4) || (p == 6 && k == 2) || (p == 6 && k == 3);
    EXPECT_EQ(make_presentation(p, k).compact(), !noncompact) << p << "," << k;
  }
  auto t = make_presentation(3, 6).ball_tuple();
  EXPECT_EQ(t[0], Rational(1, 6));
  EXPECT_EQ(t[3], Rational(2, 3));
  EXPECT_EQ(t[4], Rational(5, 6));
}

TEST(Presentation, RelatorsOf36) {
  Presentation pr = make_presentation(3, 6);
  ASSERT_EQ(pr.relators.size(), 4u);
  EXPECT_EQ(pr.relators[0].to_string(), "J3");
  EXPECT_EQ(pr.relators[1].to_string(), "R^3");
  EXPECT_EQ(pr.relators[2].exponent_sums(), (std::pair<long, long>{12, 12}));
  EXPECT_EQ(pr.relators[3].exponent_sums(), (std::pair<long, long>{9, 9}));
  EXPECT_EQ(pr.relators[3], Word::parse("R J R J2 R J R2 J2 R2 J R2 J2", 3));
  for (auto [p, k] : all_lattices()) {
    auto q = make_presentation(p, k);
    EXPECT_EQ(q.relators[3].exponent_sums().second, 3L * p);
  }
}

TEST(Presentation, CuspWords) {
  CuspWords c = cusp_words(3);
  EXPECT_EQ(c.R2.to_string(), "J R J2");
  EXPECT_EQ(c.A1.exponent_sums(), (std::pair<long, long>{4, 4}));
  EXPECT_EQ(c.center, (c.R2 * c.A1).pow(2));
  EXPECT_EQ(c.parabolic_gens.size(), 3u);
}

TEST(Presentation, ParseForms) {
  EXPECT_EQ(Word::parse("J^2 R", 3), Word::parse("J2*R", 3));
  EXPECT_EQ(Word::parse("(R J)^2", 3).to_string(), "R J R J");
  EXPECT_EQ(Word::parse("(R J)^-1", 3).to_string(), "J2 R^2");
  EXPECT_TRUE(Word::parse("1", 3).empty());
  EXPECT_THROW(Word::parse("J X", 3), PresentationError);
  EXPECT_THROW(Word::parse("(J R", 3), PresentationError);
}

TEST(Presentation, EvaluateStandardJ) {
  Matrix<Rational> J{{0, 0, 1}, {-1, 0, 0}, {0, 1, 0}};
  Matrix<Rational> R = Matrix<Rational>::identity(3);
  auto m = evaluate_word(Word::J(3, 3), J, R);
  EXPECT_EQ(m.scalar_value(), std::optional<Rational>(Rational(-1)));
  EXPECT_EQ(evaluate_word(Word(3), J, R), Matrix<Rational>::identity(3));
}

// property: w * w^{-1} reduces to the empty word and evaluates to a scalar
TEST(PresentationProperty, InverseCancels) {
  std::mt19937 rng(3);
  Matrix<Rational> J{{0, 0, 1}, {-1, 0, 0}, {0, 1, 0}};
  Matrix<Rational> R{{1, -2, 2}, {0, 0, 1}, {0, -1, -1}};  // block of order 3
  ASSERT_TRUE(R.pow(3).scalar_value().has_value());
  for (int i = 0; i < 50; ++i) {
    Word w(3);
    int len = std::uniform_int_distribution<int>(1, 12)(rng);
    for (int j = 0; j < len; ++j)
      w.push(rng() % 2 ? Gen::J : Gen::R, std::uniform_int_distribution<int>(1, 2)(rng));
    Word ww = w * w.inverse();
    EXPECT_TRUE(ww.free_reduce().empty()) << w.to_string();
    EXPECT_TRUE(evaluate_word(ww, J, R).scalar_value().has_value());
    EXPECT_EQ(w.inverse().inverse().free_reduce(), w.free_reduce());
  }
}
