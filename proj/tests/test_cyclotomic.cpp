#include "dmrep/cyclotomic.hpp"
#include "dmrep/linalg.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dmrep;

namespace {

CycloNum random_element(std::mt19937& rng, int n, int range = 5) {
  std::uniform_int_distribution<int> num(-range, range), den(1, 4);
  std::vector<Rational> c(static_cast<std::size_t>(euler_phi(n)));
  for (auto& x : c) {
    x = Rational(num(rng), den(rng));
    x.canonicalize();
  }
  return CycloNum::from_coeffs(n, c);
}

}  // namespace

TEST(Cyclotomic, EulerPhiAndPolynomialDegree) {
  EXPECT_EQ(euler_phi(1), 1);
  EXPECT_EQ(euler_phi(9), 6);
  EXPECT_EQ(euler_phi(12), 4);
  EXPECT_EQ(euler_phi(45), 24);
  EXPECT_EQ(CycloNum::zeta(9).degree(), 6);
}

TEST(Cyclotomic, ZetaPowersWrapAround) {
  CycloNum z = CycloNum::zeta(9);
  EXPECT_EQ(z.pow(9), CycloNum(1));
  EXPECT_NE(z.pow(3), CycloNum(1));
  EXPECT_EQ(z.pow(3).pow(3), CycloNum(1));
  // 1 + z^3 + z^6 = 0 in Q(zeta_9)
  EXPECT_TRUE((CycloNum(1) + z.pow(3) + z.pow(6)).is_zero());
}

TEST(Cyclotomic, EmbedOmegaIntoNinth) {
  EXPECT_EQ(omega().embed(9), CycloNum::zeta(9, 3));
  EXPECT_EQ(CycloNum(1).embed(9), CycloNum(Rational(1), 9));
  CycloNum i4 = CycloNum::zeta(4).embed(12);
  EXPECT_EQ(i4, CycloNum::zeta(12, 3));
  EXPECT_EQ(i4.pow(4), CycloNum(1));
  EXPECT_NE(i4.pow(2), CycloNum(1));
  EXPECT_THROW(omega().embed(10), FieldError);
}

TEST(Cyclotomic, EmbedRoundTripsThroughCanonical) {
  std::mt19937 rng(7);
  for (int i = 0; i < 20; ++i) {
    CycloNum x = random_element(rng, 3);
    CycloNum y = x.embed(9).canonical();
    EXPECT_EQ(y.conductor(), x.is_rational() ? 1 : 3);
    EXPECT_EQ(y, x);
  }
  EXPECT_EQ(CycloNum::zeta(9, 3).canonical().conductor(), 3);
  EXPECT_EQ(CycloNum::zeta(18).canonical().conductor(), 9);
  EXPECT_EQ(CycloNum::zeta(18).canonical(), CycloNum::zeta(9, 5).scaled(-1));
}

TEST(Cyclotomic, GaloisActionMatchesPublishedValues) {
  GaloisAut g(9, 2);
  EXPECT_EQ(apply_galois(g, CycloNum::zeta(9)), CycloNum::zeta(9, 2));
  GaloisAut g2 = g.compose(g);
  EXPECT_EQ(g2.k, 4);
  EXPECT_EQ(apply_galois(g2, CycloNum::zeta(9, 3)), CycloNum::zeta(9, 3));
  EXPECT_THROW(apply_galois(g, omega()), FieldError);
  EXPECT_EQ(apply_galois_lifted(g2, omega()), omega().embed(9));
}

TEST(Cyclotomic, GroupStructure) {
  auto G = GaloisAut::group(9);
  ASSERT_EQ(G.size(), 6u);
  EXPECT_EQ(GaloisAut(9, 4).compose(GaloisAut(9, 7)), GaloisAut(9, 1));
  EXPECT_EQ(GaloisAut::fixing_subfield(9, 3).size(), 3u);
  EXPECT_EQ(GaloisAut::complex_conjugation(9).k, 8);
}

TEST(Cyclotomic, ConjugationExamples) {
  EXPECT_EQ(conj(omega()), omega().pow(2));
  EXPECT_EQ(conj(omega()), CycloNum(-1) - omega());
  EXPECT_EQ(conj(CycloNum(Rational(3, 2))), CycloNum(Rational(3, 2)));
  CycloNum z = CycloNum::zeta(9);
  CycloNum x = z + z.pow(2);
  CycloNum cx = conj(x);
  EXPECT_EQ(cx, z.pow(8) + z.pow(7));
  Complex a = x.to_complex(200), b = cx.to_complex(200);
  EXPECT_LT(abs(a.re - b.re).to_double(), 1e-30);
  EXPECT_LT(abs(a.im + b.im).to_double(), 1e-30);
}

TEST(Cyclotomic, ConjugationAgreesWithNumericForSigma8) {
  CycloNum x = CycloNum(1) + CycloNum::zeta(9).scaled(2);
  Complex a = apply_galois(GaloisAut(9, 8), x).to_complex(128);
  Complex b = x.to_complex(128);
  EXPECT_LT(abs(a.re - b.re).to_double(), 1e-30);
  EXPECT_LT(abs(a.im + b.im).to_double(), 1e-30);
}

TEST(Cyclotomic, ApproxExamples) {
  ComplexBall z = CycloNum(0).approx(64);
  EXPECT_TRUE(z.re.mid.is_zero());
  EXPECT_TRUE(z.re.rad.is_zero());
  ComplexBall w = omega().approx(128);
  EXPECT_NEAR(w.re.mid.to_double(), -0.5, 1e-15);
  EXPECT_NEAR(w.im.mid.to_double(), 0.8660254037844386, 1e-15);
  EXPECT_LE(abs(w.re.mid - Real(Rational(-1, 2), 128)), w.re.rad);
  EXPECT_THROW(omega().approx(16), FieldError);
  CycloNum s = CycloNum(1) + CycloNum::zeta(9, 3) + CycloNum::zeta(9, 6);
  EXPECT_TRUE(s.is_zero());
}

TEST(Cyclotomic, SignReal) {
  EXPECT_EQ(CycloNum(Rational(-1, 2)).sign_real(), Sign::negative);
  CycloNum z = CycloNum::zeta(9);
  EXPECT_EQ((z + z.pow(8)).sign_real(), Sign::positive);
  EXPECT_EQ((z.pow(4) + z.pow(5)).sign_real(), Sign::negative);
  EXPECT_EQ((CycloNum(1) + omega() + omega().pow(2)).sign_real(), Sign::zero);
  EXPECT_THROW(omega().sign_real(), FieldError);
  // -3 = (i sqrt 3)^2
  EXPECT_EQ((i_sqrt3() * i_sqrt3()).sign_real(), Sign::negative);
}

TEST(Cyclotomic, InverseAndDivision) {
  CycloNum x = CycloNum(2) + CycloNum::zeta(9).scaled(3) - CycloNum::zeta(9, 4);
  EXPECT_EQ(x * x.inverse(), CycloNum(1));
  EXPECT_THROW(CycloNum(Rational(0), 9).inverse(), FieldError);
}

TEST(Cyclotomic, RootOfUnityExponent) {
  EXPECT_EQ(CycloNum::zeta(9, 3).root_of_unity_exponent(3), std::optional<int>(1));
  EXPECT_EQ(CycloNum(-1).root_of_unity_exponent(6), std::optional<int>(3));
  EXPECT_EQ(CycloNum(2).root_of_unity_exponent(6), std::nullopt);
}

// property: field axioms on random triples
TEST(CyclotomicProperty, FieldAxioms) {
  std::mt19937 rng(11);
  for (int n : {3, 4, 9, 12, 15}) {
    for (int i = 0; i < 25; ++i) {
      CycloNum a = random_element(rng, n), b = random_element(rng, n), c = random_element(rng, n);
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ(a - a, CycloNum(Rational(0), n));
      if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), CycloNum(1));
    }
  }
}

TEST(CyclotomicProperty, GaloisIsRingHomomorphism) {
  std::mt19937 rng(13);
  for (int n : {9, 12, 15}) {
    for (const auto& s : GaloisAut::group(n)) {
      for (int i = 0; i < 5; ++i) {
        CycloNum a = random_element(rng, n), b = random_element(rng, n);
        EXPECT_EQ(apply_galois(s, a * b), apply_galois(s, a) * apply_galois(s, b));
        EXPECT_EQ(apply_galois(s, a + b), apply_galois(s, a) + apply_galois(s, b));
        EXPECT_EQ(apply_galois(s, CycloNum(Rational(5, 3), n)), CycloNum(Rational(5, 3)));
      }
    }
    CycloNum a = random_element(rng, n);
    EXPECT_EQ(conj(conj(a)), a);
  }
}

TEST(CyclotomicProperty, ApproxIsNestedAndZeroTestConsistent) {
  std::mt19937 rng(17);
  for (int i = 0; i < 1000; ++i) {
    int n = (i % 3 == 0) ? 9 : (i % 3 == 1 ? 12 : 5);
    CycloNum x = random_element(rng, n, 3);
    if (i % 50 == 0) x = x - x;
    ComplexBall lo = x.approx(64), hi = x.approx(160);
    Real dre = abs(hi.re.mid - lo.re.mid) + hi.re.rad;
    Real dim = abs(hi.im.mid - lo.im.mid) + hi.im.rad;
    EXPECT_LE(dre, lo.re.rad);
    EXPECT_LE(dim, lo.im.rad);
    bool contains_zero = hi.re.contains_zero() && hi.im.contains_zero();
    EXPECT_EQ(contains_zero, x.is_zero());
  }
}

TEST(CyclotomicProperty, EmbedCommutesWithArithmetic) {
  std::mt19937 rng(19);
  for (int i = 0; i < 30; ++i) {
    CycloNum a = random_element(rng, 3), b = random_element(rng, 3);
    EXPECT_EQ((a * b).embed(9), a.embed(9) * b.embed(9));
    EXPECT_EQ((a + b).embed(36), a.embed(36) + b.embed(36));
    if (!b.is_zero()) EXPECT_EQ((a / b).embed(45), a.embed(45) / b.embed(45));
  }
}

TEST(Linalg, DeterminantInverseKernel) {
  using M = Matrix<Rational>;
  M a{{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
  EXPECT_EQ(determinant(a), Rational(18));
  auto inv = inverse(a);
  ASSERT_TRUE(inv.has_value());
  EXPECT_EQ(a * *inv, M::identity(3));
  M s{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  EXPECT_EQ(rank(s), 2u);
  auto ker = kernel(s);
  ASSERT_EQ(ker.size(), 1u);
  for (auto& x : mat_vec(s, ker[0])) EXPECT_EQ(x, 0);
  EXPECT_FALSE(inverse(s).has_value());
}

TEST(Linalg, CharacteristicPolynomial) {
  Matrix<CycloNum> j{{0, 0, 1}, {-1, 0, 0}, {0, 1, 0}};
  auto cp = characteristic_polynomial(j);
  // t^3 + 1
  ASSERT_EQ(cp.size(), 4u);
  EXPECT_EQ(cp[0], CycloNum(1));
  EXPECT_TRUE(cp[1].is_zero());
  EXPECT_TRUE(cp[2].is_zero());
  EXPECT_EQ(cp[3], CycloNum(1));
  EXPECT_EQ(j.pow(3), (CycloNum(-1)) * Matrix<CycloNum>::identity(3));
  EXPECT_EQ(j.pow(3).scalar_value(), std::optional<CycloNum>(CycloNum(-1)));
}
