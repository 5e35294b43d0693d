#pragma once

// Multiprecision numerics: MPFR-backed reals and complexes, midpoint-radius
// balls, simultaneous polynomial root finding and integer relation search.

#include <gmpxx.h>
#include <mpfr.h>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dmrep {

using Rational = mpq_class;
using Integer = mpz_class;

/// Value-semantic wrapper around an mpfr_t. Arithmetic rounds to nearest at
/// the larger of the operand precisions.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 256) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Real(double d, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, d, MPFR_RNDN);
  }
  Real(const Rational& q, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
  }
  Real(const Integer& z, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
  }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  static Real pi(mpfr_prec_t prec) {
    Real r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }
  /// 2^e at the given precision.
  static Real pow2(long e, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
  }

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  /// Binary exponent (value in [2^(e-1), 2^e)); very negative for zero.
  long exponent() const { return is_zero() ? -(1L << 40) : mpfr_get_exp(v_); }

  /// Exact rational value of the binary floating point number.
  Rational to_rational() const {
    Rational q;
    if (is_zero()) return q;
    mpz_class m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    q = m;
    if (e >= 0) {
      mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    } else {
      mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    }
    q.canonicalize();
    return q;
  }
  /// Nearest integer.
  Integer round() const {
    Integer z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
    return z;
  }

  std::string to_string(int digits = 30) const {
    if (is_zero()) return "0";
    std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
    return std::string(buf.data());
  }

  friend Real operator+(const Real& a, const Real& b) {
    Real r(std::max(a.precision(), b.precision()));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a, const Real& b) {
    Real r(std::max(a.precision(), b.precision()));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, const Real& b) {
    Real r(std::max(a.precision(), b.precision()));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, const Real& b) {
    Real r(std::max(a.precision(), b.precision()));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  Real operator-() const {
    Real r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }
  Real& operator+=(const Real& b) { return *this = *this + b; }
  Real& operator-=(const Real& b) { return *this = *this - b; }
  Real& operator*=(const Real& b) { return *this = *this * b; }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }

  friend Real abs(const Real& a) {
    Real r(a.precision());
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real sqrt(const Real& a) {
    Real r(a.precision());
    mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real hypot(const Real& a, const Real& b) {
    Real r(std::max(a.precision(), b.precision()));
    mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real cos(const Real& a) {
    Real r(a.precision());
    mpfr_cos(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real sin(const Real& a) {
    Real r(a.precision());
    mpfr_sin(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

 private:
  mpfr_t v_;
};

struct Complex {
  Real re;
  Real im;

  explicit Complex(mpfr_prec_t prec = 256) : re(prec), im(prec) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  mpfr_prec_t precision() const { return std::max(re.precision(), im.precision()); }

  /// exp(2 pi i num / den)
  static Complex root_of_unity(long num, long den, mpfr_prec_t prec) {
    Real theta = Real::pi(prec + 16) * Real(Rational(2 * num, den), prec + 16);
    Real c = cos(theta), s = sin(theta);
    Real cr(prec), sr(prec);
    mpfr_set(cr.get(), c.get(), MPFR_RNDN);
    mpfr_set(sr.get(), s.get(), MPFR_RNDN);
    return {std::move(cr), std::move(sr)};
  }

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator*(const Real& a, const Complex& b) { return {a * b.re, a * b.im}; }
  friend Complex operator/(const Complex& a, const Complex& b) {
    Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  Complex operator-() const { return {-re, -im}; }
  Complex conj() const { return {re, -im}; }
  Complex& operator+=(const Complex& b) { return *this = *this + b; }
  Complex& operator-=(const Complex& b) { return *this = *this - b; }

  friend Real abs(const Complex& a) { return hypot(a.re, a.im); }
  std::complex<double> to_std() const { return {re.to_double(), im.to_double()}; }

  std::string to_string(int digits = 30) const {
    std::string s = re.to_string(digits);
    std::string t = im.to_string(digits);
    if (!t.empty() && t[0] == '-') return s + " - " + t.substr(1) + "i";
    return s + " + " + t + "i";
  }
};

/// Midpoint-radius real ball. The radius is an upper bound on the distance
/// from the midpoint to the represented value.
struct Ball {
  Real mid;
  Real rad;

  bool contains_zero() const { return abs(mid) <= rad; }
  /// +1 / -1 when the ball excludes zero, 0 otherwise.
  int certain_sign() const {
    if (contains_zero()) return 0;
    return mid.sign();
  }
  /// True when this ball lies inside `outer`.
  bool inside(const Ball& outer) const { return abs(mid - outer.mid) + rad <= outer.rad; }
};

/// Rectangular complex ball.
struct ComplexBall {
  Ball re;
  Ball im;

  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
  bool inside(const ComplexBall& outer) const { return re.inside(outer.re) && im.inside(outer.im); }
  Complex midpoint() const { return {re.mid, im.mid}; }
};

// ---------------------------------------------------------------------------
// Univariate root finding

struct RootApprox {
  Complex value;
  Real radius;  ///< inclusion radius: a root lies within `radius` of `value`
};

namespace detail {

inline void horner(const std::vector<Complex>& coeffs, const Complex& z, Complex& p, Complex& dp) {
  // coeffs low -> high
  const std::size_t n = coeffs.size();
  p = coeffs[n - 1];
  dp = Complex(z.precision());
  for (std::size_t i = n - 1; i-- > 0;) {
    dp = dp * z + p;
    p = p * z + coeffs[i];
  }
}

inline std::vector<std::complex<double>> companion_eigenvalues(const std::vector<Complex>& coeffs) {
  const int d = static_cast<int>(coeffs.size()) - 1;
  std::vector<std::complex<double>> out;
  if (d < 1) return out;
  const std::complex<double> lead = coeffs[d].to_std();
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) c(i, d - 1) = -coeffs[i].to_std() / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(c, false);
  for (int i = 0; i < d; ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

}  // namespace detail

/// Roots of a squarefree polynomial (coefficients low -> high, complex) at
/// the requested precision. Initial values come from double-precision
/// companion matrix eigenvalues; Aberth-Ehrlich iteration then refines all
/// roots simultaneously. Each root carries the inclusion radius
/// deg * |p(z)/p'(z)|; when all discs are pairwise disjoint every disc holds
/// exactly one root and `separated` is set.
struct RootSet {
  std::vector<RootApprox> roots;
  bool separated = false;
};

inline RootSet polynomial_roots(std::vector<Complex> coeffs, mpfr_prec_t prec, int max_iter = 400) {
  while (coeffs.size() > 1 && coeffs.back().re.is_zero() && coeffs.back().im.is_zero()) coeffs.pop_back();
  RootSet out;
  const int d = static_cast<int>(coeffs.size()) - 1;
  if (d < 1) {
    out.separated = true;
    return out;
  }
  // work slightly above the target precision
  const mpfr_prec_t wp = prec + 32;
  std::vector<Complex> c;
  c.reserve(coeffs.size());
  for (const auto& z : coeffs) {
    Complex w(wp);
    mpfr_set(w.re.get(), z.re.get(), MPFR_RNDN);
    mpfr_set(w.im.get(), z.im.get(), MPFR_RNDN);
    c.push_back(std::move(w));
  }

  auto init = detail::companion_eigenvalues(c);
  std::vector<Complex> z;
  for (int i = 0; i < d; ++i) {
    std::complex<double> v = init[static_cast<std::size_t>(i)];
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) v = std::polar(1.0, 0.4 + 2.0 * M_PI * i / d);
    // tiny deterministic perturbation keeps coincident starts apart
    v += std::polar(1e-9 * (1.0 + std::abs(v)), 0.7 + i);
    z.emplace_back(Real(v.real(), wp), Real(v.imag(), wp));
  }

  const Real tol = Real::pow2(-static_cast<long>(prec) - 8, wp);
  Complex p(wp), dp(wp);
  for (int it = 0; it < max_iter; ++it) {
    bool converged = true;
    for (int i = 0; i < d; ++i) {
      detail::horner(c, z[i], p, dp);
      if (p.re.is_zero() && p.im.is_zero()) continue;
      Complex ratio = p / dp;
      Complex sum(wp);
      for (int j = 0; j < d; ++j) {
        if (j == i) continue;
        Complex diff = z[i] - z[j];
        Complex one(Real(1.0, wp), Real(wp));
        sum += one / diff;
      }
      Complex one(Real(1.0, wp), Real(wp));
      Complex step = ratio / (one - ratio * sum);
      z[i] -= step;
      Real scale = abs(z[i]);
      if (scale < Real(1.0, wp)) scale = Real(1.0, wp);
      if (tol * scale < abs(step)) converged = false;
    }
    if (converged && it > 2) break;
  }

  for (int i = 0; i < d; ++i) {
    detail::horner(c, z[i], p, dp);
    Real r(wp);
    if (dp.re.is_zero() && dp.im.is_zero()) {
      mpfr_set_inf(r.get(), 1);
    } else {
      r = Real(static_cast<double>(d), wp) * abs(p / dp);
    }
    // account for rounding in the evaluation itself
    r += Real::pow2(-static_cast<long>(prec), wp) * (abs(z[i]) + Real(1.0, wp));
    out.roots.push_back({z[i], r});
  }
  out.separated = true;
  for (int i = 0; i < d && out.separated; ++i) {
    for (int j = i + 1; j < d; ++j) {
      if (abs(out.roots[i].value - out.roots[j].value) <= out.roots[i].radius + out.roots[j].radius) {
        out.separated = false;
        break;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lattice reduction

/// LLL reduction (delta = 3/4) of the rows of an integer matrix, with exact
/// rational Gram-Schmidt data updated incrementally.
inline std::vector<std::vector<Integer>> lll_reduce(std::vector<std::vector<Integer>> b) {
  const std::size_t n = b.size();
  if (n < 2) return b;
  const std::size_t m = b[0].size();
  std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n));
  std::vector<Rational> B(n);
  {
    std::vector<std::vector<Rational>> bstar(n, std::vector<Rational>(m));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < m; ++c) bstar[i][c] = b[i][c];
      for (std::size_t j = 0; j < i; ++j) {
        Rational num = 0;
        for (std::size_t c = 0; c < m; ++c) num += Rational(b[i][c]) * bstar[j][c];
        mu[i][j] = (B[j] == 0) ? Rational(0) : Rational(num / B[j]);
        for (std::size_t c = 0; c < m; ++c) bstar[i][c] -= mu[i][j] * bstar[j][c];
      }
      B[i] = 0;
      for (std::size_t c = 0; c < m; ++c) B[i] += bstar[i][c] * bstar[i][c];
    }
  }

  auto size_reduce = [&](std::size_t k, std::size_t l) {
    Rational& ml = mu[k][l];
    if (abs(ml) * 2 <= 1) return;
    // nearest integer to mu[k][l]
    Integer q;
    {
      Rational t = ml + Rational(1, 2);
      mpz_fdiv_q(q.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    }
    for (std::size_t c = 0; c < m; ++c) b[k][c] -= q * b[l][c];
    for (std::size_t j = 0; j < l; ++j) mu[k][j] -= Rational(q) * mu[l][j];
    mu[k][l] -= Rational(q);
  };

  const Rational delta(3, 4);
  std::size_t k = 1;
  while (k < n) {
    size_reduce(k, k - 1);
    Rational lhs = B[k];
    Rational rhs = (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1];
    if (lhs < rhs) {
      Rational muk = mu[k][k - 1];
      Rational Bn = B[k] + muk * muk * B[k - 1];
      std::swap(b[k], b[k - 1]);
      for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu[k][j], mu[k - 1][j]);
      if (Bn == 0) throw std::invalid_argument("lll_reduce: rows are linearly dependent");
      mu[k][k - 1] = muk * B[k - 1] / Bn;
      B[k] = B[k - 1] * B[k] / Bn;
      B[k - 1] = Bn;
      for (std::size_t i = k + 1; i < n; ++i) {
        Rational t = mu[i][k];
        mu[i][k] = mu[i][k - 1] - muk * t;
        mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
      }
      if (k > 1) --k;
    } else {
      for (std::size_t l = k - 1; l-- > 0;) size_reduce(k, l);
      ++k;
    }
  }
  return b;
}

/// Search for a small integer vector a with sum a_i x_i = 0 (complex x_i).
/// Returns candidate relations ordered by lattice reduction; callers verify.
inline std::vector<std::vector<Integer>> integer_relations(const std::vector<Complex>& x, long scale_bits) {
  const std::size_t n = x.size();
  std::vector<std::vector<Integer>> rows(n, std::vector<Integer>(n + 2));
  const mpfr_prec_t wp = static_cast<mpfr_prec_t>(scale_bits + 64);
  Real scale = Real::pow2(scale_bits, wp);
  for (std::size_t i = 0; i < n; ++i) {
    rows[i][i] = 1;
    rows[i][n] = (scale * x[i].re).round();
    rows[i][n + 1] = (scale * x[i].im).round();
  }
  auto red = lll_reduce(std::move(rows));
  std::vector<std::vector<Integer>> out;
  for (auto& r : red) out.emplace_back(r.begin(), r.begin() + static_cast<long>(n));
  return out;
}

/// Best rational approximation with denominator at most `max_den`
/// (continued fractions with semiconvergents).
inline Rational best_rational(const Rational& x, const Integer& max_den) {
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Integer n = x.get_num(), d = x.get_den();
  while (true) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    Integer q2 = q0 + a * q1;
    if (q2 > max_den) {
      Integer k = (max_den - q0) / q1;
      Rational b1(p0 + k * p1, q0 + k * q1);
      Rational b2(p1, q1);
      b1.canonicalize();
      b2.canonicalize();
      return (abs(b1 - x) < abs(b2 - x)) ? b1 : b2;
    }
    Integer p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Integer r = n - a * d;
    if (r == 0) break;
    n = d;
    d = r;
  }
  Rational out(p1, q1);
  out.canonicalize();
  return out;
}

}  // namespace dmrep
