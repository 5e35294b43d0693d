#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_n) = Q[t]/Phi_n(t), power basis.

#include "dmrep/numeric.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dmrep {

class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline int euler_phi(int n) {
  if (n < 1) throw FieldError("euler_phi: n must be positive");
  int result = n, m = n;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

inline std::vector<int> divisors(int n) {
  std::vector<int> d;
  for (int i = 1; i <= n; ++i)
    if (n % i == 0) d.push_back(i);
  return d;
}

namespace detail {

inline int mobius(int n) {
  int k = 0;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      ++k;
    }
  }
  if (n > 1) ++k;
  return (k % 2) ? -1 : 1;
}

using IntPoly = std::vector<Integer>;  // low -> high

inline IntPoly int_poly_mul(const IntPoly& a, const IntPoly& b) {
  IntPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Exact division by a monic polynomial.
inline IntPoly int_poly_divexact(IntPoly a, const IntPoly& b) {
  const std::size_t db = b.size() - 1;
  IntPoly q(a.size() - db);
  for (std::size_t i = a.size(); i-- > db;) {
    Integer c = a[i];
    q[i - db] = c;
    if (c != 0)
      for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  return q;
}

/// Precomputed data for one conductor.
struct CyclotomicData {
  int n = 1;
  int phi = 1;
  IntPoly modulus;                    // Phi_n, monic, degree phi
  std::vector<IntPoly> powers;        // t^e mod Phi_n for 0 <= e < n, each of length phi
};

inline IntPoly cyclotomic_polynomial_uncached(int n) {
  // Phi_n = prod_{d | n} (t^d - 1)^{mu(n/d)}
  IntPoly num{1}, den{1};
  for (int d : divisors(n)) {
    int mu = mobius(n / d);
    if (mu == 0) continue;
    IntPoly f(static_cast<std::size_t>(d) + 1);
    f[0] = -1;
    f[static_cast<std::size_t>(d)] = 1;
    if (mu == 1) {
      num = int_poly_mul(num, f);
    } else {
      den = int_poly_mul(den, f);
    }
  }
  // den is monic up to sign; normalize to monic before dividing
  if (den.back() < 0) {
    for (auto& c : den) c = -c;
    for (auto& c : num) c = -c;
  }
  return int_poly_divexact(num, den);
}

inline const CyclotomicData& cyclotomic_data(int n) {
  if (n < 1) throw FieldError("conductor must be positive");
  static std::mutex mtx;
  static std::map<int, std::unique_ptr<CyclotomicData>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;
  auto d = std::make_unique<CyclotomicData>();
  d->n = n;
  d->modulus = cyclotomic_polynomial_uncached(n);
  d->phi = static_cast<int>(d->modulus.size()) - 1;
  const auto phi = static_cast<std::size_t>(d->phi);
  IntPoly cur(phi);
  if (phi > 0) cur[0] = 1;
  for (int e = 0; e < n; ++e) {
    d->powers.push_back(cur);
    // multiply by t and reduce
    Integer top = cur[phi - 1];
    for (std::size_t i = phi - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0)
      for (std::size_t i = 0; i < phi; ++i) cur[i] -= top * d->modulus[i];
  }
  auto& ref = *d;
  cache.emplace(n, std::move(d));
  return ref;
}

// Reduce an element of Q[t]/(t^n - 1) (length n) into the power basis.
inline std::vector<Rational> reduce_cyclic(const CyclotomicData& f, const std::vector<Rational>& cyc) {
  const auto phi = static_cast<std::size_t>(f.phi);
  std::vector<Rational> out(phi);
  for (std::size_t e = 0; e < cyc.size(); ++e) {
    const Rational& c = cyc[e];
    if (sgn(c) == 0) continue;
    if (e < phi) {
      out[e] += c;
      continue;
    }
    const auto& pw = f.powers[e];
    for (std::size_t i = 0; i < phi; ++i)
      if (pw[i] != 0) out[i] += c * pw[i];
  }
  return out;
}

// Univariate helpers over Q used for inversion.
using QPoly = std::vector<Rational>;

inline void qpoly_trim(QPoly& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

inline std::pair<QPoly, QPoly> qpoly_divmod(QPoly a, const QPoly& b) {
  qpoly_trim(a);
  QPoly q;
  if (a.size() < b.size()) return {q, a};
  q.assign(a.size() - b.size() + 1, Rational(0));
  const Rational& lb = b.back();
  const std::size_t db = b.size() - 1;
  for (std::size_t i = a.size() - 1;; --i) {
    if (sgn(a[i]) != 0) {
      Rational c = a[i] / lb;
      q[i - db] = c;
      for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    if (i == db) break;
  }
  qpoly_trim(a);
  return {q, a};
}

inline QPoly qpoly_sub_mul(const QPoly& a, const QPoly& q, const QPoly& b) {
  // a - q*b
  QPoly r = a;
  if (!q.empty() && !b.empty()) {
    r.resize(std::max(a.size(), q.size() + b.size() - 1));
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] -= q[i] * b[j];
  }
  qpoly_trim(r);
  return r;
}

}  // namespace detail

enum class Sign { negative = -1, zero = 0, positive = 1 };

/// Element of Q(zeta_n) in the power basis 1, zeta, ..., zeta^(phi(n)-1).
/// Binary operations between different conductors promote both operands to
/// the lcm of the conductors.
class CycloNum {
 public:
  CycloNum() : n_(1), c_(1) {}
  CycloNum(long v) : n_(1), c_{Rational(v)} {}  // NOLINT(google-explicit-constructor)
  CycloNum(const Rational& q, int n = 1) : n_(n) {  // NOLINT(google-explicit-constructor)
    c_.assign(static_cast<std::size_t>(detail::cyclotomic_data(n).phi), Rational(0));
    c_[0] = q;
  }

  /// zeta_n^power
  static CycloNum zeta(int n, long power = 1) {
    const auto& f = detail::cyclotomic_data(n);
    long e = ((power % n) + n) % n;
    CycloNum r;
    r.n_ = n;
    r.c_.assign(static_cast<std::size_t>(f.phi), Rational(0));
    const auto& pw = f.powers[static_cast<std::size_t>(e)];
    for (std::size_t i = 0; i < pw.size(); ++i) r.c_[i] = pw[i];
    return r;
  }

  /// Element from coordinates; vectors longer than phi(n) are read as
  /// polynomials in zeta_n and reduced.
  static CycloNum from_coeffs(int n, const std::vector<Rational>& coeffs) {
    const auto& f = detail::cyclotomic_data(n);
    std::vector<Rational> cyc(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < coeffs.size(); ++i) cyc[i % static_cast<std::size_t>(n)] += coeffs[i];
    CycloNum r;
    r.n_ = n;
    r.c_ = detail::reduce_cyclic(f, cyc);
    return r;
  }

  int conductor() const noexcept { return n_; }
  int degree() const noexcept { return static_cast<int>(c_.size()); }
  const std::vector<Rational>& coeffs() const noexcept { return c_; }

  bool is_zero() const {
    for (const auto& c : c_)
      if (sgn(c) != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (sgn(c_[i]) != 0) return false;
    return true;
  }
  bool is_one() const { return is_rational() && c_[0] == 1; }
  Rational rational_value() const {
    if (!is_rational()) throw FieldError("element is not rational");
    return c_[0];
  }

  /// Same element expressed in Q(zeta_m); m must be a multiple of n.
  CycloNum embed(int m) const {
    if (m < 1 || m % n_ != 0) throw FieldError("embed: target conductor is not a multiple of the source conductor");
    if (m == n_) return *this;
    const auto& f = detail::cyclotomic_data(m);
    const int step = m / n_;
    std::vector<Rational> cyc(static_cast<std::size_t>(m));
    for (std::size_t j = 0; j < c_.size(); ++j) cyc[j * static_cast<std::size_t>(step)] = c_[j];
    CycloNum r;
    r.n_ = m;
    r.c_ = detail::reduce_cyclic(f, cyc);
    return r;
  }

  friend CycloNum operator+(const CycloNum& a, const CycloNum& b) {
    if (a.n_ != b.n_) {
      int m = std::lcm(a.n_, b.n_);
      return a.embed(m) + b.embed(m);
    }
    CycloNum r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
    return r;
  }
  friend CycloNum operator-(const CycloNum& a, const CycloNum& b) {
    if (a.n_ != b.n_) {
      int m = std::lcm(a.n_, b.n_);
      return a.embed(m) - b.embed(m);
    }
    CycloNum r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
    return r;
  }
  CycloNum operator-() const {
    CycloNum r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend CycloNum operator*(const CycloNum& a, const CycloNum& b) {
    if (a.n_ != b.n_) {
      int m = std::lcm(a.n_, b.n_);
      return a.embed(m) * b.embed(m);
    }
    if (a.is_rational()) return b.scaled(a.c_[0]);
    if (b.is_rational()) return a.scaled(b.c_[0]);
    const auto& f = detail::cyclotomic_data(a.n_);
    const auto n = static_cast<std::size_t>(a.n_);
    std::vector<Rational> cyc(n);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (sgn(a.c_[i]) == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if (sgn(b.c_[j]) == 0) continue;
        cyc[(i + j) % n] += a.c_[i] * b.c_[j];
      }
    }
    CycloNum r;
    r.n_ = a.n_;
    r.c_ = detail::reduce_cyclic(f, cyc);
    return r;
  }
  friend CycloNum operator/(const CycloNum& a, const CycloNum& b) { return a * b.inverse(); }

  CycloNum& operator+=(const CycloNum& b) { return *this = *this + b; }
  CycloNum& operator-=(const CycloNum& b) { return *this = *this - b; }
  CycloNum& operator*=(const CycloNum& b) { return *this = *this * b; }
  CycloNum& operator/=(const CycloNum& b) { return *this = *this / b; }

  CycloNum scaled(const Rational& q) const {
    CycloNum r = *this;
    for (auto& c : r.c_) c *= q;
    return r;
  }

  CycloNum inverse() const {
    if (is_zero()) throw FieldError("division by zero in Q(zeta_n)");
    if (is_rational()) {
      CycloNum r = *this;
      r.c_[0] = 1 / c_[0];
      return r;
    }
    // extended Euclid: find u with a*u = 1 mod Phi_n
    const auto& f = detail::cyclotomic_data(n_);
    detail::QPoly r0(f.modulus.begin(), f.modulus.end()), r1 = c_;
    detail::qpoly_trim(r1);
    detail::QPoly s0, s1{Rational(1)};
    while (r1.size() > 1) {
      auto [q, r] = detail::qpoly_divmod(r0, r1);
      detail::QPoly s2 = detail::qpoly_sub_mul(s0, q, s1);
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    // r1 is a nonzero constant
    Rational inv = 1 / r1[0];
    for (auto& c : s1) c *= inv;
    return from_coeffs(n_, s1);
  }

  CycloNum pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    CycloNum result(Rational(1), n_), base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }

  /// sigma_k : zeta_n -> zeta_n^k, gcd(k, n) = 1.
  CycloNum galois(long k) const {
    long kk = ((k % n_) + n_) % n_;
    if (n_ > 1 && std::gcd(kk, static_cast<long>(n_)) != 1) throw FieldError("galois: exponent not coprime to conductor");
    if (n_ <= 2) return *this;
    const auto& f = detail::cyclotomic_data(n_);
    const auto n = static_cast<std::size_t>(n_);
    std::vector<Rational> cyc(n);
    for (std::size_t j = 0; j < c_.size(); ++j) cyc[(j * static_cast<std::size_t>(kk)) % n] += c_[j];
    CycloNum r;
    r.n_ = n_;
    r.c_ = detail::reduce_cyclic(f, cyc);
    return r;
  }

  CycloNum conj() const { return galois(n_ - 1); }
  bool is_real() const { return conj() == *this; }

  /// Smallest conductor d | n (d not 2 mod 4) with the element in Q(zeta_d).
  int minimal_conductor() const { return canonical().n_; }

  /// The element rewritten over its smallest cyclotomic field.
  CycloNum canonical() const {
    if (is_rational()) return CycloNum(c_[0]);
    for (int d : divisors(n_)) {
      if (d == 1 || d % 4 == 2 || d == n_) continue;
      bool fixed = true;
      for (int k = 1; k < n_ && fixed; k += d) {
        if (std::gcd(k, n_) != 1) continue;
        if (galois(k) != *this) fixed = false;
      }
      if (fixed) return restrict_to(d);
    }
    if (n_ % 4 == 2) return restrict_to(n_ / 2);
    return *this;
  }

  /// Coordinates over Q(zeta_d) for d | n; throws if the element is not there.
  CycloNum restrict_to(int d) const {
    if (n_ % d != 0) throw FieldError("restrict_to: not a divisor of the conductor");
    const auto& fd = detail::cyclotomic_data(d);
    const int rows = static_cast<int>(c_.size()), cols = fd.phi;
    // columns: embeddings of zeta_d^j
    std::vector<std::vector<Rational>> a(static_cast<std::size_t>(rows), std::vector<Rational>(static_cast<std::size_t>(cols) + 1));
    for (int j = 0; j < cols; ++j) {
      CycloNum b = zeta(d, j).embed(n_);
      for (int i = 0; i < rows; ++i) a[i][j] = b.c_[static_cast<std::size_t>(i)];
    }
    for (int i = 0; i < rows; ++i) a[i][cols] = c_[static_cast<std::size_t>(i)];
    // Gaussian elimination
    std::vector<int> pivcol;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
      int piv = -1;
      for (int i = r; i < rows; ++i)
        if (sgn(a[i][c]) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) continue;
      std::swap(a[r], a[piv]);
      Rational inv = 1 / a[r][c];
      for (int j = c; j <= cols; ++j) a[r][j] *= inv;
      for (int i = 0; i < rows; ++i) {
        if (i == r || sgn(a[i][c]) == 0) continue;
        Rational f = a[i][c];
        for (int j = c; j <= cols; ++j) a[i][j] -= f * a[r][j];
      }
      pivcol.push_back(c);
      ++r;
    }
    for (int i = r; i < rows; ++i)
      if (sgn(a[i][cols]) != 0) throw FieldError("restrict_to: element does not lie in the subfield");
    std::vector<Rational> y(static_cast<std::size_t>(cols));
    for (int i = 0; i < r; ++i) y[static_cast<std::size_t>(pivcol[i])] = a[i][cols];
    CycloNum out;
    out.n_ = d;
    out.c_ = std::move(y);
    return out;
  }

  friend bool operator==(const CycloNum& a, const CycloNum& b) {
    if (a.n_ != b.n_) {
      int m = std::lcm(a.n_, b.n_);
      return a.embed(m).c_ == b.embed(m).c_;
    }
    return a.c_ == b.c_;
  }
  friend bool operator!=(const CycloNum& a, const CycloNum& b) { return !(a == b); }

  /// Rigorous enclosure of the image under zeta_n -> exp(2 pi i / n).
  ComplexBall approx(mpfr_prec_t prec) const {
    if (prec < 32) throw FieldError("approx: precision must be at least 32 bits");
    const mpfr_prec_t wp = prec + 16;
    ComplexBall out{{Real(wp), Real(wp)}, {Real(wp), Real(wp)}};
    if (is_zero()) return out;
    Rational l1 = 0;
    for (std::size_t j = 0; j < c_.size(); ++j) {
      if (sgn(c_[j]) == 0) continue;
      l1 += abs(c_[j]);
      Real q(c_[j], wp);
      if (j == 0) {
        out.re.mid += q;
        continue;
      }
      Complex z = Complex::root_of_unity(static_cast<long>(j), n_, wp);
      out.re.mid += q * z.re;
      out.im.mid += q * z.im;
    }
    // each cos/sin carries < 2^-(wp-4) error; products and sums add a few ulps
    Real bound = Real(l1 + 1, wp) * Real(static_cast<double>(c_.size() + 2), wp) * Real::pow2(-static_cast<long>(wp) + 8, wp);
    out.re.rad = bound;
    out.im.rad = bound;
    return out;
  }

  Complex to_complex(mpfr_prec_t prec) const { return approx(prec).midpoint(); }

  /// Exact sign of a real element: zero is decided symbolically, nonzero
  /// values by ball evaluation at increasing precision.
  Sign sign_real() const {
    if (!is_real()) throw FieldError("sign_real: element is not real");
    if (is_zero()) return Sign::zero;
    if (is_rational()) return sgn(c_[0]) > 0 ? Sign::positive : Sign::negative;
    for (mpfr_prec_t p = 64;; p *= 2) {
      int s = approx(p).re.certain_sign();
      if (s > 0) return Sign::positive;
      if (s < 0) return Sign::negative;
    }
  }

  /// Exponent j with this == zeta_N^j, if any (N a multiple of the conductor).
  std::optional<int> root_of_unity_exponent(int N) const {
    int m = std::lcm(N, n_);
    CycloNum x = embed(m);
    for (int j = 0; j < N; ++j)
      if (x == zeta(N, j)) return j;
    return std::nullopt;
  }

  /// Human readable form, `z` standing for zeta_n.
  std::string to_string(const std::string& z = "z") const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t j = 0; j < c_.size(); ++j) {
      const Rational& c = c_[j];
      if (sgn(c) == 0) continue;
      Rational a = abs(c);
      if (first) {
        if (sgn(c) < 0) os << "-";
      } else {
        os << (sgn(c) < 0 ? " - " : " + ");
      }
      first = false;
      if (j == 0) {
        os << a.get_str();
      } else {
        if (a != 1) os << a.get_str() << "*";
        os << z;
        if (j > 1) os << "^" << j;
      }
    }
    if (first) os << "0";
    return os.str();
  }

 private:
  int n_;
  std::vector<Rational> c_;
};

inline std::ostream& operator<<(std::ostream& os, const CycloNum& x) {
  return os << x.to_string("z" + std::to_string(x.conductor()));
}

/// Galois automorphism sigma_k of Q(zeta_n).
struct GaloisAut {
  int n = 1;
  int k = 1;

  GaloisAut() = default;
  GaloisAut(int n_, int k_) : n(n_), k(((k_ % n_) + n_) % n_) {
    if (n_ < 1) throw FieldError("GaloisAut: conductor must be positive");
    if (n > 1 && std::gcd(k, n) != 1) throw FieldError("GaloisAut: k not coprime to n");
    if (n == 1) k = 1;
  }

  GaloisAut compose(const GaloisAut& other) const {
    if (other.n != n) throw FieldError("GaloisAut: conductor mismatch");
    return GaloisAut(n, static_cast<int>((static_cast<long>(k) * other.k) % n));
  }
  static GaloisAut identity(int n) { return GaloisAut(n, 1); }
  static GaloisAut complex_conjugation(int n) { return GaloisAut(n, n - 1); }

  /// All automorphisms of Q(zeta_n).
  static std::vector<GaloisAut> group(int n) {
    if (n <= 2) return {GaloisAut(n, 1)};
    std::vector<GaloisAut> g;
    for (int k = 1; k < n; ++k)
      if (std::gcd(k, n) == 1) g.emplace_back(n, k);
    return g;
  }
  /// Automorphisms of Q(zeta_n) fixing Q(zeta_d) pointwise (d | n).
  static std::vector<GaloisAut> fixing_subfield(int n, int d) {
    std::vector<GaloisAut> g;
    for (const auto& s : group(n))
      if ((s.k - 1) % d == 0) g.push_back(s);
    return g;
  }

  friend bool operator==(const GaloisAut& a, const GaloisAut& b) { return a.n == b.n && a.k == b.k; }
};

/// sigma(x); the automorphism's conductor must equal the element's.
inline CycloNum apply_galois(const GaloisAut& s, const CycloNum& x) {
  if (s.n != x.conductor()) throw FieldError("apply_galois: conductor mismatch");
  return x.galois(s.k);
}

/// Acts on any element whose conductor divides s.n by first embedding.
inline CycloNum apply_galois_lifted(const GaloisAut& s, const CycloNum& x) {
  if (s.n % x.conductor() != 0) throw FieldError("apply_galois: conductor does not divide automorphism's conductor");
  return x.embed(s.n).galois(s.k);
}

inline CycloNum conj(const CycloNum& x) { return x.conj(); }
inline bool is_zero(const CycloNum& x) { return x.is_zero(); }
inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline Rational conj(const Rational& x) { return x; }

/// omega = zeta_3
inline CycloNum omega() { return CycloNum::zeta(3); }
/// i*sqrt(3) = 2*omega + 1
inline CycloNum i_sqrt3() { return omega().scaled(2) + CycloNum(1); }

}  // namespace dmrep
