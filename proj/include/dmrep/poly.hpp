#pragma once

// Multivariate polynomials over Q or Q(zeta_n), Groebner bases (Buchberger
// with sugar selection and Gebauer-Moeller pair pruning), normal forms,
// elimination and the Krull dimension of the quotient ring.

#include "dmrep/cyclotomic.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dmrep {

inline constexpr std::size_t kMaxVars = 12;

class RingMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Monomial {
  std::array<std::uint16_t, kMaxVars> e{};
  std::uint32_t deg = 0;

  static Monomial var(std::size_t i, unsigned power = 1) {
    Monomial m;
    m.e[i] = static_cast<std::uint16_t>(power);
    m.deg = power;
    return m;
  }
  bool is_one() const { return deg == 0; }
  bool divides(const Monomial& o) const {
    if (deg > o.deg) return false;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }
  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.e[i] = static_cast<std::uint16_t>(a.e[i] + b.e[i]);
    m.deg = a.deg + b.deg;
    return m;
  }
  /// a / b, requires b | a
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.e[i] = static_cast<std::uint16_t>(a.e[i] - b.e[i]);
    m.deg = a.deg - b.deg;
    return m;
  }
  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      m.e[i] = std::max(a.e[i], b.e[i]);
      m.deg += m.e[i];
    }
    return m;
  }
  bool coprime(const Monomial& o) const {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e[i] && o.e[i]) return false;
    return true;
  }
  /// Variables occurring in the monomial, as a bit set.
  unsigned support() const {
    unsigned s = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e[i]) s |= 1u << i;
    return s;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return a.e != b.e; }
};

enum class OrderKind { lex, degrevlex, elimination };

inline std::string to_string(OrderKind k) {
  switch (k) {
    case OrderKind::lex: return "lex";
    case OrderKind::degrevlex: return "degrevlex";
    case OrderKind::elimination: return "elimination";
  }
  return "?";
}

/// Ordered variable list plus a monomial order. For the elimination order the
/// first `block` variables form a degrevlex block ranked above the rest.
class PolyRing {
 public:
  PolyRing(std::vector<std::string> vars, OrderKind order = OrderKind::degrevlex, std::size_t block = 0)
      : vars_(std::move(vars)), order_(order), block_(block) {
    if (vars_.size() > kMaxVars) throw std::invalid_argument("PolyRing: too many variables");
    std::set<std::string> seen(vars_.begin(), vars_.end());
    if (seen.size() != vars_.size()) throw std::invalid_argument("PolyRing: duplicate variable names");
    if (order_ == OrderKind::elimination && block_ > vars_.size()) throw std::invalid_argument("PolyRing: bad block");
  }

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  OrderKind order() const { return order_; }
  std::size_t block() const { return block_; }

  std::optional<std::size_t> index_of(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return i;
    return std::nullopt;
  }

  /// three-way comparison: >0 if a > b
  int compare(const Monomial& a, const Monomial& b) const {
    const std::size_t n = vars_.size();
    switch (order_) {
      case OrderKind::lex:
        for (std::size_t i = 0; i < n; ++i)
          if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
        return 0;
      case OrderKind::degrevlex:
        if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
        return revlex(a, b, 0, n);
      case OrderKind::elimination: {
        unsigned da = 0, db = 0;
        for (std::size_t i = 0; i < block_; ++i) {
          da += a.e[i];
          db += b.e[i];
        }
        if (da != db) return da > db ? 1 : -1;
        int c = revlex(a, b, 0, block_);
        if (c) return c;
        if (a.deg - da != b.deg - db) return a.deg - da > b.deg - db ? 1 : -1;
        return revlex(a, b, block_, n);
      }
    }
    return 0;
  }

  bool same_as(const PolyRing& o) const { return vars_ == o.vars_ && order_ == o.order_ && block_ == o.block_; }

  std::string monomial_string(const Monomial& m) const {
    std::string s;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (!m.e[i]) continue;
      if (!s.empty()) s += "*";
      s += vars_[i];
      if (m.e[i] > 1) s += "^" + std::to_string(m.e[i]);
    }
    return s.empty() ? "1" : s;
  }

 private:
  // reverse lexicographic on [lo, hi): smaller exponent in the last differing variable is larger
  static int revlex(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
    for (std::size_t i = hi; i-- > lo;)
      if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
    return 0;
  }

  std::vector<std::string> vars_;
  OrderKind order_;
  std::size_t block_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

inline RingPtr make_ring(std::vector<std::string> vars, OrderKind order = OrderKind::degrevlex, std::size_t block = 0) {
  return std::make_shared<const PolyRing>(std::move(vars), order, block);
}

// ---------------------------------------------------------------------------
// Coefficient traits

template <class F>
struct CoeffTraits;

template <>
struct CoeffTraits<Rational> {
  static std::string str(const Rational& c) { return c.get_str(); }
  static bool is_simple(const Rational&) { return true; }
  static int sign(const Rational& c) { return sgn(c); }
  static Complex to_complex(const Rational& c, mpfr_prec_t prec) { return Complex(Real(c, prec), Real(prec)); }
  static CycloNum to_cyclo(const Rational& c) { return CycloNum(c); }
  /// (a, b) with a*lcp == b*lcg, kept integral for integral inputs.
  static std::pair<Rational, Rational> multipliers(const Rational& lcp, const Rational& lcg) {
    if (lcp.get_den() == 1 && lcg.get_den() == 1) {
      Integer g;
      mpz_gcd(g.get_mpz_t(), lcp.get_num_mpz_t(), lcg.get_num_mpz_t());
      Rational a(Integer(lcg.get_num() / g)), b(Integer(lcp.get_num() / g));
      if (sgn(a) < 0) {
        a = -a;
        b = -b;
      }
      return {a, b};
    }
    return {Rational(1), Rational(lcp / lcg)};
  }
  /// Rational factor c such that c * coeffs is a primitive integer vector.
  template <class It>
  static Rational primitive_factor(It begin, It end) {
    Integer g = 0, l = 1;
    for (It it = begin; it != end; ++it) {
      const Rational& c = it->c;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    }
    if (g == 0) return Rational(1);
    Rational f(l, g);
    f.canonicalize();
    return f;
  }
  static constexpr bool fraction_free = true;
};

template <>
struct CoeffTraits<CycloNum> {
  static std::string str(const CycloNum& c) { return c.to_string("z"); }
  static bool is_simple(const CycloNum& c) { return c.is_rational(); }
  static int sign(const CycloNum& c) { return c.is_rational() ? sgn(c.coeffs()[0]) : 1; }
  static Complex to_complex(const CycloNum& c, mpfr_prec_t prec) { return c.to_complex(prec); }
  static CycloNum to_cyclo(const CycloNum& c) { return c; }
  static std::pair<CycloNum, CycloNum> multipliers(const CycloNum& lcp, const CycloNum& lcg) {
    if (lcg.is_one()) return {CycloNum(1), lcp};
    return {CycloNum(1), lcp / lcg};
  }
  template <class It>
  static CycloNum primitive_factor(It begin, It end) {
    // clear rational content of all coordinates
    Integer g = 0, l = 1;
    for (It it = begin; it != end; ++it)
      for (const auto& c : it->c.coeffs()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
      }
    if (g == 0) return CycloNum(1);
    Rational f(l, g);
    f.canonicalize();
    return CycloNum(f);
  }
  static constexpr bool fraction_free = false;
};

// ---------------------------------------------------------------------------

template <class F>
struct Term {
  Monomial m;
  F c;
};

template <class F>
class MultiPoly {
 public:
  using Coeff = F;
  using TermT = Term<F>;

  MultiPoly() = default;
  explicit MultiPoly(RingPtr ring) : ring_(std::move(ring)) {}
  MultiPoly(RingPtr ring, const F& constant) : ring_(std::move(ring)) {
    if (!dmrep::is_zero(constant)) terms_.push_back({Monomial{}, constant});
  }
  MultiPoly(RingPtr ring, std::vector<TermT> terms) : ring_(std::move(ring)), terms_(std::move(terms)) { canonicalize(); }

  static MultiPoly variable(RingPtr ring, std::size_t i) {
    MultiPoly p(ring);
    p.terms_.push_back({Monomial::var(i), F(1)});
    return p;
  }
  static MultiPoly variable(RingPtr ring, const std::string& name) {
    auto i = ring->index_of(name);
    if (!i) throw std::invalid_argument("unknown variable " + name);
    return variable(ring, *i);
  }
  static MultiPoly monomial(RingPtr ring, const Monomial& m, const F& c) {
    MultiPoly p(ring);
    if (!dmrep::is_zero(c)) p.terms_.push_back({m, c});
    return p;
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<TermT>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
  const Monomial& leading_monomial() const { return terms_.front().m; }
  const F& leading_coeff() const { return terms_.front().c; }
  std::uint32_t total_degree() const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.m.deg);
    return d;
  }
  /// Coefficient of a monomial (zero if absent).
  F coeff(const Monomial& m) const {
    for (const auto& t : terms_)
      if (t.m == m) return t.c;
    return F(0);
  }
  unsigned support() const {
    unsigned s = 0;
    for (const auto& t : terms_) s |= t.m.support();
    return s;
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return combine(a, F(1), Monomial{}, b, F(1)); }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return combine(a, F(1), Monomial{}, b, F(-1)); }
  MultiPoly operator-() const {
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.c = -t.c;
    return r;
  }
  MultiPoly& operator+=(const MultiPoly& b) { return *this = *this + b; }
  MultiPoly& operator-=(const MultiPoly& b) { return *this = *this - b; }
  MultiPoly& operator*=(const MultiPoly& b) { return *this = *this * b; }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_ring(b);
    if (a.is_zero() || b.is_zero()) return MultiPoly(a.ring_ ? a.ring_ : b.ring_);
    const MultiPoly& big = a.size() >= b.size() ? a : b;
    const MultiPoly& small = a.size() >= b.size() ? b : a;
    MultiPoly acc(big.ring_);
    for (const auto& t : small.terms_) acc = combine(acc, F(1), Monomial{}, big, t.c, t.m);
    return acc;
  }
  friend MultiPoly operator*(const F& s, const MultiPoly& p) { return p.scaled(s); }

  MultiPoly scaled(const F& s) const {
    if (dmrep::is_zero(s)) return MultiPoly(ring_);
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.c = s * t.c;
    return r;
  }
  MultiPoly shifted(const Monomial& m, const F& s) const {
    MultiPoly r(ring_);
    if (dmrep::is_zero(s)) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.m * m, s * t.c});
    return r;
  }
  MultiPoly pow(unsigned e) const {
    MultiPoly r(ring_, F(1));
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  /// a*x + s*m*y, merged in order.
  static MultiPoly combine(const MultiPoly& x, const F& a, const Monomial& m, const MultiPoly& y, const F& s) {
    x.check_ring(y);
    const RingPtr& ring = x.ring_ ? x.ring_ : y.ring_;
    MultiPoly r(ring);
    r.terms_.reserve(x.terms_.size() + y.terms_.size());
    const bool a_one = (a == F(1));
    const bool m_one = m.is_one();
    std::size_t i = 0, j = 0;
    while (i < x.terms_.size() || j < y.terms_.size()) {
      if (j == y.terms_.size()) {
        r.terms_.push_back({x.terms_[i].m, a_one ? x.terms_[i].c : F(a * x.terms_[i].c)});
        ++i;
        continue;
      }
      Monomial ym = m_one ? y.terms_[j].m : y.terms_[j].m * m;
      if (i == x.terms_.size()) {
        r.terms_.push_back({ym, s * y.terms_[j].c});
        ++j;
        continue;
      }
      int c = ring->compare(x.terms_[i].m, ym);
      if (c > 0) {
        r.terms_.push_back({x.terms_[i].m, a_one ? x.terms_[i].c : F(a * x.terms_[i].c)});
        ++i;
      } else if (c < 0) {
        r.terms_.push_back({ym, s * y.terms_[j].c});
        ++j;
      } else {
        F v = a_one ? F(x.terms_[i].c + s * y.terms_[j].c) : F(a * x.terms_[i].c + s * y.terms_[j].c);
        if (!dmrep::is_zero(v)) r.terms_.push_back({ym, std::move(v)});
        ++i;
        ++j;
      }
    }
    return r;
  }
  static MultiPoly combine(const MultiPoly& x, const F& a, const Monomial&, const MultiPoly& y, const F& s,
                           const Monomial& m) {
    return combine(x, a, m, y, s);
  }

  MultiPoly monic() const {
    if (is_zero()) return *this;
    if (leading_coeff() == F(1)) return *this;
    return scaled(F(1) / leading_coeff());
  }
  /// Scalar multiple with content removed (primitive integral for Q).
  MultiPoly primitive() const {
    if (is_zero()) return *this;
    MultiPoly r = scaled(CoeffTraits<F>::primitive_factor(terms_.begin(), terms_.end()));
    if (CoeffTraits<F>::sign(r.leading_coeff()) < 0) r = -r;
    return r;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].m != b.terms_[i].m || a.terms_[i].c != b.terms_[i].c) return false;
    return true;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  /// Same polynomial in another ring with the same variables (possibly
  /// permuted) or a superset; variables are matched by name.
  MultiPoly in_ring(const RingPtr& target) const {
    std::array<std::size_t, kMaxVars> map{};
    for (std::size_t i = 0; i < ring_->nvars(); ++i) {
      auto j = target->index_of(ring_->vars()[i]);
      bool used = false;
      for (const auto& t : terms_) used = used || t.m.e[i];
      if (!j) {
        if (used) throw RingMismatch("in_ring: variable " + ring_->vars()[i] + " missing in target ring");
        map[i] = kMaxVars;
        continue;
      }
      map[i] = *j;
    }
    std::vector<TermT> ts;
    ts.reserve(terms_.size());
    for (const auto& t : terms_) {
      Monomial m;
      for (std::size_t i = 0; i < ring_->nvars(); ++i)
        if (t.m.e[i]) m.e[map[i]] = t.m.e[i];
      m.deg = t.m.deg;
      ts.push_back({m, t.c});
    }
    return MultiPoly(target, std::move(ts));
  }

  /// Evaluate with values of type V; `conv` maps coefficients into V.
  template <class V, class Conv>
  V evaluate(const std::vector<V>& values, Conv&& conv, const V& zero, const V& one) const {
    const std::size_t n = ring_->nvars();
    if (values.size() < n) throw std::invalid_argument("evaluate: too few values");
    std::vector<std::vector<V>> pw(n);
    for (std::size_t i = 0; i < n; ++i) pw[i].push_back(one);
    V acc = zero;
    for (const auto& t : terms_) {
      V term = conv(t.c);
      for (std::size_t i = 0; i < n; ++i) {
        const unsigned k = t.m.e[i];
        if (!k) continue;
        while (pw[i].size() <= k) pw[i].push_back(pw[i].back() * values[i]);
        term = term * pw[i][k];
      }
      acc = acc + term;
    }
    return acc;
  }

  /// Exact evaluation at cyclotomic values.
  CycloNum evaluate_exact(const std::vector<CycloNum>& values) const {
    return evaluate<CycloNum>(values, [](const F& c) { return CoeffTraits<F>::to_cyclo(c); }, CycloNum(0), CycloNum(1));
  }
  Complex evaluate_numeric(const std::vector<Complex>& values, mpfr_prec_t prec) const {
    Complex zero(prec), one(Real(1.0, prec), Real(prec));
    return evaluate<Complex>(values, [prec](const F& c) { return CoeffTraits<F>::to_complex(c, prec); }, zero, one);
  }

  /// Substitute values for some variables (by index), keeping the others.
  MultiPoly substitute(const std::map<std::size_t, F>& values) const {
    MultiPoly acc(ring_);
    for (const auto& t : terms_) {
      F c = t.c;
      Monomial m = t.m;
      for (const auto& [i, v] : values) {
        if (!m.e[i]) continue;
        for (unsigned k = 0; k < m.e[i]; ++k) c = c * v;
        m.deg -= m.e[i];
        m.e[i] = 0;
      }
      acc = acc + monomial(ring_, m, c);
    }
    return acc;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
      const bool simple = CoeffTraits<F>::is_simple(t.c);
      std::string cs = CoeffTraits<F>::str(t.c);
      bool neg = simple && !cs.empty() && cs[0] == '-';
      if (neg) cs = cs.substr(1);
      if (first) {
        if (neg) os << "-";
      } else {
        os << (neg ? " - " : " + ");
      }
      first = false;
      const std::string ms = ring_->monomial_string(t.m);
      if (t.m.is_one()) {
        os << (simple ? cs : "(" + cs + ")");
      } else if (simple && cs == "1") {
        os << ms;
      } else {
        os << (simple ? cs : "(" + cs + ")") << "*" << ms;
      }
    }
    return os.str();
  }

 private:
  void canonicalize() {
    std::sort(terms_.begin(), terms_.end(), [this](const TermT& a, const TermT& b) { return ring_->compare(a.m, b.m) > 0; });
    std::vector<TermT> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().m == t.m) {
        out.back().c += t.c;
      } else {
        out.push_back(std::move(t));
      }
    }
    terms_.clear();
    for (auto& t : out)
      if (!dmrep::is_zero(t.c)) terms_.push_back(std::move(t));
  }
  void check_ring(const MultiPoly& o) const {
    if (ring_ && o.ring_ && ring_ != o.ring_ && !ring_->same_as(*o.ring_)) throw RingMismatch("polynomials live in different rings");
  }

  RingPtr ring_;
  std::vector<TermT> terms_;
};

template <class F>
bool is_zero(const MultiPoly<F>& p) {
  return p.is_zero();
}

template <class F>
std::ostream& operator<<(std::ostream& os, const MultiPoly<F>& p) {
  return os << p.to_string();
}

// ---------------------------------------------------------------------------
// Parsing of the text format: sums of products of rationals, variables and
// `z` (zeta_n), with ^ for powers and parentheses.

namespace detail {

template <class F>
class PolyParser {
 public:
  PolyParser(const std::string& s, RingPtr ring, int conductor) : s_(s), ring_(std::move(ring)), n_(conductor) {}

  MultiPoly<F> parse() {
    MultiPoly<F> p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("polynomial parse error at position " + std::to_string(pos_) + ": " + msg + " in '" + s_ + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  MultiPoly<F> expr() {
    MultiPoly<F> acc(ring_);
    bool neg = accept('-');
    if (!neg) accept('+');
    MultiPoly<F> t = term();
    acc = neg ? acc - t : acc + t;
    while (true) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        break;
      }
    }
    return acc;
  }
  MultiPoly<F> term() {
    MultiPoly<F> acc = factor();
    while (true) {
      skip();
      if (accept('*')) {
        acc = acc * factor();
      } else if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        Integer d = integer();
        if (d == 0) fail("division by zero");
        acc = acc.scaled(F(Rational(1) / Rational(d)));
      } else {
        break;
      }
    }
    return acc;
  }
  Integer integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return Integer(s_.substr(start, pos_ - start));
  }
  MultiPoly<F> factor() {
    MultiPoly<F> b = base();
    if (accept('^')) {
      Integer e = integer();
      if (e > 1000) fail("exponent too large");
      b = b.pow(static_cast<unsigned>(e.get_ui()));
    }
    return b;
  }
  MultiPoly<F> base() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly<F> e = expr();
      if (!accept(')')) fail("expected )");
      return e;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer v = integer();
      return MultiPoly<F>(ring_, F(Rational(v)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (auto i = ring_->index_of(name)) return MultiPoly<F>::variable(ring_, *i);
      if (name == "z") return zeta();
      fail("unknown variable '" + name + "'");
    }
    fail("unexpected character");
  }
  MultiPoly<F> zeta() {
    if constexpr (std::is_same_v<F, CycloNum>) {
      return MultiPoly<F>(ring_, CycloNum::zeta(n_));
    } else {
      fail("'z' requires cyclotomic coefficients");
    }
  }

  std::string s_;
  RingPtr ring_;
  int n_;
  std::size_t pos_ = 0;
};

}  // namespace detail

template <class F>
MultiPoly<F> parse_poly(const std::string& text, const RingPtr& ring, int conductor = 1) {
  return detail::PolyParser<F>(text, ring, conductor).parse();
}

// ---------------------------------------------------------------------------
// Reduction

template <class F>
struct ReductionResult {
  MultiPoly<F> remainder;  ///< scale * f - remainder lies in the ideal
  F scale;
  std::size_t steps = 0;
};

namespace detail {

template <class F>
const MultiPoly<F>* find_reducer(const Monomial& m, const std::vector<const MultiPoly<F>*>& basis) {
  for (const auto* g : basis)
    if (g->leading_monomial().divides(m)) return g;
  return nullptr;
}

/// Full reduction of f by `basis` up to a nonzero scalar.
template <class F>
ReductionResult<F> reduce_scaled(const MultiPoly<F>& f, const std::vector<const MultiPoly<F>*>& basis, std::size_t* budget,
                                  bool top_only = false) {
  using P = MultiPoly<F>;
  P p = f;
  std::vector<Term<F>> rem;
  F scale(1);
  std::size_t steps = 0, since_norm = 0;
  while (!p.is_zero()) {
    const Monomial& lm = p.leading_monomial();
    const P* g = find_reducer(lm, basis);
    if (!g) {
      if (top_only) break;
      // move leading term to the remainder
      std::vector<Term<F>> rest(p.terms().begin() + 1, p.terms().end());
      rem.push_back(p.terms().front());
      p = P(p.ring(), std::move(rest));
      continue;
    }
    auto [a, b] = CoeffTraits<F>::multipliers(p.leading_coeff(), g->leading_coeff());
    Monomial shift = lm / g->leading_monomial();
    if (a != F(1)) {
      for (auto& t : rem) t.c = a * t.c;
      scale = a * scale;
    }
    p = P::combine(p, a, shift, *g, F(-b));
    ++steps;
    if (budget) {
      if (*budget == 0) throw BudgetExceeded("Groebner step budget exhausted");
      --*budget;
    }
    if (CoeffTraits<F>::fraction_free && ++since_norm >= 4 && !p.is_zero()) {
      since_norm = 0;
      F c = CoeffTraits<F>::primitive_factor(p.terms().begin(), p.terms().end());
      if (c != F(1)) {
        p = p.scaled(c);
        for (auto& t : rem) t.c = c * t.c;
        scale = c * scale;
      }
    }
  }
  if (top_only) {
    for (const auto& t : p.terms()) rem.push_back(t);
  }
  ReductionResult<F> out{MultiPoly<F>(f.ring()), scale, steps};
  // rem is already sorted descending
  out.remainder = MultiPoly<F>(f.ring(), std::move(rem));
  return out;
}

}  // namespace detail

/// Remainder of multivariate division of f by G (no term of the result is
/// divisible by a leading monomial of G).
template <class F>
MultiPoly<F> normal_form(const MultiPoly<F>& f, const std::vector<MultiPoly<F>>& G) {
  std::vector<const MultiPoly<F>*> basis;
  for (const auto& g : G) {
    if (g.ring() && f.ring() && !g.ring()->same_as(*f.ring())) throw RingMismatch("normal_form: ring mismatch");
    if (!g.is_zero()) basis.push_back(&g);
  }
  auto r = detail::reduce_scaled(f, basis, nullptr);
  if (r.remainder.is_zero() || r.scale == F(1)) return r.remainder;
  return r.remainder.scaled(F(1) / r.scale);
}

// ---------------------------------------------------------------------------
// Buchberger

struct GroebnerOptions {
  std::size_t budget = 1'000'000;  ///< maximum number of reduction steps
};

struct GroebnerStats {
  std::size_t reductions = 0;
  std::size_t pairs_considered = 0;
  std::size_t zero_reductions = 0;
};

template <class F>
struct GroebnerBasis {
  RingPtr ring;
  std::vector<MultiPoly<F>> basis;  ///< reduced, monic, sorted by leading monomial ascending
  GroebnerStats stats;

  bool is_unit() const { return basis.size() == 1 && basis[0].is_constant() && !basis[0].is_zero(); }
};

namespace detail {

struct CriticalPair {
  std::size_t i, j;
  Monomial lcm;
  std::uint32_t sugar;
};

}  // namespace detail

/// Reduced Groebner basis of the ideal generated by `gens` with respect to the
/// ring's monomial order.
template <class F>
GroebnerBasis<F> buchberger(const std::vector<MultiPoly<F>>& gens, const RingPtr& ring, const GroebnerOptions& opt = {}) {
  using P = MultiPoly<F>;
  GroebnerBasis<F> out{ring, {}, {}};
  std::size_t budget = opt.budget;

  std::vector<P> polys;                // all basis elements ever added
  std::vector<std::uint32_t> sugar;
  std::vector<bool> active;
  std::vector<detail::CriticalPair> pairs;

  auto normalize = [](const P& p) { return CoeffTraits<F>::fraction_free ? p.primitive() : p.monic(); };

  auto active_ptrs = [&]() {
    std::vector<const P*> v;
    for (std::size_t i = 0; i < polys.size(); ++i)
      if (active[i]) v.push_back(&polys[i]);
    return v;
  };

  // Gebauer-Moeller update with new element h (index hi)
  auto update = [&](std::size_t hi) {
    const Monomial& lh = polys[hi].leading_monomial();
    struct Cand {
      std::size_t g;
      Monomial lcm;
      bool coprime;
      bool keep = true;
    };
    std::vector<Cand> cands;
    for (std::size_t g = 0; g < polys.size(); ++g) {
      if (!active[g] || g == hi) continue;
      const Monomial& lg = polys[g].leading_monomial();
      cands.push_back({g, Monomial::lcm(lh, lg), lh.coprime(lg)});
    }
    // chain criterion among new pairs
    for (std::size_t a = 0; a < cands.size(); ++a) {
      if (cands[a].coprime) continue;
      for (std::size_t b = 0; b < cands.size(); ++b) {
        if (a == b || !cands[b].keep) continue;
        if (cands[b].lcm.divides(cands[a].lcm) && (cands[b].lcm != cands[a].lcm || b < a)) {
          cands[a].keep = false;
          break;
        }
      }
    }
    // drop pairs whose lcm equals the lcm of a coprime pair (product criterion)
    for (auto& c : cands) {
      if (!c.keep || c.coprime) continue;
      for (const auto& d : cands)
        if (d.coprime && d.keep && d.lcm == c.lcm) {
          c.keep = false;
          break;
        }
    }
    // prune old pairs
    std::vector<detail::CriticalPair> kept;
    kept.reserve(pairs.size());
    for (const auto& pr : pairs) {
      if (lh.divides(pr.lcm)) {
        Monomial l1 = Monomial::lcm(polys[pr.i].leading_monomial(), lh);
        Monomial l2 = Monomial::lcm(polys[pr.j].leading_monomial(), lh);
        if (l1 != pr.lcm && l2 != pr.lcm) continue;
      }
      kept.push_back(pr);
    }
    pairs = std::move(kept);
    for (const auto& c : cands) {
      if (!c.keep || c.coprime) continue;
      const Monomial& lg = polys[c.g].leading_monomial();
      std::uint32_t s = std::max(sugar[hi] + c.lcm.deg - lh.deg, sugar[c.g] + c.lcm.deg - lg.deg);
      pairs.push_back({c.g, hi, c.lcm, s});
    }
    for (std::size_t g = 0; g < polys.size(); ++g)
      if (active[g] && g != hi && lh.divides(polys[g].leading_monomial())) active[g] = false;
  };

  auto add = [&](P h, std::uint32_t s) {
    polys.push_back(normalize(h));
    sugar.push_back(s);
    active.push_back(true);
    update(polys.size() - 1);
  };

  // seed with inter-reduced inputs
  std::vector<P> input;
  for (const auto& g : gens) {
    P gi = g.ring() && g.ring()->same_as(*ring) ? P(ring, std::vector<Term<F>>(g.terms())) : g.in_ring(ring);
    if (!gi.is_zero()) input.push_back(gi);
  }
  std::sort(input.begin(), input.end(), [&](const P& a, const P& b) {
    return ring->compare(a.leading_monomial(), b.leading_monomial()) < 0;
  });
  for (const auto& g : input) {
    auto basis = active_ptrs();
    auto r = detail::reduce_scaled(g, basis, &budget);
    out.stats.reductions += r.steps;
    if (r.remainder.is_zero()) continue;
    if (r.remainder.is_constant()) {
      out.basis = {P(ring, F(1))};
      return out;
    }
    add(r.remainder, g.total_degree());
  }

  while (!pairs.empty()) {
    // normal strategy with sugar: smallest sugar, then smallest lcm
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
      if (a.sugar != b.sugar) return a.sugar < b.sugar;
      return ring->compare(a.lcm, b.lcm) < 0;
    });
    detail::CriticalPair pr = *best;
    *best = pairs.back();
    pairs.pop_back();
    ++out.stats.pairs_considered;

    const P& f = polys[pr.i];
    const P& g = polys[pr.j];
    Monomial mf = pr.lcm / f.leading_monomial();
    Monomial mg = pr.lcm / g.leading_monomial();
    auto [a, b] = CoeffTraits<F>::multipliers(f.leading_coeff(), g.leading_coeff());
    // a*lc(f) == b*lc(g): S = a*mf*f - b*mg*g
    P s = P::combine(f.shifted(mf, a), F(1), mg, g, F(-b));
    auto basis = active_ptrs();
    auto r = detail::reduce_scaled(s, basis, &budget);
    out.stats.reductions += r.steps;
    if (r.remainder.is_zero()) {
      ++out.stats.zero_reductions;
      continue;
    }
    if (r.remainder.is_constant()) {
      out.basis = {P(ring, F(1))};
      return out;
    }
    add(r.remainder, pr.sugar);
  }

  // reduced basis: minimal leading monomials, tails fully reduced, monic
  std::vector<P> minimal;
  for (std::size_t i = 0; i < polys.size(); ++i)
    if (active[i]) minimal.push_back(polys[i]);
  std::sort(minimal.begin(), minimal.end(), [&](const P& a, const P& b) {
    return ring->compare(a.leading_monomial(), b.leading_monomial()) < 0;
  });
  std::vector<P> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<const P*> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(&minimal[j]);
    // only the tail is reducible (leading monomials are minimal)
    P head = P::monomial(ring, minimal[i].leading_monomial(), minimal[i].leading_coeff());
    std::vector<Term<F>> tail(minimal[i].terms().begin() + 1, minimal[i].terms().end());
    auto r = detail::reduce_scaled(P(ring, std::move(tail)), others, &budget);
    out.stats.reductions += r.steps;
    P full = head.scaled(r.scale) + r.remainder;
    reduced.push_back(full.monic());
  }
  out.basis = std::move(reduced);
  return out;
}

template <class F>
GroebnerBasis<F> buchberger(const std::vector<MultiPoly<F>>& gens, const GroebnerOptions& opt = {}) {
  if (gens.empty()) throw std::invalid_argument("buchberger: no generators");
  return buchberger(gens, gens.front().ring(), opt);
}

/// S-polynomial of two polynomials (for certification).
template <class F>
MultiPoly<F> s_polynomial(const MultiPoly<F>& f, const MultiPoly<F>& g) {
  Monomial l = Monomial::lcm(f.leading_monomial(), g.leading_monomial());
  return f.shifted(l / f.leading_monomial(), F(1) / f.leading_coeff()) -
         g.shifted(l / g.leading_monomial(), F(1) / g.leading_coeff());
}

/// Post-hoc Buchberger criterion: every S-polynomial reduces to zero.
template <class F>
bool is_groebner_basis(const std::vector<MultiPoly<F>>& G) {
  for (std::size_t i = 0; i < G.size(); ++i)
    for (std::size_t j = i + 1; j < G.size(); ++j)
      if (!normal_form(s_polynomial(G[i], G[j]), G).is_zero()) return false;
  return true;
}

/// Reducedness: monic and no term of an element divisible by another's
/// leading monomial.
template <class F>
bool is_reduced_basis(const std::vector<MultiPoly<F>>& G) {
  for (std::size_t i = 0; i < G.size(); ++i) {
    if (G[i].leading_coeff() != F(1)) return false;
    for (std::size_t j = 0; j < G.size(); ++j) {
      if (i == j) continue;
      for (const auto& t : G[i].terms())
        if (G[j].leading_monomial().divides(t.m)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Ideals

template <class F>
class Ideal {
 public:
  Ideal(RingPtr ring, std::vector<MultiPoly<F>> gens) : ring_(std::move(ring)), gens_(std::move(gens)) {
    for (auto& g : gens_)
      if (g.ring() && !g.ring()->same_as(*ring_)) g = g.in_ring(ring_);
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<MultiPoly<F>>& generators() const { return gens_; }

  /// Reduced Groebner basis in the ideal's ring order (cached).
  const GroebnerBasis<F>& groebner(const GroebnerOptions& opt = {}) const {
    if (!gb_) gb_ = std::make_shared<GroebnerBasis<F>>(compute(opt));
    return *gb_;
  }
  bool has_groebner() const { return gb_ != nullptr; }

  /// Same ideal in a ring with a different order.
  Ideal with_order(OrderKind order, std::size_t block = 0) const {
    auto r = make_ring(ring_->vars(), order, block);
    std::vector<MultiPoly<F>> g;
    for (const auto& p : gens_) g.push_back(p.in_ring(r));
    return Ideal(r, std::move(g));
  }

 private:
  GroebnerBasis<F> compute(const GroebnerOptions& opt) const {
    std::vector<MultiPoly<F>> nz;
    for (const auto& g : gens_)
      if (!g.is_zero()) nz.push_back(g);
    if (nz.empty()) return GroebnerBasis<F>{ring_, {}, {}};
    return buchberger(nz, ring_, opt);
  }

  RingPtr ring_;
  std::vector<MultiPoly<F>> gens_;
  mutable std::shared_ptr<GroebnerBasis<F>> gb_;
};

/// True iff the reduced Groebner basis is {1}.
template <class F>
bool is_trivial(const Ideal<F>& I, const GroebnerOptions& opt = {}) {
  return I.groebner(opt).is_unit();
}

/// Krull dimension of the quotient ring from the leading monomials of a
/// Groebner basis: size of a maximal independent set of variables.
/// Returns -1 for the unit ideal.
template <class F>
int dimension_from_basis(const GroebnerBasis<F>& gb) {
  if (gb.is_unit()) return -1;
  const std::size_t n = gb.ring->nvars();
  std::vector<unsigned> supports;
  for (const auto& g : gb.basis) supports.push_back(g.leading_monomial().support());
  int best = 0;
  for (unsigned s = 0; s < (1u << n); ++s) {
    int bits = __builtin_popcount(s);
    if (bits <= best) continue;
    bool independent = true;
    for (unsigned sup : supports)
      if ((sup & ~s) == 0) {
        independent = false;
        break;
      }
    if (independent) best = bits;
  }
  return best;
}

template <class F>
int hilbert_dimension(const Ideal<F>& I, const GroebnerOptions& opt = {}) {
  if (I.ring()->order() == OrderKind::degrevlex) return dimension_from_basis(I.groebner(opt));
  return dimension_from_basis(I.with_order(OrderKind::degrevlex).groebner(opt));
}

/// Monomials outside the leading ideal; nullopt when there are infinitely
/// many (positive dimension).
template <class F>
std::optional<std::vector<Monomial>> standard_monomials(const GroebnerBasis<F>& gb) {
  if (gb.is_unit()) return std::vector<Monomial>{};
  const std::size_t n = gb.ring->nvars();
  if (dimension_from_basis(gb) > 0) return std::nullopt;
  std::vector<Monomial> lead;
  for (const auto& g : gb.basis) lead.push_back(g.leading_monomial());
  auto in_lead = [&](const Monomial& m) {
    for (const auto& l : lead)
      if (l.divides(m)) return true;
    return false;
  };
  std::vector<Monomial> out;
  std::vector<Monomial> frontier{Monomial{}};
  std::set<std::array<std::uint16_t, kMaxVars>> seen{Monomial{}.e};
  while (!frontier.empty()) {
    std::vector<Monomial> next;
    for (const auto& m : frontier) {
      if (in_lead(m)) continue;
      out.push_back(m);
      for (std::size_t i = 0; i < n; ++i) {
        Monomial x = m * Monomial::var(i);
        if (seen.insert(x.e).second) next.push_back(x);
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return gb.ring->compare(a, b) < 0; });
  return out;
}

template <class F>
std::optional<std::vector<Monomial>> standard_monomials(const Ideal<F>& I, const GroebnerOptions& opt = {}) {
  return standard_monomials(I.groebner(opt));
}

/// Generators of the elimination ideal I ∩ K[keep], via a Groebner basis for
/// an elimination order with the other variables ranked highest. The result
/// lives in the original ring.
template <class F>
Ideal<F> eliminate(const Ideal<F>& I, const std::vector<std::string>& keep, const GroebnerOptions& opt = {}) {
  const auto& vars = I.ring()->vars();
  std::vector<std::string> elim, kept;
  for (const auto& k : keep)
    if (!I.ring()->index_of(k)) throw std::invalid_argument("eliminate: unknown variable " + k);
  for (const auto& v : vars) {
    if (std::find(keep.begin(), keep.end(), v) == keep.end()) {
      elim.push_back(v);
    } else {
      kept.push_back(v);
    }
  }
  std::vector<std::string> order = elim;
  order.insert(order.end(), kept.begin(), kept.end());
  auto er = make_ring(order, OrderKind::elimination, elim.size());
  std::vector<MultiPoly<F>> gens;
  for (const auto& g : I.generators())
    if (!g.is_zero()) gens.push_back(g.in_ring(er));
  std::vector<MultiPoly<F>> out;
  if (!gens.empty()) {
    auto gb = buchberger(gens, er, opt);
    unsigned elim_mask = (1u << elim.size()) - 1;
    for (const auto& g : gb.basis)
      if ((g.support() & elim_mask) == 0) out.push_back(g.in_ring(I.ring()));
  }
  if (out.empty()) out.push_back(MultiPoly<F>(I.ring()));
  return Ideal<F>(I.ring(), std::move(out));
}

// ---------------------------------------------------------------------------
// Univariate helpers (coefficients low -> high)

template <class F>
using UPoly = std::vector<F>;

template <class F>
void utrim(UPoly<F>& a) {
  while (!a.empty() && is_zero(a.back())) a.pop_back();
}

template <class F>
std::pair<UPoly<F>, UPoly<F>> udivmod(UPoly<F> a, UPoly<F> b) {
  utrim(a);
  utrim(b);
  if (b.empty()) throw std::domain_error("udivmod: division by zero polynomial");
  UPoly<F> q;
  if (a.size() < b.size()) return {q, a};
  q.assign(a.size() - b.size() + 1, F(0));
  F inv = F(1) / b.back();
  const std::size_t db = b.size() - 1;
  for (std::size_t i = a.size() - 1;; --i) {
    if (!is_zero(a[i])) {
      F c = a[i] * inv;
      q[i - db] = c;
      for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    if (i == db) break;
  }
  utrim(a);
  return {q, a};
}

template <class F>
UPoly<F> umonic(UPoly<F> a) {
  utrim(a);
  if (a.empty()) return a;
  F inv = F(1) / a.back();
  for (auto& c : a) c = c * inv;
  return a;
}

template <class F>
UPoly<F> ugcd(UPoly<F> a, UPoly<F> b) {
  utrim(a);
  utrim(b);
  while (!b.empty()) {
    auto r = udivmod(a, b).second;
    a = std::move(b);
    b = umonic(std::move(r));
  }
  return umonic(a);
}

template <class F>
UPoly<F> uderivative(const UPoly<F>& a) {
  UPoly<F> d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * F(Rational(static_cast<long>(i))));
  utrim(d);
  return d;
}

/// f / gcd(f, f'), monic.
template <class F>
UPoly<F> squarefree_part(const UPoly<F>& f) {
  UPoly<F> d = uderivative(f);
  if (d.empty()) return umonic(f);
  UPoly<F> g = ugcd(f, d);
  return umonic(udivmod(f, g).first);
}

/// Minimal polynomial of multiplication by u on K[x]/I for a zero-dimensional
/// ideal with reduced Groebner basis gb. It generates I ∩ K[u] when u is a
/// variable.
template <class F>
UPoly<F> minimal_polynomial(const MultiPoly<F>& u, const GroebnerBasis<F>& gb) {
  auto sm = standard_monomials(gb);
  if (!sm) throw std::invalid_argument("minimal_polynomial: ideal is not zero-dimensional");
  if (sm->empty()) return {F(1)};
  const std::size_t D = sm->size();
  auto index = [&](const Monomial& m) -> std::size_t {
    for (std::size_t i = 0; i < D; ++i)
      if ((*sm)[i] == m) return i;
    throw std::logic_error("minimal_polynomial: normal form has a non-standard monomial");
  };
  auto to_vec = [&](const MultiPoly<F>& p) {
    std::vector<F> v(D, F(0));
    for (const auto& t : p.terms()) v[index(t.m)] = t.c;
    return v;
  };
  // incremental echelon form; each row tracks its combination of powers
  struct Row {
    std::vector<F> v;
    std::vector<F> combo;
    std::size_t pivot;
  };
  std::vector<Row> rows;
  MultiPoly<F> power(gb.ring, F(1));
  for (std::size_t k = 0; k <= D; ++k) {
    std::vector<F> v = to_vec(power);
    std::vector<F> combo(k + 1, F(0));
    combo[k] = F(1);
    for (const auto& r : rows) {
      if (is_zero(v[r.pivot])) continue;
      F f = v[r.pivot];
      for (std::size_t i = 0; i < D; ++i)
        if (!is_zero(r.v[i])) v[i] -= f * r.v[i];
      for (std::size_t i = 0; i < r.combo.size(); ++i)
        if (!is_zero(r.combo[i])) combo[i] -= f * r.combo[i];
    }
    std::size_t piv = D;
    for (std::size_t i = 0; i < D; ++i)
      if (!is_zero(v[i])) {
        piv = i;
        break;
      }
    if (piv == D) return umonic(combo);
    F inv = F(1) / v[piv];
    for (auto& x : v) x = x * inv;
    for (auto& x : combo) x = x * inv;
    rows.push_back({std::move(v), std::move(combo), piv});
    power = normal_form(power * u, gb.basis);
  }
  throw std::logic_error("minimal_polynomial: no dependency found");
}

}  // namespace dmrep
