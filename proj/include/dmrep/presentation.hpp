#pragma once

// Two-generator presentation <J, R | J^3, R^p, (RJ)^{2k}, braid-type relator>
// of the 3-fold type one Deligne-Mostow lattice (p, k), and words in J, R.

#include "dmrep/linalg.hpp"

#include <cctype>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dmrep {

class PresentationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Gen { J, R };

struct Letter {
  Gen g;
  int e;  ///< positive exponent, as written
  friend bool operator==(const Letter& a, const Letter& b) { return a.g == b.g && a.e == b.e; }
};

/// Word in J (order 3) and R (order p). Exponents are positive: J^{-1} is
/// stored as J^2 and R^{-1} as R^{p-1}. Adjacent letters with the same
/// generator are merged by adding exponents; exponents are not reduced modulo
/// the order (J^3 evaluates to a scalar, not to the identity), see
/// free_reduce() for the projective normal form.
class Word {
 public:
  explicit Word(int p = 3) : p_(p) {
    if (p < 2) throw PresentationError("Word: order of R must be at least 2");
  }
  Word(int p, std::vector<Letter> letters) : Word(p) {
    for (const auto& l : letters) push(l.g, l.e);
  }

  static Word J(int p, int e = 1) { return Word(p, {{Gen::J, e}}); }
  static Word R(int p, int e = 1) { return Word(p, {{Gen::R, e}}); }

  /// Text syntax: J, J2, J^m, R, R^m (R followed by digits also allowed),
  /// juxtaposition or spaces, and parenthesised groups with ^n.
  static Word parse(const std::string& text, int p);

  int p() const { return p_; }
  int order(Gen g) const { return g == Gen::J ? 3 : p_; }
  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t length() const { return letters_.size(); }

  /// Append g^e, merging with the last letter. Negative exponents are
  /// replaced by their positive representative modulo the order.
  void push(Gen g, long e) {
    const int ord = order(g);
    if (e < 0) e = ((e % ord) + ord) % ord;
    if (e == 0) return;
    if (!letters_.empty() && letters_.back().g == g) {
      letters_.back().e += static_cast<int>(e);
      return;
    }
    letters_.push_back({g, static_cast<int>(e)});
  }

  /// Projective normal form: exponents reduced modulo the generator orders,
  /// trivial letters dropped and neighbours merged.
  Word free_reduce() const {
    std::vector<Letter> out;
    for (const auto& l : letters_) {
      const int ord = order(l.g);
      int e = l.e % ord;
      if (!out.empty() && out.back().g == l.g) {
        e = (out.back().e + e) % ord;
        out.pop_back();
      }
      if (e) out.push_back({l.g, e});
    }
    Word r(p_);
    r.letters_ = std::move(out);
    return r;
  }

  friend Word operator*(const Word& a, const Word& b) {
    if (a.p_ != b.p_) throw PresentationError("Word: mismatched R orders");
    Word r = a;
    for (const auto& l : b.letters_) r.push(l.g, l.e);
    return r;
  }
  Word pow(unsigned n) const {
    Word r(p_);
    for (unsigned i = 0; i < n; ++i) r = r * *this;
    return r;
  }
  /// Projective inverse, with g^e inverted as g^{(-e) mod order}.
  Word inverse() const {
    Word r(p_);
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) r.push(it->g, -static_cast<long>(it->e));
    return r;
  }
  friend bool operator==(const Word& a, const Word& b) { return a.p_ == b.p_ && a.letters_ == b.letters_; }

  /// Total exponents (of J, of R) as written.
  std::pair<long, long> exponent_sums() const {
    long a = 0, b = 0;
    for (const auto& l : letters_) (l.g == Gen::J ? a : b) += l.e;
    return {a, b};
  }

  std::string to_string() const {
    if (letters_.empty()) return "1";
    std::string s;
    for (const auto& l : letters_) {
      if (!s.empty()) s += " ";
      if (l.g == Gen::J) {
        s += l.e == 1 ? "J" : "J" + std::to_string(l.e);
      } else {
        s += l.e == 1 ? "R" : "R^" + std::to_string(l.e);
      }
    }
    return s;
  }

 private:
  int p_;
  std::vector<Letter> letters_;
};

namespace detail {

class WordParser {
 public:
  WordParser(const std::string& s, int p) : s_(s), p_(p) {}

  Word parse() {
    Word w = sequence();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw PresentationError("word parse error at position " + std::to_string(pos_) + ": " + msg + " in '" + s_ + "'");
  }
  void skip() {
    while (pos_ < s_.size() && (std::isspace(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '*')) ++pos_;
  }
  bool at_digit() const { return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])); }
  long integer() {
    bool neg = false;
    if (pos_ < s_.size() && s_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    if (!at_digit()) fail("expected exponent");
    long v = 0;
    while (at_digit()) {
      v = v * 10 + (s_[pos_++] - '0');
      if (v > 1'000'000) fail("exponent too large");
    }
    return neg ? -v : v;
  }
  long exponent() {
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      return integer();
    }
    if (at_digit()) return integer();
    return 1;
  }
  static Word power(const Word& w, long e) {
    Word base = e < 0 ? w.inverse() : w;
    return base.pow(static_cast<unsigned>(e < 0 ? -e : e));
  }
  Word sequence() {
    Word w(p_);
    while (true) {
      skip();
      if (pos_ >= s_.size() || s_[pos_] == ')') break;
      char c = s_[pos_];
      if (c == '(') {
        ++pos_;
        Word inner = sequence();
        skip();
        if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected )");
        ++pos_;
        w = w * power(inner, exponent());
      } else if (c == 'J' || c == 'R') {
        ++pos_;
        long e = exponent();
        w.push(c == 'J' ? Gen::J : Gen::R, e);
      } else if (c == '1' && w.empty()) {
        ++pos_;
      } else {
        fail(std::string("unexpected '") + c + "'");
      }
    }
    return w;
  }

  std::string s_;
  int p_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Word Word::parse(const std::string& text, int p) { return detail::WordParser(text, p).parse(); }

/// Commutator [a, b] = a b a^{-1} b^{-1}.
inline Word commutator(const Word& a, const Word& b) { return a * b * a.inverse() * b.inverse(); }

// ---------------------------------------------------------------------------

struct Presentation {
  int p = 3;
  int k = 6;
  std::vector<Word> relators;
  std::vector<std::string> relator_names;

  /// Ball 5-tuple (1/2 - 1/p three times, 1/2 + 1/p - 1/k, 2/p + 1/k).
  std::vector<Rational> ball_tuple() const {
    Rational a = Rational(1, 2) - Rational(1, p);
    Rational b = Rational(1, 2) + Rational(1, p) - Rational(1, k);
    Rational c = Rational(2, p) + Rational(1, k);
    for (auto* x : {&a, &b, &c}) x->canonicalize();
    return {a, a, a, b, c};
  }
  /// Non-compact iff two entries of the ball 5-tuple sum to 1.
  bool compact() const {
    auto t = ball_tuple();
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t j = i + 1; j < t.size(); ++j)
        if (t[i] + t[j] == 1) return false;
    return true;
  }

  Word J(int e = 1) const { return Word::J(p, e); }
  Word R(int e = 1) const { return Word::R(p, e); }
  /// R_2 = J R J^{-1}
  Word R2() const { return J() * R() * J(2); }
  /// P = R_1 R_2
  Word P() const { return R() * R2(); }
};

/// Validity of (p, k): 3 <= p <= 6, k >= 1, k <= 2p/(p-2) and 2/p + 1/k < 1.
inline bool valid_lattice(int p, int k) {
  if (p < 3 || p > 6 || k < 1) return false;
  if (k * (p - 2) > 2 * p) return false;
  return 2 * k + p < p * k;
}

/// The nine lattices accepted by valid_lattice.
inline std::vector<std::pair<int, int>> all_lattices() {
  std::vector<std::pair<int, int>> out;
  for (int p = 3; p <= 6; ++p)
    for (int k = 1; k <= 2 * p; ++k)
      if (valid_lattice(p, k)) out.emplace_back(p, k);
  return out;
}

inline Presentation make_presentation(int p, int k) {
  if (!valid_lattice(p, k))
    throw PresentationError("(" + std::to_string(p) + "," + std::to_string(k) + ") is not a 3-fold type one lattice");
  Presentation pr;
  pr.p = p;
  pr.k = k;
  pr.relators.push_back(Word::J(p, 3));
  pr.relators.push_back(Word::R(p, p));
  pr.relators.push_back((pr.R() * pr.J()).pow(static_cast<unsigned>(2 * k)));
  const Word R = pr.R(), Ri = pr.R(p - 1), J = pr.J(), J2 = pr.J(2);
  pr.relators.push_back(R * J * R * J2 * R * J * Ri * J2 * Ri * J * Ri * J2);
  pr.relator_names = {"J^3", "R^" + std::to_string(p), "(RJ)^" + std::to_string(2 * k), "braid"};
  return pr;
}

// ---------------------------------------------------------------------------

/// Product of the word's letters with J^e and R^e as repeated products;
/// `reduce` is applied to the partial product after every multiplication.
template <class T, class Reduce>
Matrix<T> evaluate_word(const Word& w, const Matrix<T>& J, const Matrix<T>& R, const Matrix<T>& id, Reduce&& reduce) {
  if (!J.square() || !R.square() || J.rows() != R.rows() || id.rows() != J.rows())
    throw DimensionError("evaluate_word: dimension mismatch");
  if (w.empty()) return id;
  Matrix<T> acc;
  bool first = true;
  for (const auto& l : w.letters()) {
    const Matrix<T>& g = l.g == Gen::J ? J : R;
    for (int i = 0; i < l.e; ++i) {
      if (first) {
        acc = g;
        first = false;
      } else {
        acc = reduce(acc * g);
      }
    }
  }
  return acc;
}

template <class T>
Matrix<T> evaluate_word(const Word& w, const Matrix<T>& J, const Matrix<T>& R, const Matrix<T>& id) {
  return evaluate_word(w, J, R, id, [](Matrix<T> m) { return m; });
}

template <class T>
Matrix<T> evaluate_word(const Word& w, const Matrix<T>& J, const Matrix<T>& R) {
  return evaluate_word(w, J, R, Matrix<T>::identity(J.rows()));
}

// ---------------------------------------------------------------------------

struct CuspWords {
  Word R2;
  Word A1;
  Word center;
  std::vector<Word> parabolic_gens;
};

/// Cusp group words R_2 = J R J^2, A_1 = J R^2 J^2 R^2 J, the centraliser
/// generator (R_2 A_1)^2 and generators [A_1,R_2], [A_1,R_2^2], (R_2 A_1)^2 of
/// the purely parabolic subgroup (given for the (3,6) lattice).
inline CuspWords cusp_words(int p = 3) {
  CuspWords c{Word(p), Word(p), Word(p), {}};
  c.R2 = Word::parse("J R J2", p);
  c.A1 = Word::parse("J R^2 J2 R^2 J", p);
  c.center = (c.R2 * c.A1).pow(2);
  c.parabolic_gens = {commutator(c.A1, c.R2), commutator(c.A1, c.R2.pow(2)), c.center};
  return c;
}

}  // namespace dmrep
