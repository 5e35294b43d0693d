#pragma once

// Small dense matrices over an exact field (Rational, CycloNum) or a ring
// (multivariate polynomials; only ring operations are used there).

#include "dmrep/cyclotomic.hpp"

#include <initializer_list>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dmrep {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : r_(rows), c_(cols), a_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols) : Matrix(rows, cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    r_ = rows.size();
    c_ = r_ ? rows.begin()->size() : 0;
    for (const auto& row : rows) {
      if (row.size() != c_) throw DimensionError("Matrix: ragged initializer");
      a_.insert(a_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n, const T& one, const T& zero) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }
  static Matrix identity(std::size_t n) { return identity(n, T(1), T(0)); }

  std::size_t rows() const noexcept { return r_; }
  std::size_t cols() const noexcept { return c_; }
  bool square() const noexcept { return r_ == c_; }

  T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
  const std::vector<T>& data() const { return a_; }

  template <class F>
  auto map(F&& f) const {
    using U = decltype(f(std::declval<const T&>()));
    Matrix<U> out;
    out.reset(r_, c_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.raw().push_back(f(a_[i]));
    return out;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.check_same(b);
    Matrix r = a;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
    return r;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.check_same(b);
    Matrix r = a;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= b.a_[i];
    return r;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_ || a.c_ == 0) throw DimensionError("Matrix product: dimension mismatch");
    Matrix r;
    r.reset(a.r_, b.c_);
    for (std::size_t i = 0; i < a.r_; ++i) {
      for (std::size_t j = 0; j < b.c_; ++j) {
        T acc = a(i, 0) * b(0, j);
        for (std::size_t k = 1; k < a.c_; ++k) acc += a(i, k) * b(k, j);
        r.a_.push_back(std::move(acc));
      }
    }
    return r;
  }
  friend Matrix operator*(const T& s, const Matrix& m) {
    Matrix r = m;
    for (auto& x : r.a_) x = s * x;
    return r;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_; }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  Matrix transpose() const {
    Matrix t;
    t.reset(c_, r_);
    for (std::size_t j = 0; j < c_; ++j)
      for (std::size_t i = 0; i < r_; ++i) t.a_.push_back((*this)(i, j));
    return t;
  }
  /// Conjugate transpose (complex conjugation of entries).
  Matrix adjoint() const {
    Matrix t;
    t.reset(c_, r_);
    for (std::size_t j = 0; j < c_; ++j)
      for (std::size_t i = 0; i < r_; ++i) t.a_.push_back(conj((*this)(i, j)));
    return t;
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!dmrep::is_zero(x)) return false;
    return true;
  }

  /// lambda if this == lambda * Id.
  std::optional<T> scalar_value() const {
    if (!square() || r_ == 0) return std::nullopt;
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) {
        if (i == j) {
          if ((*this)(i, i) != (*this)(0, 0)) return std::nullopt;
        } else if (!dmrep::is_zero((*this)(i, j))) {
          return std::nullopt;
        }
      }
    return (*this)(0, 0);
  }

  T trace() const {
    T s = (*this)(0, 0);
    for (std::size_t i = 1; i < r_; ++i) s += (*this)(i, i);
    return s;
  }

  Matrix pow(unsigned e) const {
    if (!square()) throw DimensionError("Matrix pow: not square");
    if (e == 0) return identity(r_);
    Matrix r = *this;
    for (unsigned i = 1; i < e; ++i) r = r * (*this);
    return r;
  }

  void reset(std::size_t rows, std::size_t cols) {
    r_ = rows;
    c_ = cols;
    a_.clear();
    a_.reserve(rows * cols);
  }
  std::vector<T>& raw() { return a_; }
  const std::vector<T>& raw() const { return a_; }

 private:
  void check_same(const Matrix& b) const {
    if (r_ != b.r_ || c_ != b.c_) throw DimensionError("Matrix: dimension mismatch");
  }

  std::size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
};

// ---------------------------------------------------------------------------
// Exact elimination over a field

/// Reduced row echelon form in place; returns pivot columns.
template <class F>
std::vector<std::size_t> rref(Matrix<F>& m) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    F inv = F(1) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = m(r, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      F f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

template <class F>
std::size_t rank(Matrix<F> m) {
  return rref(m).size();
}

/// Basis of the right kernel {v : m v = 0}, as column vectors.
template <class F>
std::vector<std::vector<F>> kernel(Matrix<F> m) {
  auto piv = rref(m);
  std::vector<bool> is_piv(m.cols(), false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::vector<F>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_piv[free]) continue;
    std::vector<F> v(m.cols(), F(0));
    v[free] = F(1);
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class F>
F determinant(Matrix<F> m) {
  if (!m.square()) throw DimensionError("determinant: not square");
  const std::size_t n = m.rows();
  F det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(m(p, c))) ++p;
    if (p == n) return F(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    F inv = F(1) / m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(m(i, c))) continue;
      F f = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
  const std::size_t n = m.rows();
  Matrix<F> aug(n, 2 * n, F(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = F(1);
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  Matrix<F> out(n, n, F(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

/// Characteristic polynomial det(t I - m), coefficients low -> high
/// (Faddeev-LeVerrier).
template <class F>
std::vector<F> characteristic_polynomial(const Matrix<F>& m) {
  const std::size_t n = m.rows();
  std::vector<F> c(n + 1, F(0));
  c[n] = F(1);
  Matrix<F> mk = Matrix<F>(n, n, F(0));
  Matrix<F> id = Matrix<F>::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * (mk + c[n - k + 1] * id);
    F tr = mk.trace();
    c[n - k] = -(tr * F(Rational(1, static_cast<long>(k))));
  }
  return c;
}

/// Roots of a polynomial (coefficients low -> high) among the N-th roots of
/// unity, as (exponent j of zeta_N^j, multiplicity).
inline std::vector<std::pair<int, int>> roots_of_unity_roots(std::vector<CycloNum> f, int N) {
  std::vector<std::pair<int, int>> out;
  for (auto& c : f) c = c.embed(std::lcm(c.conductor(), N));
  for (int j = 0; j < N && f.size() > 1; ++j) {
    CycloNum z = CycloNum::zeta(N, j);
    int mult = 0;
    while (f.size() > 1) {
      // synthetic division by (t - z)
      std::vector<CycloNum> q(f.size() - 1);
      CycloNum acc = f.back();
      for (std::size_t i = f.size() - 1; i-- > 0;) {
        q[i] = acc;
        acc = f[i] + acc * z;
      }
      if (!acc.is_zero()) break;
      f = std::move(q);
      ++mult;
    }
    if (mult) out.emplace_back(j, mult);
  }
  return out;
}

/// Column vector helpers.
template <class F>
std::vector<F> mat_vec(const Matrix<F>& m, const std::vector<F>& v) {
  std::vector<F> out(m.rows(), F(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

/// True if u and v span the same line (both nonzero).
template <class F>
bool proportional(const std::vector<F>& u, const std::vector<F>& v) {
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j)
      if (u[i] * v[j] != u[j] * v[i]) return false;
  return true;
}

}  // namespace dmrep
