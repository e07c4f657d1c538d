#ifndef CYCLIDE_SERIES_POLY_HPP
#define CYCLIDE_SERIES_POLY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace cyclide {

/// Truncated power series c_0 + c_1 t + ... + c_N t^N.
///
/// All arithmetic is exact up to the truncation order N; products and
/// compositions of series with different orders truncate to the smaller one.
template <class T>
class SeriesPoly {
 public:
  explicit SeriesPoly(std::size_t order) : c_(order + 1, T(0)) {}

  SeriesPoly(std::size_t order, std::initializer_list<T> coeffs) : SeriesPoly(order) {
    std::size_t k = 0;
    for (const T& v : coeffs) {
      if (k > order) break;
      c_[k++] = v;
    }
  }

  static SeriesPoly constant(T value, std::size_t order) { return SeriesPoly(order, {value}); }

  /// The series t.
  static SeriesPoly variable(std::size_t order) { return SeriesPoly(order, {T(0), T(1)}); }

  std::size_t order() const { return c_.size() - 1; }
  const T& operator[](std::size_t k) const { return c_[k]; }
  T& operator[](std::size_t k) { return c_[k]; }
  std::span<const T> coefficients() const { return c_; }

  T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }

  SeriesPoly& operator+=(const SeriesPoly& o) {
    truncate(o.order());
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  SeriesPoly& operator-=(const SeriesPoly& o) {
    truncate(o.order());
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  SeriesPoly& operator*=(const T& s) {
    for (T& v : c_) v *= s;
    return *this;
  }
  SeriesPoly& operator+=(const T& s) {
    c_[0] += s;
    return *this;
  }

  friend SeriesPoly operator+(SeriesPoly a, const SeriesPoly& b) { return a += b; }
  friend SeriesPoly operator-(SeriesPoly a, const SeriesPoly& b) { return a -= b; }
  friend SeriesPoly operator*(SeriesPoly a, const T& s) { return a *= s; }
  friend SeriesPoly operator*(const T& s, SeriesPoly a) { return a *= s; }
  friend SeriesPoly operator+(SeriesPoly a, const T& s) { return a += s; }
  friend SeriesPoly operator+(const T& s, SeriesPoly a) { return a += s; }
  friend SeriesPoly operator-(SeriesPoly a) { return a *= T(-1); }
  friend SeriesPoly operator-(const T& s, SeriesPoly a) { return (a *= T(-1)) += s; }

  friend SeriesPoly operator*(const SeriesPoly& a, const SeriesPoly& b) {
    const std::size_t n = std::min(a.order(), b.order());
    SeriesPoly r(n);
    for (std::size_t i = 0; i <= n; ++i) {
      if (a.c_[i] == T(0)) continue;
      for (std::size_t j = 0; i + j <= n; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
  }

  SeriesPoly& operator*=(const SeriesPoly& o) { return *this = *this * o; }

  /// 1/f, requires f(0) != 0.
  SeriesPoly reciprocal() const {
    if (c_[0] == T(0)) throw std::domain_error("SeriesPoly::reciprocal: zero constant term");
    SeriesPoly r(order());
    r.c_[0] = T(1) / c_[0];
    for (std::size_t n = 1; n <= order(); ++n) {
      T acc(0);
      for (std::size_t k = 1; k <= n; ++k) acc += c_[k] * r.c_[n - k];
      r.c_[n] = -acc / c_[0];
    }
    return r;
  }

  friend SeriesPoly operator/(const SeriesPoly& a, const SeriesPoly& b) { return a * b.reciprocal(); }

  SeriesPoly pow(unsigned n) const {
    SeriesPoly r = constant(T(1), order());
    SeriesPoly base = *this;
    while (n) {
      if (n & 1u) r *= base;
      n >>= 1u;
      if (n) base *= base;
    }
    return r;
  }

  /// f^alpha for real alpha, requires f(0) > 0 (J.C.P. Miller recurrence).
  SeriesPoly pow(T alpha) const {
    using std::pow;
    if (!(c_[0] > T(0))) throw std::domain_error("SeriesPoly::pow: constant term must be positive");
    SeriesPoly r(order());
    r.c_[0] = pow(c_[0], alpha);
    for (std::size_t n = 1; n <= order(); ++n) {
      T acc(0);
      for (std::size_t k = 1; k <= n; ++k)
        acc += (alpha * T(k) - T(n - k)) * c_[k] * r.c_[n - k];
      r.c_[n] = acc / (T(n) * c_[0]);
    }
    return r;
  }

  /// f(g(t)), requires g(0) == 0. Horner evaluation in the series ring.
  SeriesPoly compose(const SeriesPoly& inner) const {
    if (inner.c_[0] != T(0)) throw std::domain_error("SeriesPoly::compose: inner series needs g(0) = 0");
    const std::size_t n = std::min(order(), inner.order());
    SeriesPoly r = constant(c_[n], n);
    SeriesPoly g = inner;
    g.truncate(n);
    for (std::size_t k = n; k-- > 0;) {
      r = r * g;
      r.c_[0] += c_[k];
    }
    return r;
  }

  SeriesPoly derivative() const {
    SeriesPoly r(order() == 0 ? 0 : order() - 1);
    for (std::size_t k = 1; k <= order(); ++k) r.c_[k - 1] = T(k) * c_[k];
    return r;
  }

  T evaluate(const T& t) const {
    T acc(0);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * t + c_[k];
    return acc;
  }

 private:
  void truncate(std::size_t order) {
    if (order + 1 < c_.size()) c_.resize(order + 1);
  }

  std::vector<T> c_;
};

}  // namespace cyclide

#endif  // CYCLIDE_SERIES_POLY_HPP
