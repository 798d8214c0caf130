#pragma once

#include <algorithm>
#include <ostream>
#include <vector>

#include "qoper/scalar.hpp"

namespace qoper {

// Dense univariate polynomial, coefficients lowest degree first.
// Trailing exact zeros are dropped on construction; the zero polynomial has
// no coefficients and degree -1.
template <class T> class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<T> c) : c_(std::move(c)) { trim_exact(); }
  Poly(std::initializer_list<T> c) : c_(c) { trim_exact(); }

  static Poly constant(const T& a) { return Poly(std::vector<T>{a}); }
  static Poly monomial(const T& a, int k) {
    std::vector<T> c(k + 1, T(0));
    c[k] = a;
    return Poly(std::move(c));
  }
  static Poly from_roots(const std::vector<T>& roots, const T& lead = T(1)) {
    Poly p = constant(lead);
    for (const auto& w : roots) p = p * Poly({-w, T(1)});
    return p;
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(int k) const { return (k >= 0 && k < (int)c_.size()) ? c_[k] : T(0); }
  T leading() const { return c_.empty() ? T(0) : c_.back(); }

  template <class U> U eval(const U& z) const {
    U acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + U(*it);
    return acc;
  }
  T operator()(const T& z) const { return eval<T>(z); }

  double norm() const {
    double m = 0;
    for (const auto& a : c_) m = std::max(m, field<T>::mag(a));
    return m;
  }

  Poly monic() const {
    if (c_.empty()) throw InputError("monic of zero polynomial");
    return *this * (T(1) / c_.back());
  }

  // drop trailing coefficients with modulus <= tol
  Poly trimmed(double tol) const {
    std::vector<T> c = c_;
    while (!c.empty() && field<T>::mag(c.back()) <= tol) c.pop_back();
    return Poly(std::move(c));
  }

  Poly derivative() const {
    std::vector<T> c;
    for (size_t k = 1; k < c_.size(); ++k) c.push_back(c_[k] * T(static_cast<long>(k)));
    return Poly(std::move(c));
  }

  Poly operator-() const {
    std::vector<T> c = c_;
    for (auto& a : c) a = -a;
    return Poly(std::move(c));
  }
  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
    for (size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
    for (size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
    return Poly(std::move(c));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(c));
  }
  friend Poly operator*(const Poly& a, const T& s) {
    std::vector<T> c = a.c_;
    for (auto& x : c) x *= s;
    return Poly(std::move(c));
  }
  friend Poly operator*(const T& s, const Poly& a) { return a * s; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  Poly pow(int e) const {
    Poly r = constant(T(1));
    for (int k = 0; k < e; ++k) r = r * *this;
    return r;
  }

  // p(qz): c_k -> c_k q^k
  Poly q_shifted(const T& q) const {
    std::vector<T> c = c_;
    T f(1);
    for (auto& a : c) {
      a *= f;
      f *= q;
    }
    return Poly(std::move(c));
  }

  // Euclidean division; meaningful over exact fields
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw InputError("division by zero polynomial");
    std::vector<T> r = c_;
    int dd = d.degree();
    if (degree() < dd) return {Poly(), *this};
    std::vector<T> qc(degree() - dd + 1, T(0));
    for (int k = degree(); k >= dd; --k) {
      T f = r[k] / d.leading();
      qc[k - dd] = f;
      for (int j = 0; j <= dd; ++j) r[k - dd + j] -= f * d.c_[j];
      r[k] = T(0);
    }
    r.resize(dd);
    return {Poly(std::move(qc)), Poly(std::move(r))};
  }

 private:
  void trim_exact() {
    while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
  }
  std::vector<T> c_;
};

template <class T> Poly<T> q_shift(const Poly<T>& p, const T& q) {
  if (q == T(0)) throw InputError("q_shift: q must be nonzero");
  return p.q_shifted(q);
}

template <class T> Poly<T> poly_gcd(Poly<T> a, Poly<T> b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

using CPoly = Poly<Scalar>;
using QPoly = Poly<Rational>;

template <class T> std::ostream& operator<<(std::ostream& os, const Poly<T>& p) {
  os << "[";
  for (size_t k = 0; k < p.coeffs().size(); ++k) os << (k ? ", " : "") << p.coeffs()[k];
  return os << "]";
}

}  // namespace qoper
