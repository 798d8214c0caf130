#pragma once

#include "qoper/poly.hpp"

namespace qoper {

// num/den with den monic. Over exact fields common factors are cancelled;
// over complex doubles no gcd is attempted (it would be ill-posed).
template <class T> class RatFun {
 public:
  RatFun() : num_(), den_(Poly<T>::constant(T(1))) {}
  RatFun(const Poly<T>& n) : num_(n), den_(Poly<T>::constant(T(1))) {}  // NOLINT implicit
  RatFun(const Poly<T>& n, const Poly<T>& d) : num_(n), den_(d) { normalize(); }
  static RatFun constant(const T& a) { return RatFun(Poly<T>::constant(a)); }

  const Poly<T>& num() const { return num_; }
  const Poly<T>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  template <class U> U eval(const U& z) const {
    U d = den_.template eval<U>(z);
    if (d == U(0)) throw PoleError("rational function evaluated at a pole");
    if constexpr (!field<T>::exact) {
      double scale = 0, az = std::abs(z), pw = 1;
      for (const auto& c : den_.coeffs()) {
        scale += std::abs(c) * pw;
        pw *= az;
      }
      if (std::abs(d) <= 1e-13 * scale) throw PoleError("rational function evaluated next to a pole");
    }
    return num_.template eval<U>(z) / d;
  }
  T operator()(const T& z) const { return eval<T>(z); }

  RatFun q_shifted(const T& q) const { return RatFun(num_.q_shifted(q), den_.q_shifted(q)); }

  RatFun operator-() const { return RatFun(-num_, den_, raw{}); }
  friend RatFun operator+(const RatFun& a, const RatFun& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RatFun(a.num_ + b.num_, a.den_);
    return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }
  friend RatFun operator*(const RatFun& a, const RatFun& b) {
    if (a.is_zero() || b.is_zero()) return RatFun();
    return RatFun(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFun operator/(const RatFun& a, const RatFun& b) {
    if (b.is_zero()) throw InputError("division by zero rational function");
    return RatFun(a.num_ * b.den_, a.den_ * b.num_);
  }
  friend RatFun operator*(const RatFun& a, const T& s) { return RatFun(a.num_ * s, a.den_, raw{}); }

  // cross-multiplied, so unreduced representatives compare equal
  friend bool operator==(const RatFun& a, const RatFun& b) { return a.num_ * b.den_ == b.num_ * a.den_; }
  RatFun inverse() const { return RatFun(den_, num_); }
  RatFun pow(int e) const { return e >= 0 ? RatFun(num_.pow(e), den_.pow(e)) : inverse().pow(-e); }

 private:
  struct raw {};
  RatFun(const Poly<T>& n, const Poly<T>& d, raw) : num_(n), den_(d) {}
  void normalize() {
    if (den_.is_zero()) throw InputError("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = Poly<T>::constant(T(1));
      return;
    }
    if constexpr (field<T>::exact) {
      auto g = poly_gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = num_.divmod(g).first;
        den_ = den_.divmod(g).first;
      }
    }
    T lc = den_.leading();
    if (lc != T(1)) {
      T inv = T(1) / lc;
      num_ = num_ * inv;
      den_ = den_ * inv;
    }
  }
  Poly<T> num_, den_;
};

using CRat = RatFun<Scalar>;
using QRat = RatFun<Rational>;

}  // namespace qoper
