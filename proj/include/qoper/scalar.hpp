#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace qoper {

using Scalar = std::complex<double>;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr double kTau = 1e-10;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// evaluation landed on (or numerically next to) a zero of a denominator
struct PoleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// two routes to the same object disagree; signals a convention bug, not bad input
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Scalar make_scalar(double re, double im = 0.0) {
  if (!std::isfinite(re) || !std::isfinite(im))
    throw InputError("non-finite scalar");
  return {re, im};
}

inline bool finite(const Scalar& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Uniform access to the two coefficient fields.
template <class T> struct field;

template <> struct field<Scalar> {
  static constexpr bool exact = false;
  static double mag(const Scalar& c) { return std::abs(c); }
  static Scalar to_complex(const Scalar& c) { return c; }
};

template <> struct field<Rational> {
  static constexpr bool exact = true;
  static double mag(const Rational& c) { return std::abs(c.convert_to<double>()); }
  static Scalar to_complex(const Rational& c) { return {c.convert_to<double>(), 0.0}; }
};

// relative comparison with scale (1 + magnitude)
inline bool close(const Scalar& a, const Scalar& b, double tol) {
  return std::abs(a - b) <= tol * (1.0 + std::max(std::abs(a), std::abs(b)));
}

}  // namespace qoper
