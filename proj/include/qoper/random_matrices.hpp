#pragma once

#include <random>

#include "qoper/ratmatrix.hpp"

namespace qoper {

inline QPoly random_int_poly(std::mt19937_64& rng, int deg, int range = 5) {
  std::uniform_int_distribution<int> U(-range, range);
  std::vector<Rational> c;
  for (int k = 0; k <= deg; ++k) c.emplace_back(U(rng));
  return QPoly(c);
}

inline QRatMatrix random_int_poly_matrix(std::mt19937_64& rng, int n, int deg) {
  QRatMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = QRat(random_int_poly(rng, deg));
  return m;
}

// det = 1: unit lower * unit upper * diag(f, 1/f, 1, ...), f a ratio of monic linear polynomials
inline QRatMatrix random_unimodular(std::mt19937_64& rng, int n) {
  QRatMatrix L = QRatMatrix::identity(n), U = QRatMatrix::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      L(i, j) = QRat(random_int_poly(rng, 1, 3));
      U(j, i) = QRat(random_int_poly(rng, 1, 3));
    }
  std::uniform_int_distribution<int> A(2, 9);
  QRat f(QPoly{Rational(A(rng)), Rational(1)}, QPoly{Rational(-A(rng)), Rational(1)});
  QRatMatrix D = QRatMatrix::identity(n);
  D(0, 0) = f;
  D(1, 1) = f.inverse();
  // mix with a constant lower-unipotent so that no entry pattern is special
  QRatMatrix C = QRatMatrix::identity(n);
  for (int i = 1; i < n; ++i) C(i, i - 1) = QRat::constant(Rational(A(rng) - 5));
  return C * L * D * U;
}

inline CRatMatrix to_complex(const QRatMatrix& m) {
  auto cp = [](const QPoly& p) {
    std::vector<Scalar> c;
    for (const auto& a : p.coeffs()) c.push_back(field<Rational>::to_complex(a));
    return CPoly(c);
  };
  CRatMatrix out(m.size());
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) out(i, j) = CRat(cp(m(i, j).num()), cp(m(i, j).den()));
  return out;
}

}  // namespace qoper
