#pragma once

#include <optional>
#include <vector>

#include "qoper/poly.hpp"
#include "qoper/ratfun.hpp"

namespace qoper {

// Companion-matrix eigenvalues followed by two Newton polishing steps.
std::vector<Scalar> poly_roots(const CPoly& p);

struct QDistinct {
  bool ok = true;
  // witness of the first violation: |z1 - q^k z2| <= tol (1 + |z2|)
  Scalar z1{}, z2{};
  int k = 0;
};

QDistinct q_distinct(const CPoly& p1, const CPoly& p2, Scalar q, int K, double tol = kTau);
QDistinct q_distinct_roots(const std::vector<Scalar>& r1, const std::vector<Scalar>& r2, Scalar q, int K,
                           double tol = kTau);

// sum_k form[k] * c_k = rhs, where c_k are the unknown coefficients
struct LinearConstraint {
  Scalar point{};
  std::vector<Scalar> form;
  Scalar rhs{};
};

LinearConstraint interpolation_constraint(Scalar point, Scalar value, int degree_bound);

struct SolveError : std::runtime_error {
  enum Kind { Underdetermined, Inconsistent } kind;
  SolveError(Kind k, const std::string& m) : std::runtime_error(m), kind(k) {}
};

// Least squares with rank and residual checks; throws SolveError.
CPoly linear_coeff_solve(const std::vector<LinearConstraint>& cs, int degree_bound, double tol = kTau);

// n points on the circle of radius R, rotated off the real axis
std::vector<Scalar> circle_points(int n, double R, double phase = 0.37);

}  // namespace qoper
