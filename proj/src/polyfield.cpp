#include "qoper/polyfield.hpp"

#include <Eigen/Dense>
#include <numbers>

namespace qoper {

std::vector<Scalar> poly_roots(const CPoly& p) {
  int n = p.degree();
  if (n < 1) throw InputError("poly_roots: degree must be at least 1");
  const auto& c = p.coeffs();
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) C(i, n - 1) = -c[i] / c[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
  std::vector<Scalar> roots(es.eigenvalues().data(), es.eigenvalues().data() + n);

  CPoly dp = p.derivative();
  for (auto& w : roots) {
    for (int step = 0; step < 2; ++step) {
      Scalar f = p(w), d = dp(w);
      if (d == Scalar(0)) break;
      Scalar cand = w - f / d;
      // near multiple roots Newton can overshoot; keep only improvements
      if (finite(cand) && std::abs(p(cand)) <= std::abs(f)) w = cand;
    }
  }
  return roots;
}

QDistinct q_distinct_roots(const std::vector<Scalar>& r1, const std::vector<Scalar>& r2, Scalar q, int K,
                           double tol) {
  for (const auto& z1 : r1)
    for (const auto& z2 : r2)
      for (int k = -K; k <= K; ++k)
        if (std::abs(z1 - std::pow(q, k) * z2) <= tol * (1.0 + std::abs(z2))) return {false, z1, z2, k};
  return {};
}

QDistinct q_distinct(const CPoly& p1, const CPoly& p2, Scalar q, int K, double tol) {
  if (p1.is_zero() || p2.is_zero()) throw InputError("q_distinct: zero polynomial");
  std::vector<Scalar> r1 = p1.degree() > 0 ? poly_roots(p1) : std::vector<Scalar>{};
  std::vector<Scalar> r2 = p2.degree() > 0 ? poly_roots(p2) : std::vector<Scalar>{};
  return q_distinct_roots(r1, r2, q, K, tol);
}

LinearConstraint interpolation_constraint(Scalar point, Scalar value, int degree_bound) {
  LinearConstraint c{point, {}, value};
  Scalar pw = 1;
  for (int k = 0; k <= degree_bound; ++k, pw *= point) c.form.push_back(pw);
  return c;
}

CPoly linear_coeff_solve(const std::vector<LinearConstraint>& cs, int degree_bound, double tol) {
  const int n = degree_bound + 1;
  const int m = static_cast<int>(cs.size());
  if (m < n) throw SolveError(SolveError::Underdetermined, "underdetermined: fewer constraints than unknowns");
  Eigen::MatrixXcd A(m, n);
  Eigen::VectorXcd b(m);
  for (int i = 0; i < m; ++i) {
    if ((int)cs[i].form.size() != n) throw InputError("linear_coeff_solve: form length mismatch");
    for (int k = 0; k < n; ++k) A(i, k) = cs[i].form[k];
    b(i) = cs[i].rhs;
  }
  // column equilibration keeps monomial scales from swamping the rank test
  Eigen::VectorXd s(n);
  for (int k = 0; k < n; ++k) {
    s(k) = A.col(k).norm();
    if (s(k) == 0) throw SolveError(SolveError::Underdetermined, "underdetermined: unknown never constrained");
    A.col(k) /= s(k);
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(n - 1) <= 1e-11 * sv(0))
    throw SolveError(SolveError::Underdetermined, "underdetermined: numerical rank below degree_bound + 1");
  Eigen::VectorXcd x = svd.solve(b);
  Eigen::VectorXcd fit = A * x;
  for (int i = 0; i < m; ++i) {
    double scale = 1.0 + std::abs(b(i));
    for (int k = 0; k < n; ++k) scale += std::abs(A(i, k) * x(k));
    if (std::abs(fit(i) - b(i)) > tol * scale)
      throw SolveError(SolveError::Inconsistent, "no polynomial solution at this degree bound");
  }
  // contributions at roundoff level are noise, not coefficients
  const double xmax = x.cwiseAbs().maxCoeff();
  std::vector<Scalar> c(n);
  for (int k = 0; k < n; ++k) c[k] = std::abs(x(k)) <= 1e-13 * xmax ? Scalar(0) : x(k) / s(k);
  return CPoly(std::move(c));
}

std::vector<Scalar> circle_points(int n, double R, double phase) {
  std::vector<Scalar> pts;
  for (int j = 0; j < n; ++j) pts.push_back(std::polar(R, phase + 2 * std::numbers::pi * j / n));
  return pts;
}

}  // namespace qoper
