#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "qoper/ratfun.hpp"

namespace qoper {

using CMat = Eigen::MatrixXcd;

template <class T> class RatMatrix {
 public:
  RatMatrix() = default;
  explicit RatMatrix(int n) : n_(n), e_(n * n) {}

  static RatMatrix identity(int n) {
    RatMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = RatFun<T>::constant(T(1));
    return m;
  }
  static RatMatrix diagonal(const std::vector<RatFun<T>>& d) {
    RatMatrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.n_; ++i) m(i, i) = d[i];
    return m;
  }
  template <class M> static RatMatrix constant(const M& a) {
    RatMatrix m(static_cast<int>(a.rows()));
    for (int i = 0; i < m.n_; ++i)
      for (int j = 0; j < m.n_; ++j) m(i, j) = RatFun<T>::constant(T(a(i, j)));
    return m;
  }

  int size() const { return n_; }
  RatFun<T>& operator()(int i, int j) { return e_[i * n_ + j]; }
  const RatFun<T>& operator()(int i, int j) const { return e_[i * n_ + j]; }

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    RatMatrix c(a.n_);
    for (int i = 0; i < a.n_; ++i)
      for (int k = 0; k < a.n_; ++k) {
        if (a(i, k).is_zero()) continue;
        for (int j = 0; j < a.n_; ++j)
          if (!b(k, j).is_zero()) c(i, j) = c(i, j) + a(i, k) * b(k, j);
      }
    return c;
  }
  friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
    RatMatrix c(a.n_);
    for (int k = 0; k < a.n_ * a.n_; ++k) c.e_[k] = a.e_[k] - b.e_[k];
    return c;
  }

  RatMatrix q_shifted(const T& q) const {
    RatMatrix c(n_);
    for (int k = 0; k < n_ * n_; ++k) c.e_[k] = e_[k].q_shifted(q);
    return c;
  }

  // evaluate at a complex point (exact entries are converted)
  CMat eval(Scalar z) const {
    CMat m(n_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        const auto& f = (*this)(i, j);
        if (f.is_zero()) {
          m(i, j) = 0;
          continue;
        }
        if constexpr (field<T>::exact) {
          RatFun<Scalar> g(to_c(f.num()), to_c(f.den()));
          m(i, j) = g.eval(z);
        } else {
          m(i, j) = f.eval(z);
        }
      }
    return m;
  }

  int degree_bound() const {
    int d = 0;
    for (const auto& f : e_) d = std::max(d, std::max(f.num().degree(), 0) + f.den().degree());
    return d;
  }

 private:
  static Poly<Scalar> to_c(const Poly<T>& p) {
    std::vector<Scalar> c;
    for (const auto& a : p.coeffs()) c.push_back(field<T>::to_complex(a));
    return Poly<Scalar>(c);
  }
  int n_ = 0;
  std::vector<RatFun<T>> e_;
};

using CRatMatrix = RatMatrix<Scalar>;
using QRatMatrix = RatMatrix<Rational>;

// Lexicographically ordered k-subsets of {0..n-1}.
std::vector<std::vector<int>> subsets(int n, int k);
int subset_index(const std::vector<std::vector<int>>& basis, const std::vector<int>& s);

// k-th compound: entries are k x k minors, rows/cols in lexicographic subset order
CMat compound(const CMat& m, int k);
Scalar submatrix_det(const CMat& m, const std::vector<int>& rows, const std::vector<int>& cols);

template <class R> R ring_one() {
  if constexpr (std::is_constructible_v<R, int>) return R(1);
  else return R::constant(1);
}

// Laplace expansion over any commutative ring; fine for n <= 5
template <class R> R det_generic(const std::vector<std::vector<R>>& m) {
  const size_t n = m.size();
  if (n == 0) return ring_one<R>();
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  R acc{};
  bool first = true;
  for (size_t j = 0; j < n; ++j) {
    std::vector<std::vector<R>> sub;
    for (size_t i = 1; i < n; ++i) {
      std::vector<R> row;
      for (size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      sub.push_back(std::move(row));
    }
    R term = m[0][j] * det_generic(sub);
    if (first) {
      acc = (j % 2) ? R(-term) : R(term);
      first = false;
    } else {
      acc = (j % 2) ? R(acc - term) : R(acc + term);
    }
  }
  return acc;
}

template <class R>
std::vector<std::vector<R>> select(const std::vector<std::vector<R>>& m, const std::vector<int>& rows,
                                   const std::vector<int>& cols) {
  std::vector<std::vector<R>> s;
  for (int i : rows) {
    std::vector<R> row;
    for (int j : cols) row.push_back(m[i][j]);
    s.push_back(std::move(row));
  }
  return s;
}

template <class T> std::vector<std::vector<RatFun<T>>> entries(const RatMatrix<T>& M) {
  std::vector<std::vector<RatFun<T>>> e(M.size(), std::vector<RatFun<T>>(M.size()));
  for (int i = 0; i < M.size(); ++i)
    for (int j = 0; j < M.size(); ++j) e[i][j] = M(i, j);
  return e;
}

inline std::vector<std::vector<Scalar>> entries(const CMat& M) {
  std::vector<std::vector<Scalar>> e(M.rows(), std::vector<Scalar>(M.cols()));
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j) e[i][j] = M(i, j);
  return e;
}

// Deterministic sample panel: points spread over an annulus, away from the origin.
std::vector<Scalar> sample_panel(int count, double radius = 0.9, std::uint64_t salt = 0);

// sup over the panel of a per-point residual; points where the callback throws PoleError are
// nudged and retried a bounded number of times. OpenMP-parallel unless `parallel` is false.
struct PanelResult {
  double sup = 0;
  int points = 0, retries = 0, failed = 0;
};
PanelResult panel_sup(const std::vector<Scalar>& pts, const std::function<double(Scalar)>& f, bool parallel = true);

// process-wide default for panel evaluation; the benchmark and the serial reference flip it
void set_parallel_panels(bool on);
bool parallel_panels();

}  // namespace qoper
