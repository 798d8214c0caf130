#include <sstream>

#include "qoper/wronskian.hpp"

namespace qoper {

namespace {

template <class T, class Vanishes> Gauss<T> gauss_impl(const RatMatrix<T>& M, Vanishes vanishes) {
  const int n = M.size();
  auto e = entries(M);
  for (int k = 1; k <= n; ++k) {
    std::vector<int> idx(k);
    for (int a = 0; a < k; ++a) idx[a] = a;
    if (vanishes(det_generic(select(e, idx, idx)), k))
      throw GaussError(k, "no Gaussian decomposition: principal minor " + std::to_string(k) + " vanishes");
  }
  RatMatrix<T> L = RatMatrix<T>::identity(n), U = M;
  for (int k = 0; k < n; ++k)
    for (int i = k + 1; i < n; ++i) {
      if (U(i, k).is_zero()) continue;
      RatFun<T> f = U(i, k) / U(k, k);
      L(i, k) = f;
      for (int j = k; j < n; ++j) U(i, j) = j == k ? RatFun<T>() : U(i, j) - f * U(k, j);
    }
  Gauss<T> g{L, RatMatrix<T>(n), RatMatrix<T>::identity(n)};
  for (int k = 0; k < n; ++k) {
    g.h(k, k) = U(k, k);
    for (int j = k + 1; j < n; ++j) g.n_plus(k, j) = U(k, j) / U(k, k);
  }
  return g;
}

CRat poly_rat(const CPoly& p) { return CRat(p); }

}  // namespace

Gauss<Rational> gauss_decompose(const QRatMatrix& M) {
  return gauss_impl(M, [](const QRat& d, int) { return d.is_zero(); });
}

Gauss<Scalar> gauss_decompose(const CRatMatrix& M, double tol) {
  auto pts = sample_panel(12, 0.8, 23);
  return gauss_impl(M, [&](const CRat& d, int k) {
    // identically zero iff negligible against the Hadamard bound at every sample point
    for (auto z : pts) {
      try {
        CMat m = M.eval(z);
        double bound = 1;
        for (int a = 0; a < k; ++a) bound *= 1.0 + m.row(a).head(k).norm();
        if (std::abs(d.eval(z)) > tol * bound) return false;
      } catch (const PoleError&) {
      }
    }
    return true;
  });
}

NumericLDU numeric_ldu(const CMat& M, double tol) {
  const int n = static_cast<int>(M.rows());
  CMat U = M, L = CMat::Identity(n, n);
  const double scale = 1.0 + M.cwiseAbs().maxCoeff();
  for (int k = 0; k < n; ++k) {
    if (std::abs(U(k, k)) <= tol * scale)
      throw GaussError(k + 1, "no Gaussian decomposition: principal minor " + std::to_string(k + 1) + " vanishes");
    for (int i = k + 1; i < n; ++i) {
      L(i, k) = U(i, k) / U(k, k);
      U.row(i) -= L(i, k) * U.row(k);
    }
  }
  CMat D = U.diagonal().asDiagonal();
  return {L, D, D.inverse() * U};
}

CRatMatrix build_miura_A(const QQInstance& inst, const QQSolution& sol) {
  const auto& c = inst.cartan;
  if (c.lie_type != 'A') throw InputError("build_miura_A: type A only");
  const int n = c.rank + 1;
  CRatMatrix A = CRatMatrix::identity(n);
  for (int t = 0; t < c.rank; ++t) {
    const int j = c.ordering[t];
    const CPoly& Q = sol.qplus[j];
    CRat g = CRat(q_shift(Q, inst.q) * inst.zeta[j], Q);  // g_j = zeta_j Q(qz) / Q(z)
    CRatMatrix torus = CRatMatrix::identity(n);
    torus(j, j) = g.inverse();
    torus(j + 1, j + 1) = g;
    CRatMatrix ex = CRatMatrix::identity(n);
    ex(j + 1, j) = poly_rat(inst.lambda[j]) / g;
    A = A * torus * ex;
  }
  return A;
}

namespace {

// inverse of a lower-triangular rational matrix by forward substitution
CRatMatrix lower_inverse(const CRatMatrix& v) {
  const int n = v.size();
  CRatMatrix x(n);
  for (int j = 0; j < n; ++j) {
    x(j, j) = v(j, j).inverse();
    for (int i = j + 1; i < n; ++i) {
      CRat s;
      for (int k = j; k < i; ++k)
        if (!v(i, k).is_zero() && !x(k, j).is_zero()) s = s + v(i, k) * x(k, j);
      x(i, j) = -(s / v(i, i));
    }
  }
  return x;
}

double max_rel(const CMat& a, const CMat& b) {
  return (a - b).cwiseAbs().maxCoeff() / (1.0 + b.cwiseAbs().maxCoeff());
}

}  // namespace

MiuraReport miura_from_wronskian(const CRatMatrix& W, const QQInstance& inst, const QQSolution& sol, int panel) {
  if (inst.cartan.lie_type != 'A') throw InputError("miura_from_wronskian: type A only");
  const int n = W.size();
  auto g = gauss_decompose(W);
  MiuraReport rep;
  rep.v = g.n_minus * g.h;
  const CMat Z = twist_matrix(inst.zeta);
  rep.A = lower_inverse(rep.v.q_shifted(inst.q)) * CRatMatrix::constant(Z) * rep.v;
  const CRatMatrix B = build_miura_A(inst, sol);
  auto pts = sample_panel(panel, 0.8, 29);
  // pointwise v(qz)^{-1} Z v(z); evaluating the composed rational entries loses digits
  auto A_at = [&](Scalar z) -> CMat {
    CMat vq = rep.v.eval(inst.q * z);
    return vq.triangularView<Eigen::Lower>().solve(Z * rep.v.eval(z));
  };
  rep.upper_residual = panel_sup(pts, [&](Scalar z) {
                         CMat a = A_at(z);
                         double m = 0;
                         for (int i = 0; i < n; ++i)
                           for (int j = i + 1; j < n; ++j) m = std::max(m, std::abs(a(i, j)));
                         return m / (1.0 + a.cwiseAbs().maxCoeff());
                       }).sup;
  rep.cartan_residual = panel_sup(pts, [&](Scalar z) {
                          CMat a = A_at(z);
                          auto gz = cartan_connection(inst, sol, z);
                          double m = 0;
                          for (int i = 0; i < n - 1; ++i) {
                            Scalar minor = a.topLeftCorner(i + 1, i + 1).determinant();
                            m = std::max(m, std::abs(minor * gz[i] - 1.0));
                          }
                          return m;
                        }).sup;
  rep.product_residual = panel_sup(pts, [&](Scalar z) { return max_rel(A_at(z), B.eval(z)); }).sup;
  return rep;
}

PluckerBlock miura_plucker_blocks(const CRatMatrix& A, const CRatMatrix& v, const QQInstance& inst, int i,
                                  int panel) {
  if (inst.cartan.lie_type != 'A') throw InputError("miura_plucker_blocks: type A only");
  const int n = A.size();
  if (i < 0 || i >= n - 1) throw InputError("miura_plucker_blocks: node out of range");
  const int k = n - i - 1;
  auto basis = subsets(n, k);
  std::vector<int> low, other;
  for (int a = i + 1; a < n; ++a) low.push_back(a);
  other.push_back(i);
  for (int a = i + 2; a < n; ++a) other.push_back(a);
  const int il = subset_index(basis, low), io = subset_index(basis, other);
  const CMat Z = twist_matrix(inst.zeta);
  auto block = [&](const CMat& m) {
    CMat c = compound(m, k);
    CMat b(2, 2);
    b << c(il, il), c(il, io), c(io, il), c(io, io);
    return std::make_pair(b, c);
  };
  auto pts = sample_panel(panel, 0.8, 31);
  PluckerBlock pb;
  pb.residual = panel_sup(pts, [&](Scalar z) {
                  CMat a = block(A.eval(z)).first;
                  CMat vq = block(v.eval(inst.q * z)).first, vz = block(v.eval(z)).first, zb = block(Z).first;
                  return max_rel(a, vq.inverse() * zb * vz);
                }).sup;
  pb.shape_residual = panel_sup(pts, [&](Scalar z) {
                        CMat c = block(A.eval(z)).second;
                        double m = std::abs(c(io, il));
                        // the two-dimensional span must be preserved
                        for (int r = 0; r < c.rows(); ++r)
                          if (r != il && r != io) m = std::max({m, std::abs(c(r, il)), std::abs(c(r, io))});
                        return m / (1.0 + c.cwiseAbs().maxCoeff());
                      }).sup;
  return pb;
}

}  // namespace qoper
