#include "qoper/wronskian.hpp"

#include <sstream>

namespace qoper {

namespace {

void require_type_a(const CartanData& d, const char* what) {
  if (d.lie_type != 'A') throw InputError(std::string(what) + ": type A only");
}

double rel(Scalar a, Scalar b, double scale) { return std::abs(a - b) / (1.0 + scale); }

CRat poly_rat(const CPoly& p) { return CRat(p); }

int panel_size(const CRatMatrix& M, int requested) {
  return std::min(200, std::max(requested, 2 * M.degree_bound() + 1));
}

}  // namespace

CMat lift_matrix(int i, int n) {
  CMat m = CMat::Identity(n, n);
  m(i, i) = 0;
  m(i + 1, i + 1) = 0;
  m(i, i + 1) = 1;
  m(i + 1, i) = -1;
  return m;
}

CMat word_lift(const WeylWord& w, int n) {
  CMat m = CMat::Identity(n, n);
  for (int s : w) m = m * lift_matrix(s, n);
  return m;
}

CMat twist_matrix(const std::vector<Scalar>& zeta) {
  const int r = static_cast<int>(zeta.size()), n = r + 1;
  CMat z = CMat::Identity(n, n);
  for (int k = 0; k < n; ++k) {
    if (k < r) z(k, k) /= zeta[k];
    if (k >= 1) z(k, k) *= zeta[k - 1];
  }
  return z;
}

LiftExponents d_exponents(const CartanData& c) {
  const int r = c.rank;
  auto pos = c.positions();
  LiftExponents le;
  le.by_node.assign(r, std::vector<int>(r, 0));
  for (int a = 0; a < r; ++a) {
    // in the inverse-ordered product the factors after node a are the nodes preceding it in
    // the ordering; conjugating Lambda_a^{coroot_a} past them applies s_j(x) = x - <alpha_j, x> coroot_j,
    // which unrolls into the alternating sums of Cartan-entry products
    std::vector<int> x(r, 0);
    x[a] = 1;
    for (int t = pos[a] - 1; t >= 0; --t) {
      int j = c.ordering[t], pair = 0;
      for (int i = 0; i < r; ++i) pair += x[i] * c.a[i][j];
      x[j] -= pair;
    }
    le.by_node[a] = x;
  }
  le.d.assign(r, std::vector<int>(r, 0));
  for (int t = 0; t < r; ++t)
    for (int u = 0; u < r; ++u) le.d[t][u] = le.by_node[c.ordering[t]][c.ordering[u]];
  return le;
}

CRat L_factor(const QQInstance& inst, const LiftExponents& d, int i) {
  CRat L = CRat::constant(1.0);
  for (int j = 0; j < inst.rank(); ++j)
    if (d.by_node[j][i] != 0) L = L * poly_rat(inst.lambda[j]).pow(d.by_node[j][i]);
  return L;
}

namespace {

CRatMatrix coroot_torus(int j, const CRat& x, int n) {
  auto m = CRatMatrix::identity(n);
  m(j, j) = x;
  m(j + 1, j + 1) = x.inverse();
  return m;
}

// signed permutation of s^{-1}: product of lifts in the inverse ordering
CMat coxeter_inverse_lift(const CartanData& c) {
  const int n = c.rank + 1;
  CMat p = CMat::Identity(n, n);
  for (int t = c.rank - 1; t >= 0; --t) p = p * lift_matrix(c.ordering[t], n);
  return p;
}

// diagonal entries of prod_j Lambda_j^{d_j}
std::vector<CRat> d_torus(const QQInstance& inst, const LiftExponents& le) {
  const int r = inst.rank(), n = r + 1;
  std::vector<CRat> diag(n, CRat::constant(1.0));
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < r; ++j) {
      int e = (k < r ? le.by_node[j][k] : 0) - (k >= 1 ? le.by_node[j][k - 1] : 0);
      if (e != 0) diag[k] = diag[k] * poly_rat(inst.lambda[j]).pow(e);
    }
  return diag;
}

}  // namespace

CRatMatrix s_lambda_inverse(const QQInstance& inst) {
  const auto& c = inst.cartan;
  require_type_a(c, "s_lambda_inverse");
  const int n = c.rank + 1;
  CRatMatrix a = CRatMatrix::identity(n);
  for (int t = c.rank - 1; t >= 0; --t) {
    int j = c.ordering[t];
    a = a * CRatMatrix::constant(lift_matrix(j, n)) * coroot_torus(j, poly_rat(inst.lambda[j]), n);
  }
  auto le = d_exponents(c);
  CRatMatrix b = CRatMatrix::constant(coxeter_inverse_lift(c)) * CRatMatrix::diagonal(d_torus(inst, le));
  auto pr = panel_sup(sample_panel(12, 1.3, 7), [&](Scalar z) {
    CMat A = a.eval(z), B = b.eval(z);
    return (A - B).cwiseAbs().maxCoeff() / (1.0 + A.cwiseAbs().maxCoeff());
  });
  if (pr.sup > 1e-10) {
    std::ostringstream os;
    os << "s_lambda_inverse: ordered product and d-exponent form differ (" << pr.sup << ")";
    throw ConsistencyError(os.str());
  }
  return a;
}

bool wronskian_ordering(const CartanData& d) {
  for (int t = 0; t < d.rank; ++t)
    if (d.ordering[t] != d.rank - 1 - t) return false;
  return true;
}

WronskianBuild build_wronskian(const QQInstance& inst, const FullQQSystem& full) {
  const auto& c = inst.cartan;
  require_type_a(c, "build_wronskian");
  if (!wronskian_ordering(c))
    throw InputError("build_wronskian: the Wronskian realisation needs ordering (r, ..., 1)");
  const int r = c.rank, n = r + 1;

  std::vector<CPoly> f;
  for (int k = 0; k < n; ++k) {
    WeylWord w;
    for (int s = 0; s < k; ++s) w.push_back(s);
    const auto* e = full.raw_at(w, c);
    if (!e) throw InputError("build_wronskian: full QQ-system lacks the entry for s_1...s_" + std::to_string(k));
    f.push_back((*e)[0]);
  }
  const CRatMatrix S = s_lambda_inverse(inst);
  const CMat Zinv = twist_matrix(inst.zeta).inverse();

  WronskianBuild out;
  out.W = CRatMatrix(n);
  for (int k = 0; k < n; ++k) out.W(k, 0) = poly_rat(f[k]);

  // recurrence: W(q^l z) e_1 = Z^l W(z) S(z) S(qz) ... S(q^{l-1} z) e_1
  CRatMatrix prod = CRatMatrix::identity(n);
  Scalar ql = 1;
  CMat Zl = CMat::Identity(n, n);
  std::vector<std::vector<CRat>> closed(n, std::vector<CRat>(n));

  auto le = d_exponents(c);
  std::vector<CRat> L(n, CRat::constant(1.0));
  for (int m = 1; m < n; ++m) L[m] = L_factor(inst, le, m - 1);
  CMat P = coxeter_inverse_lift(c);

  for (int l = 1; l < n; ++l) {
    prod = prod * S.q_shifted(ql);
    ql *= inst.q;
    Zl = Zl * Zinv;
    int col = -1;
    for (int k = 0; k < n; ++k)
      if (!prod(k, 0).is_zero()) {
        if (col >= 0) throw ConsistencyError("build_wronskian: s^{-1} is not a monomial matrix");
        col = k;
      }
    if (col != l) throw ConsistencyError("build_wronskian: Coxeter lift does not advance the highest-weight column");
    const CRat denom = prod(col, 0);
    // closed form: prod_{m=1}^{l} eps_m D_m(q^{l-m} z), D_m = L_m / L_{m-1}
    CRat cf = CRat::constant(1.0);
    Scalar qs = 1;
    for (int m = l; m >= 1; --m) {
      Scalar eps = P(m, m - 1);
      cf = cf * ((L[m] / L[m - 1]).q_shifted(qs) * eps);
      qs *= inst.q;
    }
    for (int k = 0; k < n; ++k) {
      CRat shifted = poly_rat(f[k].q_shifted(ql)) * Zl(k, k);
      out.W(k, col) = shifted / denom;
      closed[k][col] = shifted / cf;
    }
  }
  auto pr = panel_sup(sample_panel(12, 0.8, 3), [&](Scalar z) {
    double m = 0;
    for (int k = 0; k < n; ++k)
      for (int j = 1; j < n; ++j) {
        Scalar a = out.W(k, j).eval(z), b = closed[k][j].eval(z);
        m = std::max(m, rel(a, b, std::abs(a)));
      }
    return m;
  });
  out.closed_form_mismatch = pr.sup;
  if (pr.sup > 1e-9) {
    std::ostringstream os;
    os << "build_wronskian: recurrence and closed form differ (" << pr.sup << ")";
    throw ConsistencyError(os.str());
  }
  return out;
}

CRat generalized_minor(const CRatMatrix& M, const WeylWord& u, const WeylWord& v, int i, const CartanData& d) {
  return det_generic(select(entries(M), column_index_set(u, i, d), column_index_set(v, i, d)));
}
QRat generalized_minor(const QRatMatrix& M, const WeylWord& u, const WeylWord& v, int i, const CartanData& d) {
  return det_generic(select(entries(M), column_index_set(u, i, d), column_index_set(v, i, d)));
}
Scalar generalized_minor(const CMat& M, const WeylWord& u, const WeylWord& v, int i, const CartanData& d) {
  return submatrix_det(M, column_index_set(u, i, d), column_index_set(v, i, d));
}

std::vector<WronskianResidual> check_wronskian_equations(const CRatMatrix& W, const QQInstance& inst, int kmax,
                                                         int panel) {
  require_type_a(inst.cartan, "check_wronskian_equations");
  const int r = inst.rank(), n = r + 1;
  if (kmax < 0) kmax = coxeter_number(inst.cartan) - 1;
  const CRatMatrix S = s_lambda_inverse(inst);
  const CMat Z = twist_matrix(inst.zeta);
  auto pts = sample_panel(panel_size(W, panel), 0.8, 11);
  std::vector<WronskianResidual> out;
  for (int k = 0; k <= kmax; ++k)
    for (int i = 0; i < r; ++i) {
      auto pr = panel_sup(pts, [&](Scalar z) {
        CMat rhs = W.eval(z);
        Scalar qz = 1;
        for (int l = 0; l <= k; ++l, qz *= inst.q) rhs = rhs * S.eval(qz * z);
        CMat Zk = CMat::Identity(n, n);
        for (int l = 0; l <= k; ++l) Zk = Zk * Z;
        rhs = Zk * rhs;
        CMat lhs = W.eval(std::pow(inst.q, k + 1) * z);
        CMat cl = compound(lhs, i + 1), cr = compound(rhs, i + 1);
        Eigen::VectorXcd dl = cl.col(0), dr = cr.col(0);
        return (dl - dr).cwiseAbs().maxCoeff() / (1.0 + dr.cwiseAbs().maxCoeff());
      });
      out.push_back({k, i, pr.sup});
    }
  return out;
}

namespace {

template <class Minor, class Pow>
auto fundamental_terms(const WeylWord& u, const WeylWord& v, int i, const CartanData& d, Minor minor, Pow pw) {
  require_type_a(d, "check_fundamental_relation");
  if (!length_increases(u, i, d) || !length_increases(v, i, d)) {
    std::ostringstream os;
    os << "length condition fails for node " << i + 1 << " with word " << (length_increases(u, i, d) ? "v" : "u");
    throw LengthError(os.str());
  }
  WeylWord us = u, vs = v;
  us.push_back(i);
  vs.push_back(i);
  auto lhs = minor(u, v, i) * minor(us, vs, i) - minor(us, v, i) * minor(u, vs, i);
  auto rhs = pw(minor(u, v, i), 0);  // = 1, typed
  bool first = true;
  for (int j = 0; j < d.rank; ++j) {
    if (j == i || d.a[j][i] == 0) continue;
    auto t = pw(minor(u, v, j), -d.a[j][i]);
    rhs = first ? t : rhs * t;
    first = false;
  }
  return std::make_pair(lhs, rhs);
}

}  // namespace

double check_fundamental_relation(const CMat& M, const WeylWord& u, const WeylWord& v, int i, const CartanData& d) {
  auto mn = [&](const WeylWord& a, const WeylWord& b, int j) { return generalized_minor(M, a, b, j, d); };
  auto [lhs, rhs] = fundamental_terms(u, v, i, d, mn, [](Scalar x, int e) { return std::pow(x, e); });
  // scale by the cancelling products, not just the right-hand side
  WeylWord us = u, vs = v;
  us.push_back(i);
  vs.push_back(i);
  double scale = std::abs(mn(u, v, i) * mn(us, vs, i)) + std::abs(mn(us, v, i) * mn(u, vs, i)) + std::abs(rhs);
  return std::abs(lhs - rhs) / (1.0 + scale);
}

double check_fundamental_relation(const CRatMatrix& M, const WeylWord& u, const WeylWord& v, int i,
                                  const CartanData& d, int panel) {
  // validate the length condition eagerly so the error is not swallowed by the panel
  if (!length_increases(u, i, d) || !length_increases(v, i, d))
    throw LengthError("length condition fails for node " + std::to_string(i + 1));
  return panel_sup(sample_panel(panel, 0.8, 5),
                   [&](Scalar z) { return check_fundamental_relation(M.eval(z), u, v, i, d); })
      .sup;
}

QRat fundamental_residual(const QRatMatrix& M, const WeylWord& u, const WeylWord& v, int i, const CartanData& d) {
  auto [lhs, rhs] = fundamental_terms(
      u, v, i, d, [&](const WeylWord& a, const WeylWord& b, int j) { return generalized_minor(M, a, b, j, d); },
      [](const QRat& x, int e) { return x.pow(e); });
  return lhs - rhs;
}

double check_shifted_minor_relation(const CRatMatrix& W, const QQInstance& inst, const WeylWord& w, int i,
                                    int panel) {
  const auto& c = inst.cartan;
  require_type_a(c, "check_shifted_minor_relation");
  const int n = c.rank + 1;
  const CMat P = coxeter_inverse_lift(c);
  auto rows = column_index_set(w, i, c);
  std::vector<int> cols(i + 1);
  for (int k = 0; k <= i; ++k) cols[k] = k;
  // prod_j zeta_j^{<coroot_j, w omega_i>}, w omega_i = sum of e_k over the row set
  Scalar pref = 1;
  for (int j = 0; j < c.rank; ++j) {
    int e = 0;
    for (int k : rows) e += (k == j) - (k == j + 1);
    pref *= std::pow(inst.zeta[j], e);
  }
  const CRat F = L_factor(inst, d_exponents(c), i).inverse();
  (void)n;
  return panel_sup(sample_panel(panel_size(W, panel), 0.8, 13), [&](Scalar z) {
           Scalar lhs = submatrix_det(W.eval(z) * P, rows, cols);
           Scalar rhs = pref * F.eval(z) * submatrix_det(W.eval(inst.q * z), rows, cols);
           return rel(lhs, rhs, std::abs(rhs));
         })
      .sup;
}

double check_lewis_carroll(const CMat& M, int i) {
  auto e = entries(M);
  Scalar res = lewis_carroll_residual(e, i);
  double scale = std::pow(1.0 + M.cwiseAbs().maxCoeff(), 2.0 * M.rows() - 2);
  return std::abs(res) / scale;
}

double check_lewis_carroll(const CRatMatrix& M, int i, int panel) {
  return panel_sup(sample_panel(panel, 0.8, 17), [&](Scalar z) { return check_lewis_carroll(M.eval(z), i); }).sup;
}

TwistedWronskian weyl_twist(const CRatMatrix& W, const WeylWord& w, const QQInstance& inst) {
  require_type_a(inst.cartan, "weyl_twist");
  TwistedWronskian out;
  out.lift = word_lift(w, inst.rank() + 1);
  out.W = CRatMatrix::constant(out.lift) * W;
  out.inst = with_twist(inst, twist_by_word(inst.zeta, w, inst.cartan));
  return out;
}

}  // namespace qoper
