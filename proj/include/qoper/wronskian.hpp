#pragma once

#include "qoper/backlund.hpp"
#include "qoper/ratmatrix.hpp"

namespace qoper {

// ---- lifts and Coxeter data (type A, n = r + 1) ----

// s^_i: identity with [[0,1],[-1,0]] on rows/cols (i, i+1); s^_i e_i = -e_{i+1}, s^_i e_{i+1} = e_i
CMat lift_matrix(int i, int n);
// product of lifts along the word, left to right
CMat word_lift(const WeylWord& w, int n);
// Z = prod zeta_i^{-coroot_i} as an n x n diagonal
CMat twist_matrix(const std::vector<Scalar>& zeta);

struct LiftExponents {
  // d[t][u]: coefficient of coroot of node ordering[u] in d of node ordering[t] (positions)
  std::vector<std::vector<int>> d;
  // by_node[a][j]: coefficient of coroot j in d_a
  std::vector<std::vector<int>> by_node;
};
LiftExponents d_exponents(const CartanData& cartan);

// L_i = prod_j Lambda_j^{d_{j,i}}; F_i = 1 / L_i
CRat L_factor(const QQInstance& inst, const LiftExponents& d, int i);

// Computed twice (ordered product of lifted torus factors, and s^{-1} prod Lambda^{d});
// throws ConsistencyError if the two disagree.
CRatMatrix s_lambda_inverse(const QQInstance& inst);

// The Coxeter-ordering required by the Wronskian construction: (r, r-1, ..., 1).
bool wronskian_ordering(const CartanData& d);

struct WronskianBuild {
  CRatMatrix W;
  double closed_form_mismatch = 0;
};
// throws InputError (non-type-A, wrong ordering, missing table entries),
// ConsistencyError (recurrence and closed form disagree)
WronskianBuild build_wronskian(const QQInstance& inst, const FullQQSystem& full);

// ---- minors ----
// determinant of the submatrix with rows u({1..i}) and cols v({1..i}) (i is a 0-based node)
CRat generalized_minor(const CRatMatrix& M, const WeylWord& u, const WeylWord& v, int i, const CartanData& d);
QRat generalized_minor(const QRatMatrix& M, const WeylWord& u, const WeylWord& v, int i, const CartanData& d);
Scalar generalized_minor(const CMat& M, const WeylWord& u, const WeylWord& v, int i, const CartanData& d);

// ---- identity checks ----
struct WronskianResidual {
  int k = 0, i = 0;  // i is a 0-based node
  double sup = 0;
};
std::vector<WronskianResidual> check_wronskian_equations(const CRatMatrix& W, const QQInstance& inst,
                                                         int kmax = -1, int panel = 20);

struct LengthError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// numeric: sup over panel of |residual| / (1 + scale)
double check_fundamental_relation(const CRatMatrix& M, const WeylWord& u, const WeylWord& v, int i,
                                  const CartanData& d, int panel = 20);
double check_fundamental_relation(const CMat& M, const WeylWord& u, const WeylWord& v, int i, const CartanData& d);
// exact
QRat fundamental_residual(const QRatMatrix& M, const WeylWord& u, const WeylWord& v, int i, const CartanData& d);

double check_shifted_minor_relation(const CRatMatrix& W, const QQInstance& inst, const WeylWord& w, int i,
                                    int panel = 20);

// M^1_1 M^2_i - M^1_i M^2_1 - M^{12}_{1i} det M, columns 1-based like the classical statement
template <class R> R lewis_carroll_residual(const std::vector<std::vector<R>>& m, int i) {
  const int n = static_cast<int>(m.size());
  if (n < 3 || i < 2 || i > n) throw InputError("lewis carroll: need n >= 3 and 2 <= i <= n");
  auto drop = [&](std::vector<int> rs, std::vector<int> cs) {
    std::vector<int> rows, cols;
    for (int a = 0; a < n; ++a) {
      if (std::find(rs.begin(), rs.end(), a) == rs.end()) rows.push_back(a);
      if (std::find(cs.begin(), cs.end(), a) == cs.end()) cols.push_back(a);
    }
    return det_generic(select(m, rows, cols));
  };
  const int c = i - 1;
  return drop({0}, {0}) * drop({1}, {c}) - drop({0}, {c}) * drop({1}, {0}) - drop({0, 1}, {0, c}) * det_generic(m);
}
double check_lewis_carroll(const CMat& M, int i);
double check_lewis_carroll(const CRatMatrix& M, int i, int panel = 20);

// ---- Gauss decomposition ----
template <class T> struct Gauss {
  RatMatrix<T> n_minus, h, n_plus;
};
struct GaussError : std::runtime_error {
  int index;  // 1-based principal minor that vanishes
  GaussError(int i, const std::string& m) : std::runtime_error(m), index(i) {}
};
Gauss<Rational> gauss_decompose(const QRatMatrix& M);
Gauss<Scalar> gauss_decompose(const CRatMatrix& M, double tol = 1e-9);
// numeric LDU with unit triangular factors; throws GaussError
struct NumericLDU {
  CMat L, D, U;
};
NumericLDU numeric_ldu(const CMat& M, double tol = 1e-12);

// ---- Miura ----
CRatMatrix build_miura_A(const QQInstance& inst, const QQSolution& sol);

struct MiuraReport {
  CRatMatrix A;        // v(qz)^{-1} Z v(z)
  CRatMatrix v;        // lower-triangular Gauss part n_- h
  double upper_residual = 0;      // A in B_-
  double cartan_residual = 0;     // principal minors vs 1/g_i
  double product_residual = 0;    // vs build_miura_A
};
MiuraReport miura_from_wronskian(const CRatMatrix& W, const QQInstance& inst, const QQSolution& sol,
                                 int panel = 20);

// 2x2 restriction of the (n-i)-th compound to <lowest, e_i . lowest>; i is 0-based node.
struct PluckerBlock {
  double residual = 0;       // A_i vs v_i(qz)^{-1} Z_i v_i(z)
  double shape_residual = 0; // A_i lower triangular
};
PluckerBlock miura_plucker_blocks(const CRatMatrix& A, const CRatMatrix& v, const QQInstance& inst, int i,
                                  int panel = 20);

// ---- Weyl action ----
struct TwistedWronskian {
  CRatMatrix W;
  QQInstance inst;  // same Lambda, twist w(Z)
  CMat lift;        // the signed permutation used
};
TwistedWronskian weyl_twist(const CRatMatrix& W, const WeylWord& w, const QQInstance& inst);

}  // namespace qoper
