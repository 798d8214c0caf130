#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qoper/cartan.hpp"
#include "qoper/polyfield.hpp"

namespace qoper {

struct Tolerances {
  double tau = kTau;
  double bethe_tol = 1e-10;
  int K = -1;  // resonance / q-distinctness window; -1 means 2 max m + max deg Lambda
};

struct QQInstance {
  CartanData cartan;
  Scalar q{};
  std::vector<Scalar> zeta;
  std::vector<CPoly> lambda;
  std::vector<int> degrees;
  Tolerances tol;
  std::uint64_t seed = 0;

  int rank() const { return cartan.rank; }
  int window() const;  // effective K
};

struct QQSolution {
  std::vector<CPoly> qplus;   // monic, deg = m_i
  std::vector<CPoly> qminus;
};

// throws InputError on violated instance invariants
void validate(const QQInstance& inst);
// |q| = 1 is allowed; callers may want to warn
bool q_on_unit_circle(const QQInstance& inst);

QQInstance with_twist(const QQInstance& inst, std::vector<Scalar> zeta);

struct Xi {
  Scalar tilde, plain;  // xi~_i, xi_i
};
std::vector<Xi> xi_factors(const QQInstance& inst);

// Lambda_i(z) prod_{j>i} Q+^j(qz)^{-a_ji} prod_{j<i} Q+^j(z)^{-a_ji}
CPoly qq_rhs(const QQInstance& inst, const std::vector<CPoly>& qplus, int i);
std::vector<CPoly> qq_residual(const QQInstance& inst, const QQSolution& sol);
// max coefficient modulus of residual_i, relative to 1 + |RHS_i|
double qq_residual_norm(const QQInstance& inst, const QQSolution& sol);

struct ResonanceReport {
  bool pass = true;
  std::vector<int> offending_k;  // per node; INT_MIN-free: only meaningful where failed
  std::vector<bool> node_pass;
};
ResonanceReport resonance_check(const QQInstance& inst, int K);

struct QQError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// minimal-degree Q-^i; throws QQError (resonance, or no solution up to the bound)
CPoly solve_q_minus(const QQInstance& inst, const std::vector<CPoly>& qplus, int i, int degree_bound = -1);
std::vector<CPoly> solve_all_q_minus(const QQInstance& inst, const std::vector<CPoly>& qplus);

struct DegenerateRoots : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// per root, in node order then root order: LHS / RHS + 1
std::vector<Scalar> bethe_residual(const QQInstance& inst, const std::vector<CPoly>& qplus);
std::vector<Scalar> bethe_equations(const QQInstance& inst, const std::vector<std::vector<Scalar>>& roots);

struct BetheOptions {
  int seeds = 32;
  double tol = 1e-10;
  bool parallel = true;
  int max_iter = 80;
};

struct BetheResult {
  std::vector<QQSolution> solutions;
  std::vector<std::vector<std::vector<Scalar>>> roots;  // per solution, per node
  int converged = 0, discarded = 0;
  std::vector<std::string> diagnostics;
};

BetheResult solve_bethe(const QQInstance& inst, const BetheOptions& opt);

struct NondegReport {
  bool pass = true;
  std::vector<std::string> witnesses;
};
NondegReport nondegenerate(const QQInstance& inst, const QQSolution& sol, int K);

std::vector<Scalar> cartan_connection(const QQInstance& inst, const QQSolution& sol, Scalar z);

std::string format_scalar(Scalar z);

}  // namespace qoper
