#pragma once

#include <map>
#include <optional>

#include "qoper/qq.hpp"

namespace qoper {

struct BacklundStepRecord {
  int node = 0;
  std::vector<Scalar> Z_before, Z_after;
  CPoly q_swapped_in;
  CPoly q_minus_new;
  NondegReport nondeg_report;  // of the resulting data
  double residual = 0;         // qq_residual_norm of the resulting data
};

struct BacklundRefusal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Scalar mu_gauge(const QQSolution& sol, const CartanData& cartan, int i, Scalar z);

// Conditions under which the step at node i yields nondegenerate data:
// zeros of Q-^i q-distinct from the zeros of Lambda_k and Q+^j that enter node i's neighbourhood.
NondegReport backlund_precondition(const QQInstance& inst, const QQSolution& sol, int i);

struct StepResult {
  QQInstance inst;
  QQSolution sol;
  BacklundStepRecord record;
};

// monic = false keeps the swapped-in Q-^i unnormalised (used for Wronskian columns)
StepResult backlund_step(const QQInstance& inst, const QQSolution& sol, int i, bool monic = true);

struct FullQQSystem {
  WeylGroup group;
  // indexed like group.elements; empty optional = not reached
  std::vector<std::optional<std::vector<CPoly>>> table;      // monic Q+^{w,i}
  std::vector<std::optional<std::vector<CPoly>>> raw;        // unnormalised chain
  std::vector<std::optional<std::vector<CPoly>>> qminus;     // Q-^{w,i}, monic chain
  std::vector<std::vector<Scalar>> twists;                   // w(Z), filled for every element
  std::vector<std::string> refusals;                          // "(w, i): reason"
  bool generic = true;                                        // every element reached, no refusals
  bool path_independent = true;
  double path_discrepancy = 0;  // max over multiply-reached elements
  double max_residual = 0;      // max qq residual over stored entries

  const std::vector<CPoly>* at(const WeylWord& w, const CartanData& d) const;
  const std::vector<CPoly>* raw_at(const WeylWord& w, const CartanData& d) const;
};

FullQQSystem full_qq_system(const QQInstance& inst, const QQSolution& sol);

double poly_distance(const CPoly& a, const CPoly& b);

}  // namespace qoper
