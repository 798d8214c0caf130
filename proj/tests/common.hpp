#pragma once

#include <random>
#include <string>

#include "qoper/instance_io.hpp"
#include "qoper/qq.hpp"

namespace testing_util {

using namespace qoper;

inline QQInstance make_instance(char t, int r, Scalar q, std::vector<Scalar> zeta, std::vector<CPoly> lambda,
                                std::vector<int> degrees, std::vector<int> ordering = {}) {
  QQInstance inst;
  inst.cartan = cartan_matrix(t, r);
  if (!ordering.empty()) inst.cartan = with_ordering(inst.cartan, ordering);
  inst.q = q;
  inst.zeta = std::move(zeta);
  inst.lambda = std::move(lambda);
  inst.degrees = std::move(degrees);
  return inst;
}

inline std::string instance_path(const std::string& name) { return std::string(QOPER_INSTANCES) + "/" + name; }

inline double coeff_dist(const CPoly& a, const CPoly& b) {
  double m = 0;
  for (int k = 0; k <= std::max(a.degree(), b.degree()); ++k) m = std::max(m, std::abs(a.coeff(k) - b.coeff(k)));
  return m;
}

inline double max_abs(const std::vector<Scalar>& v) {
  double m = 0;
  for (auto x : v) m = std::max(m, std::abs(x));
  return m;
}

inline QQSolution solve_first(const QQInstance& inst, int seeds = 16) {
  BetheOptions o;
  o.seeds = seeds;
  auto r = solve_bethe(inst, o);
  if (r.solutions.empty()) throw std::runtime_error("no solution");
  return r.solutions.front();
}

}  // namespace testing_util
