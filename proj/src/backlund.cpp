#include "qoper/backlund.hpp"

#include <algorithm>
#include <sstream>

namespace qoper {

double poly_distance(const CPoly& a, const CPoly& b) {
  double m = 0;
  for (int k = 0; k <= std::max(a.degree(), b.degree()); ++k) m = std::max(m, std::abs(a.coeff(k) - b.coeff(k)));
  return m / (1.0 + std::max(a.norm(), b.norm()));
}

Scalar mu_gauge(const QQSolution& sol, const CartanData& d, int i, Scalar z) {
  Scalar qp = sol.qplus[i](z), qm = sol.qminus[i](z);
  if (qp == Scalar(0)) throw PoleError("mu_gauge: Q+^" + std::to_string(i + 1) + " vanishes at z");
  if (qm == Scalar(0)) throw PoleError("mu_gauge: Q-^" + std::to_string(i + 1) + " vanishes at z");
  Scalar num = 1;
  for (int j = 0; j < d.rank; ++j)
    if (j != i) num *= std::pow(sol.qplus[j](z), -d.a[j][i]);
  return num / (qp * qm);
}

NondegReport backlund_precondition(const QQInstance& inst, const QQSolution& sol, int i) {
  NondegReport rep;
  const auto& d = inst.cartan;
  const int K = inst.window();
  const double tol = inst.tol.tau * 1e3;
  if (sol.qminus[i].is_zero()) {
    rep.pass = false;
    rep.witnesses.push_back("Q-^" + std::to_string(i + 1) + " vanishes identically");
    return rep;
  }
  auto rm = sol.qminus[i].degree() > 0 ? poly_roots(sol.qminus[i]) : std::vector<Scalar>{};
  auto note = [&](const std::string& what, const QDistinct& w) {
    rep.pass = false;
    std::ostringstream os;
    os << what << ": " << format_scalar(w.z1) << " = q^" << w.k << " * " << format_scalar(w.z2);
    rep.witnesses.push_back(os.str());
  };
  for (int k = 0; k < d.rank; ++k) {
    if (d.a[i][k] == 0) continue;
    auto rl = poly_roots(inst.lambda[k]);
    if (auto w = q_distinct_roots(rm, rl, inst.q, K, tol); !w.ok)
      note("Q-^" + std::to_string(i + 1) + " vs Lambda_" + std::to_string(k + 1), w);
    for (int j = 0; j < d.rank; ++j) {
      if (j == i || d.a[j][k] == 0 || sol.qplus[j].degree() < 1) continue;
      if (auto w = q_distinct_roots(rm, poly_roots(sol.qplus[j]), inst.q, K, tol); !w.ok)
        note("Q-^" + std::to_string(i + 1) + " vs Q+^" + std::to_string(j + 1), w);
    }
  }
  if (auto w = q_distinct_roots(rm, sol.qplus[i].degree() > 0 ? poly_roots(sol.qplus[i]) : std::vector<Scalar>{},
                                inst.q, K, tol);
      !w.ok)
    note("Q-^" + std::to_string(i + 1) + " vs Q+^" + std::to_string(i + 1), w);
  return rep;
}

StepResult backlund_step(const QQInstance& inst, const QQSolution& sol, int i, bool monic) {
  if (i < 0 || i >= inst.rank()) throw InputError("backlund_step: node out of range");
  auto pre = backlund_precondition(inst, sol, i);
  if (!pre.pass) {
    std::string msg = "backlund step at node " + std::to_string(i + 1) + " refused";
    for (const auto& w : pre.witnesses) msg += "; " + w;
    throw BacklundRefusal(msg);
  }
  StepResult out;
  out.inst = with_twist(inst, reflect_twist(inst.zeta, i, inst.cartan));
  out.sol.qplus = sol.qplus;
  out.sol.qplus[i] = monic ? sol.qminus[i].monic() : sol.qminus[i];
  out.inst.degrees[i] = out.sol.qplus[i].degree();
  try {
    out.sol.qminus = solve_all_q_minus(out.inst, out.sol.qplus);
  } catch (const QQError& e) {
    throw BacklundRefusal(std::string("backlund step at node ") + std::to_string(i + 1) + ": " + e.what());
  }
  auto& rec = out.record;
  rec.node = i;
  rec.Z_before = inst.zeta;
  rec.Z_after = out.inst.zeta;
  rec.q_swapped_in = out.sol.qplus[i];
  rec.q_minus_new = out.sol.qminus[i];
  if (monic) rec.nondeg_report = nondegenerate(out.inst, out.sol, out.inst.window());
  rec.residual = qq_residual_norm(out.inst, out.sol);
  return out;
}

const std::vector<CPoly>* FullQQSystem::at(const WeylWord& w, const CartanData& d) const {
  int e = group.find(w, d);
  return (e >= 0 && table[e]) ? &*table[e] : nullptr;
}
const std::vector<CPoly>* FullQQSystem::raw_at(const WeylWord& w, const CartanData& d) const {
  int e = group.find(w, d);
  return (e >= 0 && raw[e]) ? &*raw[e] : nullptr;
}

FullQQSystem full_qq_system(const QQInstance& inst, const QQSolution& sol) {
  const auto& d = inst.cartan;
  FullQQSystem f;
  f.group = enumerate_weyl(d);
  const size_t N = f.group.elements.size();
  f.table.resize(N);
  f.raw.resize(N);
  f.qminus.resize(N);
  f.twists.resize(N);
  for (size_t e = 0; e < N; ++e) f.twists[e] = twist_by_word(inst.zeta, f.group.elements[e].word, d);

  struct State {
    QQInstance inst;
    QQSolution mono, raw;
  };
  std::vector<std::optional<State>> st(N);
  st[0] = State{inst, sol, sol};
  f.table[0] = sol.qplus;
  f.raw[0] = sol.qplus;
  f.qminus[0] = sol.qminus;

  auto len = [&](size_t e) { return f.group.elements[e].word.size(); };
  // BFS by length; elements are already in BFS order with lexicographic letters
  for (size_t e = 0; e < N; ++e) {
    if (!st[e]) continue;
    for (int i = 0; i < d.rank; ++i) {
      auto key = reflect_weight(f.group.elements[e].key, i, d);
      int t = f.group.index.at(key);
      if (len(t) != len(e) + 1) continue;
      std::string where = "(w=[";
      for (size_t k = 0; k < f.group.elements[e].word.size(); ++k)
        where += (k ? "," : "") + std::to_string(f.group.elements[e].word[k] + 1);
      where += "], i=" + std::to_string(i + 1) + ")";
      try {
        auto m = backlund_step(st[e]->inst, st[e]->mono, i, true);
        auto r = backlund_step(with_twist(st[e]->inst, st[e]->inst.zeta), st[e]->raw, i, false);
        if (!st[t]) {
          st[t] = State{m.inst, m.sol, r.sol};
          f.table[t] = m.sol.qplus;
          f.raw[t] = r.sol.qplus;
          f.qminus[t] = m.sol.qminus;
          f.max_residual = std::max(f.max_residual, m.record.residual);
        } else {
          double dev = 0;
          for (int j = 0; j < d.rank; ++j) {
            dev = std::max(dev, poly_distance(m.sol.qplus[j], (*f.table[t])[j]));
            dev = std::max(dev, poly_distance(r.sol.qplus[j], (*f.raw[t])[j]));
          }
          f.path_discrepancy = std::max(f.path_discrepancy, dev);
          if (dev > 1e-8) f.path_independent = false;
        }
      } catch (const BacklundRefusal& ex) {
        f.refusals.push_back(where + ": " + ex.what());
        f.generic = false;
      }
    }
  }
  for (size_t e = 0; e < N; ++e)
    if (!f.table[e]) f.generic = false;
  return f;
}

}  // namespace qoper
