#include "qoper/qq.hpp"

#include <algorithm>
#include <sstream>

namespace qoper {

std::string format_scalar(Scalar z) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i)";
  return os.str();
}

int QQInstance::window() const {
  if (tol.K >= 1) return tol.K;
  int mm = 0, ml = 0;
  for (int m : degrees) mm = std::max(mm, m);
  for (const auto& l : lambda) ml = std::max(ml, l.degree());
  return std::max(1, 2 * mm + ml);
}

void validate(const QQInstance& inst) {
  validate(inst.cartan);
  int r = inst.rank();
  if ((int)inst.zeta.size() != r || (int)inst.lambda.size() != r || (int)inst.degrees.size() != r)
    throw InputError("instance lists must have one entry per node");
  if (!finite(inst.q) || std::abs(inst.q) <= inst.tol.tau) throw InputError("q must be finite and nonzero");
  for (int i = 0; i < r; ++i) {
    if (!finite(inst.zeta[i]) || inst.zeta[i] == Scalar(0)) throw InputError("zeta must be finite and nonzero");
    if (inst.lambda[i].degree() < 1) throw InputError("every Lambda_i must be nonconstant");
    for (auto c : inst.lambda[i].coeffs())
      if (!finite(c)) throw InputError("Lambda coefficients must be finite");
    if (inst.degrees[i] < 0) throw InputError("degrees must be nonnegative");
  }
}

bool q_on_unit_circle(const QQInstance& inst) { return std::abs(std::abs(inst.q) - 1.0) <= inst.tol.tau; }

QQInstance with_twist(const QQInstance& inst, std::vector<Scalar> zeta) {
  QQInstance out = inst;
  out.zeta = std::move(zeta);
  return out;
}

namespace {

Scalar zpow(Scalar z, int e) { return e >= 0 ? std::pow(z, e) : Scalar(1) / std::pow(z, -e); }

}  // namespace

std::vector<Xi> xi_factors(const QQInstance& inst) {
  const auto& d = inst.cartan;
  auto pos = d.positions();
  std::vector<Xi> out(d.rank);
  for (int i = 0; i < d.rank; ++i) {
    Scalar t = inst.zeta[i], p = Scalar(1) / inst.zeta[i];
    for (int j = 0; j < d.rank; ++j) {
      if (pos[j] > pos[i]) t *= zpow(inst.zeta[j], d.a[j][i]);
      if (pos[j] < pos[i]) p *= zpow(inst.zeta[j], -d.a[j][i]);
    }
    out[i] = {t, p};
  }
  return out;
}

CPoly qq_rhs(const QQInstance& inst, const std::vector<CPoly>& qplus, int i) {
  const auto& d = inst.cartan;
  auto pos = d.positions();
  CPoly rhs = inst.lambda[i];
  for (int j = 0; j < d.rank; ++j) {
    if (j == i || d.a[j][i] == 0) continue;
    const CPoly f = pos[j] > pos[i] ? q_shift(qplus[j], inst.q) : qplus[j];
    rhs = rhs * f.pow(-d.a[j][i]);
  }
  return rhs;
}

std::vector<CPoly> qq_residual(const QQInstance& inst, const QQSolution& sol) {
  auto xi = xi_factors(inst);
  std::vector<CPoly> out;
  for (int i = 0; i < inst.rank(); ++i) {
    const auto& qp = sol.qplus[i];
    const auto& qm = sol.qminus[i];
    CPoly lhs = xi[i].tilde * (qm * q_shift(qp, inst.q)) - xi[i].plain * (q_shift(qm, inst.q) * qp);
    out.push_back(lhs - qq_rhs(inst, sol.qplus, i));
  }
  return out;
}

double qq_residual_norm(const QQInstance& inst, const QQSolution& sol) {
  auto res = qq_residual(inst, sol);
  double m = 0;
  for (int i = 0; i < inst.rank(); ++i) m = std::max(m, res[i].norm() / (1.0 + qq_rhs(inst, sol.qplus, i).norm()));
  return m;
}

ResonanceReport resonance_check(const QQInstance& inst, int K) {
  const auto& d = inst.cartan;
  ResonanceReport rep;
  rep.node_pass.assign(d.rank, true);
  rep.offending_k.assign(d.rank, 0);
  for (int j = 0; j < d.rank; ++j) {
    Scalar p = 1;
    for (int i = 0; i < d.rank; ++i) p *= zpow(inst.zeta[i], d.a[i][j]);
    for (int k = -K; k <= K; ++k) {
      Scalar qk = zpow(inst.q, k);
      if (std::abs(p - qk) <= inst.tol.tau * (1.0 + std::abs(qk))) {
        rep.node_pass[j] = false;
        rep.offending_k[j] = k;
        rep.pass = false;
        break;
      }
    }
  }
  return rep;
}

CPoly solve_q_minus(const QQInstance& inst, const std::vector<CPoly>& qplus, int i, int degree_bound) {
  // homogeneous solutions z^k Q+(z) appear exactly at resonance xi~/xi = q^k
  int maxdeg_l = 0;
  for (const auto& l : inst.lambda) maxdeg_l = std::max(maxdeg_l, l.degree());
  const int m = qplus[i].degree();
  if (degree_bound < 0) degree_bound = m + maxdeg_l + 2;
  auto res = resonance_check(inst, std::max(inst.window(), degree_bound));
  if (!res.node_pass[i]) {
    std::ostringstream os;
    os << "resonance at node " << i + 1 << " (k = " << res.offending_k[i] << "); Q- is not unique";
    throw QQError(os.str());
  }
  auto xi = xi_factors(inst);
  CPoly rhs = qq_rhs(inst, qplus, i);
  const CPoly qp = qplus[i], qpq = q_shift(qplus[i], inst.q);

  double R = 1.0;
  for (int j = 0; j < inst.rank(); ++j)
    if (qplus[j].degree() > 0)
      for (auto w : poly_roots(qplus[j])) R = std::max(R, std::abs(w));
  for (auto w : poly_roots(inst.lambda[i])) R = std::max(R, std::abs(w));
  R *= 1.1;

  for (int dgr = 0; dgr <= degree_bound; ++dgr) {
    int npts = std::max(rhs.degree() + dgr + 2, dgr + m + 2);
    std::vector<LinearConstraint> cs;
    for (auto z : circle_points(npts, R)) {
      LinearConstraint c{z, {}, rhs(z)};
      Scalar a = xi[i].tilde * qpq(z), b = xi[i].plain * qp(z), zk = 1, qzk = 1, qz = inst.q * z;
      for (int k = 0; k <= dgr; ++k, zk *= z, qzk *= qz) c.form.push_back(a * zk - b * qzk);
      cs.push_back(std::move(c));
    }
    try {
      return linear_coeff_solve(cs, dgr, inst.tol.tau * 10);
    } catch (const SolveError&) {
      continue;
    }
  }
  std::ostringstream os;
  os << "no polynomial Q- exists at this degree bound (node " << i + 1 << ", bound " << degree_bound << ")";
  throw QQError(os.str());
}

std::vector<CPoly> solve_all_q_minus(const QQInstance& inst, const std::vector<CPoly>& qplus) {
  std::vector<CPoly> out;
  for (int i = 0; i < inst.rank(); ++i) out.push_back(solve_q_minus(inst, qplus, i));
  return out;
}

NondegReport nondegenerate(const QQInstance& inst, const QQSolution& sol, int K) {
  NondegReport rep;
  const auto& d = inst.cartan;
  const int r = d.rank;
  auto roots_of = [](const CPoly& p) { return p.degree() > 0 ? poly_roots(p) : std::vector<Scalar>{}; };
  std::vector<std::vector<Scalar>> rp(r), rm(r), rl(r);
  for (int i = 0; i < r; ++i) {
    rp[i] = roots_of(sol.qplus[i]);
    rm[i] = sol.qminus[i].is_zero() ? std::vector<Scalar>{} : roots_of(sol.qminus[i]);
    rl[i] = roots_of(inst.lambda[i]);
    if (sol.qplus[i].is_zero() || std::abs(sol.qplus[i].leading() - 1.0) > inst.tol.tau) {
      rep.pass = false;
      rep.witnesses.push_back("Q+^" + std::to_string(i + 1) + " is not monic");
    }
    if (sol.qminus[i].is_zero()) {
      rep.pass = false;
      rep.witnesses.push_back("Q-^" + std::to_string(i + 1) + " vanishes");
    }
  }
  auto note = [&](const std::string& what, const QDistinct& w) {
    rep.pass = false;
    std::ostringstream os;
    os << what << ": " << format_scalar(w.z1) << " = q^" << w.k << " * " << format_scalar(w.z2);
    rep.witnesses.push_back(os.str());
  };
  const double tol = inst.tol.tau * 1e3;  // roots are only known to roughly sqrt-level for clusters
  auto lbl = [](const char* s, int i) { return std::string(s) + std::to_string(i + 1); };
  for (int j = 0; j < r; ++j) {
    // Q+^j and Q-^j mutually q-distinct
    if (auto w = q_distinct_roots(rp[j], rm[j], inst.q, K, tol); !w.ok) note(lbl("Q+/Q- ", j), w);
    for (int k = 0; k < r; ++k) {
      if (d.a[j][k] == 0) continue;
      // zeros of Q+^j, Q-^j vs zeros of Lambda_k
      if (auto w = q_distinct_roots(rp[j], rl[k], inst.q, K, tol); !w.ok)
        note(lbl("Q+^", j) + " vs " + lbl("Lambda_", k), w);
      if (auto w = q_distinct_roots(rm[j], rl[k], inst.q, K, tol); !w.ok)
        note(lbl("Q-^", j) + " vs " + lbl("Lambda_", k), w);
      for (int i = 0; i < r; ++i) {
        if (i == j || d.a[i][k] == 0) continue;
        if (auto w = q_distinct_roots(rp[j], rp[i], inst.q, K, tol); !w.ok)
          note(lbl("Q+^", j) + " vs " + lbl("Q+^", i), w);
      }
    }
  }
  auto res = resonance_check(inst, K);
  for (int j = 0; j < r; ++j)
    if (!res.node_pass[j]) {
      rep.pass = false;
      rep.witnesses.push_back("resonance at node " + std::to_string(j + 1) + ", k = " + std::to_string(res.offending_k[j]));
    }
  std::sort(rep.witnesses.begin(), rep.witnesses.end());
  rep.witnesses.erase(std::unique(rep.witnesses.begin(), rep.witnesses.end()), rep.witnesses.end());
  return rep;
}

std::vector<Scalar> cartan_connection(const QQInstance& inst, const QQSolution& sol, Scalar z) {
  std::vector<Scalar> g;
  for (int i = 0; i < inst.rank(); ++i) {
    Scalar den = sol.qplus[i](z);
    if (std::abs(den) <= inst.tol.tau * (1.0 + sol.qplus[i].norm()))
      throw PoleError("cartan_connection: Q+^" + std::to_string(i + 1) + " vanishes at the sample point");
    g.push_back(inst.zeta[i] * sol.qplus[i](inst.q * z) / den);
  }
  return g;
}

}  // namespace qoper
