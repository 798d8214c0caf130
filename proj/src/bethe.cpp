#include <Eigen/Dense>
#include <algorithm>
#include <random>
#include <numeric>
#include <sstream>

#include "qoper/qq.hpp"

namespace qoper {

namespace {

Scalar zpow(Scalar z, int e) { return e >= 0 ? std::pow(z, e) : Scalar(1) / std::pow(z, -e); }

Scalar eval_roots(const std::vector<Scalar>& roots, Scalar z) {
  Scalar p = 1;
  for (auto w : roots) p *= (z - w);
  return p;
}

void pole(const std::string& what, int node, int k, Scalar w) {
  std::ostringstream os;
  os << "degenerate root configuration: " << what << " at root w_" << k + 1 << "^" << node + 1 << " = "
     << format_scalar(w);
  throw DegenerateRoots(os.str());
}

}  // namespace

std::vector<Scalar> bethe_equations(const QQInstance& inst, const std::vector<std::vector<Scalar>>& roots) {
  const auto& d = inst.cartan;
  auto pos = d.positions();
  const Scalar q = inst.q;
  std::vector<Scalar> out;
  for (int i = 0; i < d.rank; ++i) {
    Scalar twist = 1;
    for (int j = 0; j < d.rank; ++j) twist *= zpow(inst.zeta[j], d.a[j][i]);
    for (size_t k = 0; k < roots[i].size(); ++k) {
      const Scalar w = roots[i][k];
      // Q+^i(qw)/Q+^i(w/q): the l = k factor is (q-1)w / ((1/q-1)w) = -q
      if (w == Scalar(0)) pole("Q+^i(w/q) = 0", i, k, w);
      Scalar lhs = -q * twist;
      for (size_t l = 0; l < roots[i].size(); ++l) {
        if (l == k) continue;
        Scalar den = w / q - roots[i][l];
        if (den == Scalar(0)) pole("Q+^i(w/q) = 0", i, k, w);
        lhs *= (q * w - roots[i][l]) / den;
      }
      // RHS_i(w) / RHS_i(w/q)
      Scalar ln = inst.lambda[i](w), ld = inst.lambda[i](w / q);
      if (ld == Scalar(0)) pole("Lambda_i(w/q) = 0", i, k, w);
      Scalar rhs = ln / ld;
      for (int j = 0; j < d.rank; ++j) {
        if (j == i || d.a[j][i] == 0) continue;
        Scalar num = pos[j] > pos[i] ? eval_roots(roots[j], q * w) : eval_roots(roots[j], w);
        Scalar den = pos[j] > pos[i] ? eval_roots(roots[j], w) : eval_roots(roots[j], w / q);
        if (den == Scalar(0)) pole("neighbouring Q+ vanishes", i, k, w);
        rhs *= zpow(num / den, -d.a[j][i]);
      }
      if (rhs == Scalar(0) || !finite(rhs)) pole("right-hand side vanishes", i, k, w);
      out.push_back(lhs / rhs + 1.0);
    }
  }
  return out;
}

std::vector<Scalar> bethe_residual(const QQInstance& inst, const std::vector<CPoly>& qplus) {
  std::vector<std::vector<Scalar>> roots;
  for (int i = 0; i < inst.rank(); ++i) {
    if (qplus[i].degree() != inst.degrees[i]) throw InputError("bethe_residual: deg Q+^i differs from m_i");
    roots.push_back(qplus[i].degree() > 0 ? poly_roots(qplus[i]) : std::vector<Scalar>{});
  }
  return bethe_equations(inst, roots);
}

namespace {

using Roots = std::vector<std::vector<Scalar>>;

Roots unflatten(const Eigen::VectorXcd& x, const std::vector<int>& m) {
  Roots r(m.size());
  int o = 0;
  for (size_t i = 0; i < m.size(); ++i)
    for (int k = 0; k < m[i]; ++k) r[i].push_back(x(o++));
  return r;
}

Eigen::VectorXcd residual_vec(const QQInstance& inst, const Eigen::VectorXcd& x) {
  auto e = bethe_equations(inst, unflatten(x, inst.degrees));
  return Eigen::Map<Eigen::VectorXcd>(e.data(), e.size());
}

struct SeedOutcome {
  bool ok = false;
  Eigen::VectorXcd x;
  std::string why;
};

// damped Newton; the system is holomorphic so a complex central difference is a valid Jacobian
SeedOutcome newton(const QQInstance& inst, Eigen::VectorXcd x, const BetheOptions& opt) {
  const int n = static_cast<int>(x.size());
  SeedOutcome out;
  try {
    Eigen::VectorXcd f = residual_vec(inst, x);
    for (int it = 0; it < opt.max_iter; ++it) {
      if (f.cwiseAbs().maxCoeff() <= opt.tol * 1e-3) break;
      Eigen::MatrixXcd J(n, n);
      for (int j = 0; j < n; ++j) {
        Scalar h = 1e-7 * (1.0 + std::abs(x(j)));
        Eigen::VectorXcd xp = x, xm = x;
        xp(j) += h;
        xm(j) -= h;
        J.col(j) = (residual_vec(inst, xp) - residual_vec(inst, xm)) / (2.0 * h);
      }
      Eigen::FullPivLU<Eigen::MatrixXcd> lu(J);
      if (lu.rank() < n) {
        out.why = "singular Jacobian";
        return out;
      }
      Eigen::VectorXcd dx = lu.solve(f);
      double f0 = f.norm(), lam = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 12; ++ls, lam *= 0.5) {
        Eigen::VectorXcd xn = x - lam * dx;
        try {
          Eigen::VectorXcd fn = residual_vec(inst, xn);
          if (fn.allFinite() && fn.norm() < f0) {
            x = xn;
            f = fn;
            moved = true;
            break;
          }
        } catch (const DegenerateRoots&) {
        }
      }
      if (!moved) break;
    }
    if (!f.allFinite() || f.cwiseAbs().maxCoeff() > opt.tol) {
      out.why = "did not converge";
      return out;
    }
    out.ok = true;
    out.x = x;
  } catch (const DegenerateRoots& e) {
    out.why = e.what();
  }
  return out;
}

bool same_multiset(const std::vector<Scalar>& a, const std::vector<Scalar>& b, double tol) {
  std::vector<bool> used(b.size(), false);
  for (auto w : a) {
    bool hit = false;
    for (size_t l = 0; l < b.size(); ++l)
      if (!used[l] && std::abs(w - b[l]) <= tol * (1.0 + std::abs(w))) {
        used[l] = hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

}  // namespace

BetheResult solve_bethe(const QQInstance& inst, const BetheOptions& opt) {
  validate(inst);
  BetheResult res;
  const int K = inst.window();
  if (auto rc = resonance_check(inst, K); !rc.pass) {
    for (int j = 0; j < inst.rank(); ++j)
      if (!rc.node_pass[j])
        res.diagnostics.push_back("resonance at node " + std::to_string(j + 1) + ", k = " +
                                  std::to_string(rc.offending_k[j]));
    return res;
  }
  const int n = std::accumulate(inst.degrees.begin(), inst.degrees.end(), 0);

  auto complete = [&](const Roots& roots) -> bool {
    QQSolution sol;
    for (int i = 0; i < inst.rank(); ++i) sol.qplus.push_back(CPoly::from_roots(roots[i]));
    try {
      sol.qminus = solve_all_q_minus(inst, sol.qplus);
    } catch (const QQError& e) {
      res.discarded++;
      res.diagnostics.push_back(std::string("discarded: ") + e.what());
      return false;
    }
    double qn = qq_residual_norm(inst, sol);
    if (qn > 10 * opt.tol) {
      res.discarded++;
      res.diagnostics.push_back("discarded: QQ residual " + std::to_string(qn) + " above 10 tol");
      return false;
    }
    res.solutions.push_back(std::move(sol));
    res.roots.push_back(roots);
    return true;
  };

  if (n == 0) {
    complete(Roots(inst.rank()));
    res.converged = 1;
    return res;
  }

  // starting points are drawn serially so the run is reproducible for any thread count
  double R = 1.0;
  for (const auto& l : inst.lambda)
    for (auto w : poly_roots(l)) R = std::max(R, std::abs(w));
  std::mt19937_64 rng(inst.seed);
  std::normal_distribution<double> N(0.0, R);
  std::vector<Eigen::VectorXcd> starts(opt.seeds, Eigen::VectorXcd(n));
  for (auto& s : starts)
    for (int k = 0; k < n; ++k) s(k) = Scalar(N(rng), N(rng));

  std::vector<SeedOutcome> outcomes(opt.seeds);
#pragma omp parallel for schedule(dynamic) if (opt.parallel)
  for (int s = 0; s < opt.seeds; ++s) outcomes[s] = newton(inst, starts[s], opt);

  std::vector<Roots> found;
  for (int s = 0; s < opt.seeds; ++s) {
    if (!outcomes[s].ok) continue;
    res.converged++;
    Roots r = unflatten(outcomes[s].x, inst.degrees);
    // coinciding roots inside one node are spurious fixed points
    bool coincide = false;
    for (const auto& node : r)
      for (size_t a = 0; a < node.size(); ++a)
        for (size_t b = a + 1; b < node.size(); ++b)
          coincide |= std::abs(node[a] - node[b]) <= 1e-6 * (1.0 + std::abs(node[a]));
    if (coincide) {
      res.discarded++;
      res.diagnostics.push_back("discarded seed " + std::to_string(s) + ": coinciding roots");
      continue;
    }
    bool dup = false;
    for (const auto& f : found) {
      bool all = true;
      for (int i = 0; i < inst.rank() && all; ++i) all = same_multiset(r[i], f[i], 1e-7);
      if (all) {
        dup = true;
        break;
      }
    }
    if (dup) continue;
    found.push_back(r);
  }
  for (auto& r : found) {
    for (auto& node : r)
      std::sort(node.begin(), node.end(), [](Scalar a, Scalar b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
      });
    complete(r);
  }
  if (res.solutions.empty()) res.diagnostics.push_back("no seed converged to an admissible solution");
  return res;
}

}  // namespace qoper
