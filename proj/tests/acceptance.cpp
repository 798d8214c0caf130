// Acceptance run: one line per criterion, nonzero exit if any criterion fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "common.hpp"
#include "qoper/random_matrices.hpp"
#include "qoper/report.hpp"
#include "qoper/wronskian.hpp"

using namespace qoper;
using namespace testing_util;
using C = Scalar;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string sci(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.2e", x);
  return b;
}

struct Solved {
  QQInstance inst;
  QQSolution sol;
  FullQQSystem full;
  CRatMatrix W;
};

Solved solved(const std::string& file) {
  auto f = load_instance(instance_path(file));
  Solved s{f.inst, *f.solution, full_qq_system(f.inst, *f.solution), {}};
  s.W = build_wronskian(s.inst, s.full).W;
  return s;
}

QQSolution perturbed(QQSolution s) {
  auto c = s.qplus[0].coeffs();
  c[0] += 1e-3;
  s.qplus[0] = CPoly(c);
  return s;
}

Outcome c1() {
  auto inst = load_instance(instance_path("a1_closed_form.json")).inst;
  auto r = solve_bethe(inst, BetheOptions{});
  if (r.solutions.size() != 1) return {false, std::to_string(r.solutions.size()) + " solutions"};
  double dw = std::abs(r.roots[0][0][0] - 1.0 / 9.0);
  return {dw <= 1e-10, "|w - 1/9| = " + sci(dw)};
}

Outcome c2() {
  std::vector<QQInstance> cases;
  for (int m = 1; m <= 3; ++m)
    cases.push_back(make_instance('A', 1, C(0.35, 0.05), {C(1.5, 0.2)},
                                  {CPoly::from_roots({1.0, C(-0.5, 0.3), C(0.2, -1.1)})}, {m}));
  cases.push_back(load_instance(instance_path("a2_solve.json")).inst);
  double worst = 0, best_perturbed = 1e300;
  int count = 0;
  for (const auto& inst : cases) {
    auto r = solve_bethe(inst, BetheOptions{});
    if (r.solutions.empty()) return {false, "no solution for an instance"};
    for (const auto& s : r.solutions) {
      ++count;
      worst = std::max({worst, max_abs(bethe_residual(inst, s.qplus)), qq_residual_norm(inst, s)});
      auto p = perturbed(s);
      best_perturbed = std::min({best_perturbed, max_abs(bethe_residual(inst, p.qplus)), qq_residual_norm(inst, p)});
    }
  }
  return {worst <= 1e-8 && best_perturbed > 1e-8, std::to_string(count) + " solutions, max residual " + sci(worst) +
                                                       ", min perturbed residual " + sci(best_perturbed)};
}

Outcome c3() {
  auto pts = sample_panel(20, 0.8, 41);
  double worst = 0, control = 1e300;
  for (auto file : {"sl2_solved.json"}) {
    auto s = solved(file);
    worst = std::max(worst, panel_sup(pts, [&](C z) { return std::abs(s.W.eval(z).determinant() - 1.0); }).sup);
    // non-solution control: Q- replaced by a perturbed polynomial in the first column
    FullQQSystem bad = s.full;
    int e = bad.group.find({0}, s.inst.cartan);
    auto c = (*bad.raw[e])[0].coeffs();
    c[0] += 1e-3;
    (*bad.raw[e])[0] = CPoly(c);
    auto W = build_wronskian(s.inst, bad).W;
    control = std::min(control, panel_sup(pts, [&](C z) { return std::abs(W.eval(z).determinant() - 1.0); }).sup);
  }
  // a second solved SL(2) instance straight from the solver
  auto inst = load_instance(instance_path("a1_closed_form.json")).inst;
  auto sol = solve_first(inst);
  auto W = build_wronskian(inst, full_qq_system(inst, sol)).W;
  worst = std::max(worst, panel_sup(pts, [&](C z) { return std::abs(W.eval(z).determinant() - 1.0); }).sup);
  return {worst <= 1e-9 && control > 1e-6, "sup |det W - 1| = " + sci(worst) + ", control " + sci(control)};
}

Outcome c4() {
  auto s = solved("sl3_solved.json");
  double worst = 0;
  std::ostringstream rows;
  for (const auto& row : check_wronskian_equations(s.W, s.inst, 2)) {
    worst = std::max(worst, row.sup);
    rows << " k=" << row.k << ",i=" << row.i + 1 << ":" << sci(row.sup);
  }
  return {worst <= 1e-8, "rows" + rows.str()};
}

Outcome c5() {
  std::mt19937_64 rng(5);
  int nonzero = 0;
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    auto m = random_int_poly_matrix(rng, 4, 2);
    std::vector<std::vector<QPoly>> e(4, std::vector<QPoly>(4));
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) e[a][b] = m(a, b).num();
    auto cm = to_complex(m);
    for (int i = 2; i <= 4; ++i) {
      nonzero += !lewis_carroll_residual(e, i).is_zero();
      worst = std::max(worst, check_lewis_carroll(cm, i, 4));
    }
  }
  return {nonzero == 0 && worst <= 1e-10,
          "exact nonzero residuals " + std::to_string(nonzero) + ", floating " + sci(worst)};
}

Outcome c6() {
  std::mt19937_64 rng(6);
  double worst = 0;
  int triples = 0;
  for (int n : {3, 4}) {
    auto d = cartan_matrix('A', n - 1);
    auto g = enumerate_weyl(d);
    for (int t = 0; t < 20; ++t) {
      auto cm = to_complex(random_unimodular(rng, n));
      auto pts = sample_panel(4, 0.8, 200 + t);
      std::vector<CMat> vals;
      for (auto z : pts) vals.push_back(cm.eval(z));
      for (int i = 0; i < n - 1; ++i)
        for (const auto& u : g.elements)
          for (const auto& v : g.elements) {
            if (!length_increases(u.word, i, d) || !length_increases(v.word, i, d)) continue;
            ++triples;
            for (const auto& M : vals) worst = std::max(worst, check_fundamental_relation(M, u.word, v.word, i, d));
          }
    }
  }
  auto s = solved("sl3_solved.json");
  double wr = 0;
  for (int i = 0; i < 2; ++i)
    for (const auto& u : s.full.group.elements)
      for (const auto& v : s.full.group.elements)
        if (length_increases(u.word, i, s.inst.cartan) && length_increases(v.word, i, s.inst.cartan))
          wr = std::max(wr, check_fundamental_relation(s.W, u.word, v.word, i, s.inst.cartan));
  return {std::max(worst, wr) <= 1e-9,
          std::to_string(triples) + " random triples " + sci(worst) + ", SL(3) Wronskian " + sci(wr)};
}

Outcome c7() {
  double inv = 0;
  for (auto file : {"a1_closed_form.json", "a2_solve.json"}) {
    auto inst = load_instance(instance_path(file)).inst;
    auto sol = solve_first(inst);
    for (int i = 0; i < inst.rank(); ++i) {
      auto a = backlund_step(inst, sol, i);
      auto b = backlund_step(a.inst, a.sol, i);
      for (int j = 0; j < inst.rank(); ++j)
        inv = std::max({inv, std::abs(b.inst.zeta[j] - inst.zeta[j]), poly_distance(b.sol.qplus[j], sol.qplus[j]),
                        poly_distance(b.sol.qminus[j], sol.qminus[j])});
    }
  }
  auto inst = load_instance(instance_path("a2_solve.json")).inst;
  auto sol = solve_first(inst);
  auto walk = [&](WeylWord w) {
    QQInstance cur = inst;
    QQSolution s = sol;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      auto st = backlund_step(cur, s, *it);
      cur = st.inst;
      s = st.sol;
    }
    return s;
  };
  auto a = walk({0, 1, 0}), b = walk({1, 0, 1});
  double path = 0;
  for (int i = 0; i < 2; ++i) path = std::max(path, poly_distance(a.qplus[i], b.qplus[i]));
  return {inv <= 1e-9 && path <= 1e-8, "involution " + sci(inv) + ", w0 paths " + sci(path)};
}

Outcome c8() {
  double prod = 0, cart = 0;
  for (auto file : {"sl2_solved.json", "sl3_solved.json"}) {
    auto s = solved(file);
    auto m = miura_from_wronskian(s.W, s.inst, s.sol, 20);
    prod = std::max(prod, m.product_residual);
    cart = std::max(cart, m.cartan_residual);
  }
  return {prod <= 1e-8 && cart <= 1e-8, "A(z) mismatch " + sci(prod) + ", Cartan part " + sci(cart)};
}

Outcome c9() {
  // positive: generic integer-polynomial matrix; negative: vanishing first principal minor
  std::mt19937_64 rng(9);
  QRatMatrix pos = random_int_poly_matrix(rng, 3, 1);
  pos(0, 0) = pos(0, 0) + QRat(QPoly{Rational(7)});
  bool p = false, n = false;
  try {
    auto g = gauss_decompose(pos);
    auto rec = g.n_minus * g.h * g.n_plus - pos;
    p = true;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) p = p && rec(a, b).is_zero();
  } catch (const GaussError&) {
  }
  QRatMatrix neg = QRatMatrix::identity(3);
  neg(0, 0) = QRat();
  neg(0, 1) = QRat::constant(Rational(1));
  neg(1, 0) = QRat::constant(Rational(1));
  neg(1, 1) = QRat();
  try {
    gauss_decompose(neg);
  } catch (const GaussError& e) {
    n = e.index == 1;
  }
  return {p && n, std::string("positive ") + (p ? "reconstructs exactly" : "FAILED") + ", negative " +
                      (n ? "rejected at i = 1" : "NOT rejected")};
}

Outcome c10() {
  auto s = solved("sl3_solved.json");
  auto m = miura_from_wronskian(s.W, s.inst, s.sol);
  auto A = build_miura_A(s.inst, s.sol);
  double worst = 0;
  for (int i = 0; i < 2; ++i) {
    auto b = miura_plucker_blocks(A, m.v, s.inst, i);
    worst = std::max({worst, b.residual, b.shape_residual});
  }
  std::mt19937_64 rng(10);
  double control = 1e300;
  for (int t = 0; t < 3; ++t) {
    auto R = to_complex(random_int_poly_matrix(rng, 3, 1));
    for (int i = 0; i < 2; ++i) control = std::min(control, miura_plucker_blocks(R, m.v, s.inst, i).residual);
  }
  return {worst <= 1e-8 && control > 1e-3, "solved " + sci(worst) + ", random control " + sci(control)};
}

std::string digest_of_cli_run() {
  std::string cmd = std::string(QOPER_CLI) + " solve --instance " + instance_path("a2_solve.json") + " --seed 42";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return "";
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  pclose(p);
  try {
    return nlohmann::json::parse(out).at("digest").get<std::string>();
  } catch (...) {
    return "";
  }
}

Outcome c11() {
  auto a = digest_of_cli_run(), b = digest_of_cli_run();
  return {!a.empty() && a == b, "digest " + a.substr(0, 16) + (a == b ? " == " : " != ") + b.substr(0, 16)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> all{
      {1, "SL(2) closed-form Bethe root", 1, c1},
      {2, "QQ <-> Bethe residuals", 10, c2},
      {3, "det W = 1 for SL(2)", 1, c3},
      {4, "Wronskian equations SL(3), k = 0..2", 5, c4},
      {5, "Lewis Carroll identity", 5, c5},
      {6, "fundamental minor relation", 10, c6},
      {7, "Baecklund involution and w0 paths", 10, c7},
      {8, "Miura reconstruction", 5, c8},
      {9, "Gaussian decomposition iff", 1, c9},
      {10, "Miura-Pluecker blocks", 5, c10},
      {11, "CLI determinism", 10, c11},
  };
  int failed = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = o.pass && dt < c.limit_s;
    failed += !pass;
    std::printf("criterion %2d %-38s %s  %s  [%.3fs / %.0fs]\n", c.id, c.name, pass ? "PASS" : "FAIL",
                o.detail.c_str(), dt, c.limit_s);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
