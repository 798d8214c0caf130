#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "common.hpp"

using namespace qoper;
using namespace testing_util;
using C = Scalar;

TEST_CASE("xi_factors") {
  C z(1.3, 0.4);
  auto a1 = make_instance('A', 1, 0.5, {z}, {CPoly{-1.0, 1.0}}, {0});
  auto x = xi_factors(a1);
  CHECK(std::abs(x[0].tilde - z) < 1e-15);
  CHECK(std::abs(x[0].plain - 1.0 / z) < 1e-15);

  C z1(2.0, 0.1), z2(0.7, -0.3);
  auto a2 = make_instance('A', 2, 0.5, {z1, z2}, {CPoly{-1.0, 1.0}, CPoly{-1.0, 1.0}}, {0, 0});
  auto y = xi_factors(a2);
  CHECK(std::abs(y[0].tilde - z1 / z2) < 1e-14);
  CHECK(std::abs(y[0].plain - 1.0 / z1) < 1e-14);
  CHECK(std::abs(y[1].tilde - z2) < 1e-14);
  CHECK(std::abs(y[1].plain - z1 / z2) < 1e-14);

  auto g2 = make_instance('G', 2, 0.5, {1.0, 1.0}, {CPoly{-1.0, 1.0}, CPoly{-1.0, 1.0}}, {0, 0});
  for (auto xi : xi_factors(g2)) {
    CHECK(xi.tilde == C(1));
    CHECK(xi.plain == C(1));
  }
}

TEST_CASE("qq_residual examples") {
  C zeta(1.7, 0.3), q(0.4, 0.2);
  CPoly lam{0.0, zeta * q - 1.0 / zeta};
  auto inst = make_instance('A', 1, q, {zeta}, {lam}, {1});
  QQSolution sol{{CPoly{0.0, 1.0}}, {CPoly{1.0}}};
  CHECK(qq_residual(inst, sol)[0].norm() < 1e-15);

  inst.lambda = {CPoly{0.0, 1.0}};
  auto res = qq_residual(inst, sol)[0];
  CHECK(coeff_dist(res, CPoly{0.0, zeta * q - 1.0 / zeta - 1.0}) < 1e-15);

  QQSolution zero{{CPoly{0.0, 1.0}}, {CPoly{}}};
  CHECK(coeff_dist(qq_residual(inst, zero)[0], CPoly{0.0, -1.0}) < 1e-15);
}

TEST_CASE("resonance_check examples") {
  auto inst = make_instance('A', 1, 3.0, {2.0}, {CPoly{-1.0, 1.0}}, {0});
  CHECK(resonance_check(inst, 3).pass);
  C q(0.3, 0.1);
  auto res = make_instance('A', 1, q, {std::sqrt(q)}, {CPoly{-1.0, 1.0}}, {0});
  auto r = resonance_check(res, 2);
  CHECK_FALSE(r.pass);
  CHECK(r.offending_k[0] == 1);
  auto unit = make_instance('A', 2, q, {1.0, 1.0}, {CPoly{-1.0, 1.0}, CPoly{-1.0, 1.0}}, {0, 0});
  auto u = resonance_check(unit, 1);
  CHECK_FALSE(u.pass);
  CHECK(u.offending_k[0] == 0);
}

TEST_CASE("solve_q_minus examples and uniqueness") {
  C zeta(1.7, 0.3), q(0.4, 0.2);
  auto inst = make_instance('A', 1, q, {zeta}, {CPoly{0.0, zeta * q - 1.0 / zeta}}, {1});
  auto qm = solve_q_minus(inst, {CPoly{0.0, 1.0}}, 0);
  CHECK(coeff_dist(qm, CPoly{1.0}) < 1e-10);
  CHECK(coeff_dist(solve_q_minus(inst, {CPoly{0.0, 1.0}}, 0, 6), qm) < 1e-10);

  auto bad = make_instance('A', 1, q, {std::sqrt(q)}, {CPoly{-1.0, 1.0}}, {1});
  CHECK_THROWS_AS(solve_q_minus(bad, {CPoly{0.0, 1.0}}, 0), QQError);

  auto a2 = load_instance(instance_path("a2_solve.json")).inst;
  auto sol = solve_first(a2);
  for (int i = 0; i < 2; ++i) {
    auto again = solve_q_minus(a2, sol.qplus, i);
    CHECK(qq_residual(a2, QQSolution{sol.qplus, {i == 0 ? again : sol.qminus[0], i == 1 ? again : sol.qminus[1]}})[i]
              .norm() < 1e-9);
    CHECK(coeff_dist(solve_q_minus(a2, sol.qplus, i, again.degree() + 3), again) < 1e-9);
  }
}

TEST_CASE("bethe_residual examples") {
  const double a = 1.5;
  C zeta(2.0), q(1.0 / 3.0);
  C w = a * (zeta * zeta * q - 1.0) / (zeta * zeta - 1.0);
  auto inst = make_instance('A', 1, q, {zeta}, {CPoly{-a, 1.0}}, {1});
  CHECK(max_abs(bethe_residual(inst, {CPoly{-w, 1.0}})) < 1e-13);
  CHECK(max_abs(bethe_residual(inst, {CPoly{-(w + 1.0), 1.0}})) > 1e-2);
  // root w with Lambda(w/q) = 0
  CHECK_THROWS_AS(bethe_residual(inst, {CPoly{-a * q, 1.0}}), DegenerateRoots);
}

TEST_CASE("nondegenerate examples") {
  auto f = load_instance(instance_path("sl2_solved.json"));
  CHECK(nondegenerate(f.inst, *f.solution, f.inst.window()).pass);

  auto inst = make_instance('A', 1, C(0.3, 0.1), {1.7}, {CPoly{-1.0, 1.0}}, {1});
  QQSolution shared{{CPoly{-1.0, 1.0}}, {CPoly{1.0}}};
  auto r = nondegenerate(inst, shared, 2);
  CHECK_FALSE(r.pass);
  CHECK_FALSE(r.witnesses.empty());

  auto unit = make_instance('A', 1, C(0.3, 0.1), {1.0}, {CPoly{-1.0, 1.0}}, {0});
  CHECK_FALSE(nondegenerate(unit, QQSolution{{CPoly{1.0}}, {CPoly{1.0}}}, 2).pass);
}

TEST_CASE("the closed-form A1 root is q-coincident with the zero of Lambda") {
  // w = 1/9 = q^2 * 1 for zeta = 2, q = 1/3: degenerate once the window reaches k = 2
  auto inst = load_instance(instance_path("a1_closed_form.json")).inst;
  QQSolution sol{{CPoly{-1.0 / 9.0, 1.0}}, {solve_q_minus(inst, {CPoly{-1.0 / 9.0, 1.0}}, 0)}};
  CHECK(nondegenerate(inst, sol, 1).pass);
  CHECK_FALSE(nondegenerate(inst, sol, 2).pass);
}

TEST_CASE("cartan_connection examples") {
  C z1(1.2, 0.1), z2(0.8, -0.6), q(0.4, 0.3);
  auto a2 = make_instance('A', 2, q, {z1, z2}, {CPoly{-1.0, 1.0}, CPoly{-1.0, 1.0}}, {0, 0});
  auto g = cartan_connection(a2, QQSolution{{CPoly{1.0}, CPoly{1.0}}, {CPoly{1.0}, CPoly{1.0}}}, C(0.3, 0.9));
  CHECK(std::abs(g[0] - z1) < 1e-15);
  CHECK(std::abs(g[1] - z2) < 1e-15);
  auto a1 = make_instance('A', 1, q, {z1}, {CPoly{-1.0, 1.0}}, {1});
  QQSolution s{{CPoly{0.0, 1.0}}, {CPoly{1.0}}};
  CHECK(std::abs(cartan_connection(a1, s, 1.0)[0] - z1 * q) < 1e-15);
  CHECK_THROWS_AS(cartan_connection(a1, s, 0.0), PoleError);
}

TEST_CASE("unit twist: the residual is antisymmetric under Q+ <-> Q-") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> N;
  auto rp = [&](int d) {
    std::vector<C> c;
    for (int k = 0; k <= d; ++k) c.emplace_back(N(rng), N(rng));
    return CPoly(c);
  };
  for (int t = 0; t < 10; ++t) {
    auto inst = make_instance('A', 1, C(0.5, 0.2), {1.0}, {rp(2)}, {2});
    QQSolution s{{rp(2)}, {rp(3)}}, swapped{{s.qminus[0]}, {s.qplus[0]}};
    auto lhs = qq_residual(inst, s)[0] + inst.lambda[0];
    auto lhs_swapped = qq_residual(inst, swapped)[0] + inst.lambda[0];
    CHECK(coeff_dist(lhs, -1.0 * lhs_swapped) < 1e-12);
  }
}

TEST_CASE("validation rejects bad instances") {
  auto inst = make_instance('A', 1, 0.5, {2.0}, {CPoly{1.0}}, {1});
  CHECK_THROWS_AS(validate(inst), InputError);
  inst.lambda = {CPoly{-1.0, 1.0}};
  inst.q = 0.0;
  CHECK_THROWS_AS(validate(inst), InputError);
  inst.q = C(0.6, 0.8);
  CHECK_NOTHROW(validate(inst));
  CHECK(q_on_unit_circle(inst));
}
