// Serial reference vs OpenMP kernels: multi-start Newton and panel sampling.
#include <benchmark/benchmark.h>

#include "qoper/qq.hpp"
#include "qoper/ratmatrix.hpp"

using namespace qoper;

namespace {

QQInstance a2_instance() {
  QQInstance inst;
  inst.cartan = cartan_matrix('A', 2);
  inst.q = Scalar(1.0 / 3.0, 0);
  inst.zeta = {Scalar(2, 0), Scalar(0.5, 0.3)};
  inst.lambda = {CPoly{Scalar(-1), Scalar(1)}, CPoly{Scalar(0.7), Scalar(0.2), Scalar(1)}};
  inst.degrees = {1, 2};
  return inst;
}

void BM_solve_bethe(benchmark::State& st) {
  auto inst = a2_instance();
  BetheOptions opt;
  opt.seeds = 16;
  opt.parallel = st.range(0) != 0;
  for (auto _ : st) benchmark::DoNotOptimize(solve_bethe(inst, opt).solutions.size());
}
BENCHMARK(BM_solve_bethe)->Arg(0)->Arg(1)->ArgNames({"parallel"})->Unit(benchmark::kMillisecond);

void BM_panel(benchmark::State& st) {
  auto pts = sample_panel(256, 0.8, 7);
  CPoly p = CPoly::from_roots({Scalar(0.3), Scalar(-0.2, 0.5), Scalar(1.1), Scalar(0.4, -0.9)});
  auto f = [&](Scalar z) {
    double s = 0;
    for (int k = 0; k < 200; ++k) s += std::abs(p(z * std::polar(1.0, 0.01 * k)));
    return s;
  };
  const bool par = st.range(0) != 0;
  for (auto _ : st) benchmark::DoNotOptimize(panel_sup(pts, f, par).sup);
}
BENCHMARK(BM_panel)->Arg(0)->Arg(1)->ArgNames({"parallel"});

}  // namespace

BENCHMARK_MAIN();
