// Serial reference vs OpenMP kernel for each parallel entry point.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "pseudoabel/foliation.hpp"
#include "pseudoabel/random.hpp"
#include "pseudoabel/sweep.hpp"

using namespace pseudoabel;

namespace {

JSeries bench_series() {
  std::mt19937_64 rng(2024);
  RandomSeriesOptions o;
  o.max_order = 16;
  return random_series(rng, o);
}

std::vector<double> geometric(double a, double b, int n) {
  std::vector<double> ts;
  for (int k = 0; k < n; ++k) ts.push_back(a * std::pow(b / a, k / (n - 1.0)));
  return ts;
}

DarbouxSystem triangle() {
  return DarbouxSystem({Polynomial2{{1, 0, 1.0}}, Polynomial2{{0, 1, 1.0}},
                        Polynomial2{{0, 0, 1.0}, {1, 0, -1.0}, {0, 1, -1.0}}},
                       {1.0, 1.0, 1.0}, Box{-0.1, 1.1, -0.1, 1.1});
}

AdmissibleForm x_dy() {
  AdmissibleForm w;
  w.B = Polynomial2{{1, 0, 1.0}};
  w.denom_powers = {0, 0, 0};
  return w;
}

JSeries one_zero() {
  JSeries s = make_series(Spectrum({1.0, 2.0}), 0, 3.0, 3.0, 4, true);
  s.b = {{1, 0, 1.0}, {1, 1, -0.5}};
  return s;
}

template <bool Parallel>
void BM_EvalGrid(benchmark::State& state) {
  const JSeries s = bench_series();
  const auto ts = geometric(1e-4, 0.99, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto r = Parallel ? eval_grid(s, ts) : eval_grid_serial(s, ts);
    benchmark::DoNotOptimize(r.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_IntegralScan(benchmark::State& state) {
  const DarbouxSystem sys = triangle();
  const auto ts = geometric(1e-4 / 27, 0.9 / 27, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto r = Parallel ? integral_scan(sys, x_dy(), ts) : integral_scan_serial(sys, x_dy(), ts);
    benchmark::DoNotOptimize(r.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_Sweep(benchmark::State& state) {
  const JSeries s = one_zero();
  const int points = static_cast<int>(state.range(0));
  SweepSpec spec;
  spec.axes = {{SweepAxis::Kind::Exponent, 0, -0.01, 0.01, points},
               {SweepAxis::Kind::Exponent, 1, -0.01, 0.01, points}};
  for (auto _ : state) {
    auto r = Parallel ? sweep_zero_counts(spec, s) : sweep_zero_counts_serial(spec, s);
    benchmark::DoNotOptimize(r.rows.data());
  }
  state.SetItemsProcessed(state.iterations() * points * points);
}

}  // namespace

BENCHMARK(BM_EvalGrid<false>)->Name("eval_grid/serial")->Arg(4096)->UseRealTime();
BENCHMARK(BM_EvalGrid<true>)->Name("eval_grid/omp")->Arg(4096)->UseRealTime();
BENCHMARK(BM_IntegralScan<false>)->Name("integral_scan/serial")->Arg(16)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IntegralScan<true>)->Name("integral_scan/omp")->Arg(16)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sweep<false>)->Name("sweep/serial")->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sweep<true>)->Name("sweep/omp")->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
