// Serial reference kernels against their OpenMP versions, plus chain solves
// with and without the parallel loop.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "gaussl2/gauss_hermite.hpp"
#include "gaussl2/kernels.hpp"
#include "gaussl2/operator_core.hpp"

namespace k = gaussl2::kernels;

namespace {

std::vector<double> random_vector(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

std::vector<k::cplx> random_cvector(std::size_t n, unsigned seed) {
  const auto re = random_vector(n, seed);
  const auto im = random_vector(n, seed + 1);
  std::vector<k::cplx> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = {re[i], im[i]};
  return v;
}

template <bool Parallel>
void BM_RealAnalyze(benchmark::State& state) {
  const int N = int(state.range(0));
  const auto rule = gaussl2::build_rule_1d(N + 1);
  const auto samples = random_vector(rule.order(), 1);
  std::vector<double> out(std::size_t(N) + 1);
  for (auto _ : state) {
    if constexpr (Parallel) k::omp::real_analyze(rule.nodes, rule.weights, samples, N, out);
    else k::serial::real_analyze(rule.nodes, rule.weights, samples, N, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_RealSynthesize(benchmark::State& state) {
  const int N = int(state.range(0));
  const auto rule = gaussl2::build_rule_1d(N + 1);
  const auto coeffs = random_vector(std::size_t(N) + 1, 2);
  std::vector<double> out(rule.order());
  for (auto _ : state) {
    if constexpr (Parallel) k::omp::real_synthesize(coeffs, rule.nodes, out);
    else k::serial::real_synthesize(coeffs, rule.nodes, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_ComplexAnalyze(benchmark::State& state) {
  const int N = int(state.range(0));
  const auto rule = gaussl2::build_rule_2d(2 * N + 2);
  const auto samples = random_cvector(rule.size(), 3);
  std::vector<k::cplx> out(std::size_t(N + 1) * std::size_t(N + 1));
  for (auto _ : state) {
    if constexpr (Parallel) k::omp::complex_analyze(rule.nodes, rule.weights, samples, N, out);
    else k::serial::complex_analyze(rule.nodes, rule.weights, samples, N, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_ComplexSynthesize(benchmark::State& state) {
  const int N = int(state.range(0));
  const auto rule = gaussl2::build_rule_2d(2 * N + 2);
  const auto coeffs = random_cvector(std::size_t(N + 1) * std::size_t(N + 1), 4);
  std::vector<k::cplx> out(rule.size());
  for (auto _ : state) {
    if constexpr (Parallel) k::omp::complex_synthesize(coeffs, N, N, rule.nodes, out);
    else k::serial::complex_synthesize(coeffs, N, N, rule.nodes, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_MixedChainSolve(benchmark::State& state) {
  const int N = int(state.range(0));
  using gaussl2::ComplexCoeffs;
  const auto t = gaussl2::build_right_inverse(gaussl2::OperatorSpec::mixed(1, {1.0, 0.5}, {2.0, -1.0}), N);
  ComplexCoeffs g(N - 1);
  const auto v = random_cvector(g.size(), 5);
  std::copy(v.begin(), v.end(), g.values().begin());
  for (auto _ : state) {
    ComplexCoeffs u = Parallel ? t(g) : t.solve_serial(g);
    benchmark::DoNotOptimize(u.values().data());
  }
}

}  // namespace

BENCHMARK(BM_RealAnalyze<false>)->Name("real_analyze/serial")->Arg(64)->Arg(256);
BENCHMARK(BM_RealAnalyze<true>)->Name("real_analyze/omp")->Arg(64)->Arg(256);
BENCHMARK(BM_RealSynthesize<false>)->Name("real_synthesize/serial")->Arg(64)->Arg(256);
BENCHMARK(BM_RealSynthesize<true>)->Name("real_synthesize/omp")->Arg(64)->Arg(256);
BENCHMARK(BM_ComplexAnalyze<false>)->Name("complex_analyze/serial")->Arg(8)->Arg(16);
BENCHMARK(BM_ComplexAnalyze<true>)->Name("complex_analyze/omp")->Arg(8)->Arg(16);
BENCHMARK(BM_ComplexSynthesize<false>)->Name("complex_synthesize/serial")->Arg(8)->Arg(16);
BENCHMARK(BM_ComplexSynthesize<true>)->Name("complex_synthesize/omp")->Arg(8)->Arg(16);
BENCHMARK(BM_MixedChainSolve<false>)->Name("mixed_chains/serial")->Arg(16)->Arg(48);
BENCHMARK(BM_MixedChainSolve<true>)->Name("mixed_chains/omp")->Arg(16)->Arg(48);

BENCHMARK_MAIN();
