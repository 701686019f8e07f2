#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "gaussl2/gauss_hermite.hpp"
#include "gaussl2/kernels.hpp"

using namespace gaussl2;
namespace k = gaussl2::kernels;

TEST_CASE("serial and OpenMP real kernels agree") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int N : {0, 7, 60, 150}) {
    const QuadRule1D rule = build_rule_1d(N + 3);
    std::vector<double> samples(rule.order());
    for (double& s : samples) s = u(rng);
    std::vector<double> a(std::size_t(N) + 1), b(std::size_t(N) + 1);
    k::omp::real_analyze(rule.nodes, rule.weights, samples, N, a);
    k::serial::real_analyze(rule.nodes, rule.weights, samples, N, b);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-12);

    std::vector<double> pa(rule.order()), pb(rule.order());
    k::omp::real_synthesize(a, rule.nodes, pa);
    k::serial::real_synthesize(a, rule.nodes, pb);
    for (std::size_t i = 0; i < pa.size(); ++i) CHECK(std::abs(pa[i] - pb[i]) < 1e-11);
  }
}

TEST_CASE("real basis table matches synthesis of unit vectors") {
  const QuadRule1D rule = build_rule_1d(12);
  const int N = 9;
  const auto table = k::omp::real_basis_table(rule.nodes, N);
  REQUIRE(table.size() == rule.order() * std::size_t(N + 1));
  for (int n = 0; n <= N; ++n) {
    std::vector<double> c(std::size_t(N) + 1, 0.0);
    c[std::size_t(n)] = 1.0;
    std::vector<double> v(rule.order());
    k::serial::real_synthesize(c, rule.nodes, v);
    for (std::size_t i = 0; i < rule.order(); ++i) CHECK(std::abs(table[i * std::size_t(N + 1) + std::size_t(n)] - v[i]) < 1e-14);
  }
}

TEST_CASE("serial and OpenMP complex kernels agree") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int N : {0, 3, 10}) {
    const QuadRule2D rule = build_rule_2d(2 * N + 2);
    std::vector<k::cplx> samples(rule.size());
    for (auto& s : samples) s = k::cplx(u(rng), u(rng));
    const std::size_t B = std::size_t(N + 1) * std::size_t(N + 1);
    std::vector<k::cplx> a(B), b(B);
    k::omp::complex_analyze(rule.nodes, rule.weights, samples, N, a);
    k::serial::complex_analyze(rule.nodes, rule.weights, samples, N, b);
    for (std::size_t i = 0; i < B; ++i) CHECK(std::abs(a[i] - b[i]) < 1e-12);

    // Rectangular coefficient shapes go through the same path.
    const int M = N + 2;
    std::vector<k::cplx> c(std::size_t(M + 1) * std::size_t(N + 1));
    for (auto& v : c) v = k::cplx(u(rng), u(rng));
    std::vector<k::cplx> pa(rule.size()), pb(rule.size());
    k::omp::complex_synthesize(c, M, N, rule.nodes, pa);
    k::serial::complex_synthesize(c, M, N, rule.nodes, pb);
    for (std::size_t i = 0; i < pa.size(); ++i) CHECK(std::abs(pa[i] - pb[i]) < 1e-10 * std::max(1.0, std::abs(pb[i])));
  }
}
