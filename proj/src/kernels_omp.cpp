#include <cstddef>

#include "gaussl2/hermite_complex.hpp"
#include "gaussl2/hermite_real.hpp"
#include "gaussl2/kernels.hpp"

namespace gaussl2::kernels::omp {

std::vector<double> real_basis_table(std::span<const double> nodes, int degree) {
  const std::size_t cols = std::size_t(degree) + 1;
  std::vector<double> table(nodes.size() * cols);
  const auto q = static_cast<std::ptrdiff_t>(nodes.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < q; ++i) {
    eval_hermite_normalized_all(degree, nodes[i], std::span(table).subspan(std::size_t(i) * cols, cols));
  }
  return table;
}

void real_analyze(std::span<const double> nodes, std::span<const double> weights,
                  std::span<const double> samples, int degree, std::span<double> out) {
  const std::size_t cols = std::size_t(degree) + 1;
  const std::vector<double> table = real_basis_table(nodes, degree);
  const std::size_t q = nodes.size();
  // Reduction runs over nodes in a fixed order per coefficient, so results
  // do not depend on the thread count.
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t n = 0; n < static_cast<std::ptrdiff_t>(cols); ++n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < q; ++i) sum += weights[i] * table[i * cols + std::size_t(n)] * samples[i];
    out[std::size_t(n)] = sum;
  }
}

void real_synthesize(std::span<const double> coeffs, std::span<const double> points,
                     std::span<double> out) {
  const int degree = static_cast<int>(coeffs.size()) - 1;
  const auto p = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel
  {
    std::vector<double> basis(coeffs.size());
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < p; ++i) {
      eval_hermite_normalized_all(degree, points[i], basis);
      double sum = 0.0;
      for (std::size_t n = 0; n < coeffs.size(); ++n) sum += coeffs[n] * basis[n];
      out[std::size_t(i)] = sum;
    }
  }
}

std::vector<cplx> complex_basis_table(std::span<const cplx> nodes, int degree_m, int degree_n) {
  const std::size_t cols = std::size_t(degree_m + 1) * std::size_t(degree_n + 1);
  std::vector<cplx> table(nodes.size() * cols);
  const auto q = static_cast<std::ptrdiff_t>(nodes.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < q; ++i) {
    eval_ito_normalized_all(degree_m, degree_n, nodes[i],
                            std::span(table).subspan(std::size_t(i) * cols, cols));
  }
  return table;
}

void complex_analyze(std::span<const cplx> nodes, std::span<const double> weights,
                     std::span<const cplx> samples, int degree, std::span<cplx> out) {
  const std::size_t cols = std::size_t(degree + 1) * std::size_t(degree + 1);
  const std::vector<cplx> table = complex_basis_table(nodes, degree, degree);
  const std::size_t q = nodes.size();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t mn = 0; mn < static_cast<std::ptrdiff_t>(cols); ++mn) {
    cplx sum = 0.0;
    for (std::size_t i = 0; i < q; ++i) sum += weights[i] * std::conj(table[i * cols + std::size_t(mn)]) * samples[i];
    out[std::size_t(mn)] = sum;
  }
}

void complex_synthesize(std::span<const cplx> coeffs, int degree_m, int degree_n,
                        std::span<const cplx> points, std::span<cplx> out) {
  const auto p = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel
  {
    std::vector<cplx> basis(coeffs.size());
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < p; ++i) {
      eval_ito_normalized_all(degree_m, degree_n, points[i], basis);
      cplx sum = 0.0;
      for (std::size_t j = 0; j < coeffs.size(); ++j) sum += coeffs[j] * basis[j];
      out[std::size_t(i)] = sum;
    }
  }
}

}  // namespace gaussl2::kernels::omp
