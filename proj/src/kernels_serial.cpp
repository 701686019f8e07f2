// Reference kernels: every basis value is evaluated on its own, no tables,
// no threads. Slow on purpose; they exist to check kernels_omp.cpp.

#include <cstddef>

#include "gaussl2/hermite_complex.hpp"
#include "gaussl2/hermite_real.hpp"
#include "gaussl2/kernels.hpp"

namespace gaussl2::kernels::serial {

void real_analyze(std::span<const double> nodes, std::span<const double> weights,
                  std::span<const double> samples, int degree, std::span<double> out) {
  for (int n = 0; n <= degree; ++n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      sum += weights[i] * eval_hermite_normalized(n, nodes[i]) * samples[i];
    }
    out[std::size_t(n)] = sum;
  }
}

void real_synthesize(std::span<const double> coeffs, std::span<const double> points,
                     std::span<double> out) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    double sum = 0.0;
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
      sum += coeffs[n] * eval_hermite_normalized(int(n), points[i]);
    }
    out[i] = sum;
  }
}

void complex_analyze(std::span<const cplx> nodes, std::span<const double> weights,
                     std::span<const cplx> samples, int degree, std::span<cplx> out) {
  for (int m = 0; m <= degree; ++m) {
    for (int n = 0; n <= degree; ++n) {
      cplx sum = 0.0;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        sum += weights[i] * std::conj(eval_ito_normalized(m, n, nodes[i])) * samples[i];
      }
      out[std::size_t(m) * std::size_t(degree + 1) + std::size_t(n)] = sum;
    }
  }
}

void complex_synthesize(std::span<const cplx> coeffs, int degree_m, int degree_n,
                        std::span<const cplx> points, std::span<cplx> out) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    cplx sum = 0.0;
    for (int m = 0; m <= degree_m; ++m) {
      for (int n = 0; n <= degree_n; ++n) {
        sum += coeffs[std::size_t(m) * std::size_t(degree_n + 1) + std::size_t(n)] *
               eval_ito_normalized(m, n, points[i]);
      }
    }
    out[i] = sum;
  }
}

}  // namespace gaussl2::kernels::serial
