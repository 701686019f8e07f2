#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace gaussl2 {

inline constexpr int kMaxRuleOrder = 512;

/// Gauss-Hermite rule for the weight e^{-x^2}. Weights carry the Gaussian
/// factor, so integrands are sampled without it.
struct QuadRule1D {
  std::vector<double> nodes;    // strictly increasing, symmetric about 0
  std::vector<double> weights;  // sum to sqrt(pi)

  std::size_t order() const { return nodes.size(); }
};

/// Tensor square of a QuadRule1D on C with area measure; weights carry
/// e^{-|z|^2}. Node (i, j) is stored at flat index i * Q + j as
/// x_i + i * x_j.
struct QuadRule2D {
  QuadRule1D base;
  std::vector<std::complex<double>> nodes;
  std::vector<double> weights;

  std::size_t order() const { return base.order(); }
  std::size_t size() const { return nodes.size(); }
};

/// Nodes from the Golub-Welsch eigenproblem, polished by Newton on the
/// normalized Hermite recurrence; weights from the Christoffel formula
/// w_i = 1 / (Q e_{Q-1}(x_i)^2), which keeps tiny tail weights accurate.
/// Tail weights underflow to zero in double precision for order > ~360.
QuadRule1D build_rule_1d(int order);
QuadRule2D build_rule_2d(int order);

double integrate_1d(const QuadRule1D& rule, std::span<const double> values);
std::complex<double> integrate_2d(const QuadRule2D& rule,
                                  std::span<const std::complex<double>> values);

}  // namespace gaussl2
