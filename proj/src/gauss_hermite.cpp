#include "gaussl2/gauss_hermite.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <string>

#include "gaussl2/error.hpp"

namespace gaussl2 {
namespace {

void check_order(int order) {
  if (order < 1 || order > kMaxRuleOrder) {
    throw UsageError("quadrature order must be in [1, " + std::to_string(kMaxRuleOrder) +
                     "], got " + std::to_string(order));
  }
}

// e_{n-1}(x) and e_n(x) for the orthonormal Hermite functions (without the
// Gaussian factor).
std::pair<double, double> normalized_pair(int n, double x) {
  double prev = 0.0;
  double cur = 1.0 / std::sqrt(std::sqrt(std::numbers::pi));
  for (int j = 0; j < n; ++j) {
    const double next = x * std::sqrt(2.0 / (j + 1)) * cur - std::sqrt(double(j) / (j + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return {prev, cur};
}

double newton_polish(int order, double x) {
  for (int it = 0; it < 12; ++it) {
    const auto [lower, value] = normalized_pair(order, x);
    const double step = value / (std::sqrt(2.0 * order) * lower);
    x -= step;
    if (std::abs(step) <= 4e-16 * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

}  // namespace

QuadRule1D build_rule_1d(int order) {
  check_order(order);
  const auto q = static_cast<std::size_t>(order);

  Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
  Eigen::VectorXd sub(std::max(order - 1, 0));
  for (int i = 1; i < order; ++i) sub[i - 1] = std::sqrt(i / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& guess = solver.eigenvalues();

  QuadRule1D rule;
  rule.nodes.assign(q, 0.0);
  rule.weights.assign(q, 0.0);

  // Polish the non-negative half and mirror, so symmetry is exact.
  for (std::size_t i = q / 2; i < q; ++i) {
    const bool centre = (q % 2 == 1) && i == q / 2;
    const double x = centre ? 0.0 : newton_polish(order, std::abs(guess[Eigen::Index(i)]));
    const double lower = normalized_pair(order, x).first;
    const double inv = 1.0 / lower;
    const double w = inv * inv / order;
    rule.nodes[i] = x;
    rule.weights[i] = w;
    rule.nodes[q - 1 - i] = -x;
    rule.weights[q - 1 - i] = w;
  }
  if (q % 2 == 1) rule.nodes[q / 2] = 0.0;
  return rule;
}

QuadRule2D build_rule_2d(int order) {
  QuadRule2D rule;
  rule.base = build_rule_1d(order);
  const std::size_t q = rule.base.order();
  rule.nodes.reserve(q * q);
  rule.weights.reserve(q * q);
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t j = 0; j < q; ++j) {
      rule.nodes.emplace_back(rule.base.nodes[i], rule.base.nodes[j]);
      rule.weights.push_back(rule.base.weights[i] * rule.base.weights[j]);
    }
  }
  return rule;
}

double integrate_1d(const QuadRule1D& rule, std::span<const double> values) {
  if (values.size() != rule.order()) {
    throw UsageError("integrate_1d: expected " + std::to_string(rule.order()) +
                     " samples, got " + std::to_string(values.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) sum += rule.weights[i] * values[i];
  return sum;
}

std::complex<double> integrate_2d(const QuadRule2D& rule,
                                  std::span<const std::complex<double>> values) {
  if (values.size() != rule.size()) {
    throw UsageError("integrate_2d: expected " + std::to_string(rule.size()) +
                     " samples, got " + std::to_string(values.size()));
  }
  std::complex<double> sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) sum += rule.weights[i] * values[i];
  return sum;
}

}  // namespace gaussl2
