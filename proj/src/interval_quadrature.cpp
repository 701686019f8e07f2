#include "gaussl2/interval_quadrature.hpp"

#include <cmath>
#include <numbers>

#include "gaussl2/error.hpp"

namespace gaussl2 {

LineRule gauss_legendre(int n) {
  if (n < 1) throw UsageError("gauss_legendre: n must be positive");
  LineRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    // One more derivative evaluation at the converged root.
    double p0 = 1.0;
    double p1 = x;
    for (int j = 2; j <= n; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

LineRule composite_gauss_legendre(double a, double b, int panels, int order) {
  if (!(b > a) || panels < 1) throw UsageError("composite_gauss_legendre: bad interval");
  const LineRule base = gauss_legendre(order);
  const double h = (b - a) / panels;
  LineRule rule;
  rule.nodes.reserve(std::size_t(panels) * order);
  rule.weights.reserve(std::size_t(panels) * order);
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (int i = 0; i < order; ++i) {
      rule.nodes.push_back(mid + 0.5 * h * base.nodes[i]);
      rule.weights.push_back(0.5 * h * base.weights[i]);
    }
  }
  return rule;
}

PlaneRule disk_rule(std::complex<double> center, double radius, int radial, int angular) {
  if (!(radius > 0.0) || angular < 1) throw UsageError("disk_rule: bad disk");
  const LineRule r = composite_gauss_legendre(0.0, radius, 1, radial);
  PlaneRule rule;
  const double dtheta = 2.0 * std::numbers::pi / angular;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    for (int j = 0; j < angular; ++j) {
      rule.nodes.push_back(center + std::polar(r.nodes[i], j * dtheta));
      rule.weights.push_back(r.weights[i] * r.nodes[i] * dtheta);
    }
  }
  return rule;
}

}  // namespace gaussl2
