#pragma once

#include <complex>
#include <vector>

namespace gaussl2 {

/// Nodes and weights of a rule on a line segment (unweighted measure dx).
struct LineRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes and weights of a rule on a planar region (area measure).
struct PlaneRule {
  std::vector<std::complex<double>> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
LineRule gauss_legendre(int n);

/// Composite Gauss-Legendre on [a, b] with `panels` equal panels.
LineRule composite_gauss_legendre(double a, double b, int panels, int order);

/// Polar product rule on the disk |z - center| < radius: Gauss-Legendre in
/// r (with the r Jacobian) times the trapezoid rule in theta.
PlaneRule disk_rule(std::complex<double> center, double radius, int radial, int angular);

}  // namespace gaussl2
