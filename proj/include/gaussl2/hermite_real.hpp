#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gaussl2/gauss_hermite.hpp"
#include "gaussl2/weighted_shift.hpp"

namespace gaussl2 {

inline constexpr int kMaxHermiteDegree = 400;

/// Truncated coefficients c_0..c_N with respect to the orthonormal basis
/// e_n = H_n / sqrt(2^n n! sqrt(pi)) of L^2(R, e^{-x^2}).
class RealCoeffs {
 public:
  RealCoeffs() = default;
  explicit RealCoeffs(int degree);
  explicit RealCoeffs(std::vector<double> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::size_t size() const { return coeffs_.size(); }

  double& operator[](std::size_t n) { return coeffs_[n]; }
  double operator[](std::size_t n) const { return coeffs_[n]; }

  std::span<double> values() { return coeffs_; }
  std::span<const double> values() const { return coeffs_; }

  /// ||u||^2 = sum of squared coefficients.
  double squared_norm() const;

  /// Copy zero-padded (or truncated) to another degree.
  RealCoeffs resized(int degree) const;

  static RealCoeffs unit(int n, int degree);

  friend bool operator==(const RealCoeffs&, const RealCoeffs&) = default;

 private:
  std::vector<double> coeffs_;
};

/// Physicists' H_n(x) by the three-term recurrence. Overflows to inf for
/// large n at moderate x; use eval_hermite_normalized there.
double eval_hermite(int n, double x);

/// e_n(x) by the stabilized orthonormal recurrence.
double eval_hermite_normalized(int n, double x);

/// e_0(x)..e_N(x) into out (size N + 1).
void eval_hermite_normalized_all(int degree, double x, std::span<double> out);

/// c_n = sum_i w_i e_n(x_i) f(x_i). Needs rule order >= degree + 1.
RealCoeffs analyze(std::span<const double> samples, const QuadRule1D& rule, int degree);

/// Pointwise sum_n c_n e_n(x).
std::vector<double> synthesize(const RealCoeffs& coeffs, std::span<const double> points);

/// D^k on the basis: e_n -> sqrt(2^k n!/(n-k)!) e_{n-k}. Rows 0..N-k.
WeightedShift derivative_matrix(int k, int degree);

}  // namespace gaussl2
