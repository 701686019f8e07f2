#include "gaussl2/hermite_real.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "gaussl2/error.hpp"
#include "gaussl2/kernels.hpp"

namespace gaussl2 {
namespace {

void check_degree(int n, const char* what) {
  if (n < 0 || n > kMaxHermiteDegree) {
    throw UsageError(std::string(what) + ": degree must be in [0, " +
                     std::to_string(kMaxHermiteDegree) + "], got " + std::to_string(n));
  }
}

}  // namespace

double WeightedShift::min_weight() const {
  if (row_weight.empty()) return 0.0;
  return *std::min_element(row_weight.begin(), row_weight.end());
}

RealCoeffs::RealCoeffs(int degree) {
  if (degree < 0) throw UsageError("RealCoeffs: negative degree");
  coeffs_.assign(std::size_t(degree) + 1, 0.0);
}

RealCoeffs::RealCoeffs(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw UsageError("RealCoeffs: empty coefficient vector");
}

double RealCoeffs::squared_norm() const {
  return std::inner_product(coeffs_.begin(), coeffs_.end(), coeffs_.begin(), 0.0);
}

RealCoeffs RealCoeffs::resized(int degree) const {
  RealCoeffs out(degree);
  const std::size_t n = std::min(out.size(), size());
  std::copy_n(coeffs_.begin(), n, out.coeffs_.begin());
  return out;
}

RealCoeffs RealCoeffs::unit(int n, int degree) {
  if (n < 0 || n > degree) throw UsageError("RealCoeffs::unit: index out of range");
  RealCoeffs out(degree);
  out[std::size_t(n)] = 1.0;
  return out;
}

double eval_hermite(int n, double x) {
  check_degree(n, "eval_hermite");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * x;
  for (int j = 1; j < n; ++j) {
    const double next = 2.0 * x * cur - 2.0 * j * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

void eval_hermite_normalized_all(int degree, double x, std::span<double> out) {
  check_degree(degree, "eval_hermite_normalized");
  if (out.size() < std::size_t(degree) + 1) throw UsageError("eval_hermite_normalized_all: short output");
  out[0] = 1.0 / std::sqrt(std::sqrt(std::numbers::pi));
  if (degree == 0) return;
  out[1] = std::numbers::sqrt2 * x * out[0];
  for (int j = 1; j < degree; ++j) {
    out[j + 1] = x * std::sqrt(2.0 / (j + 1)) * out[j] - std::sqrt(double(j) / (j + 1)) * out[j - 1];
  }
}

double eval_hermite_normalized(int n, double x) {
  check_degree(n, "eval_hermite_normalized");
  std::vector<double> all(std::size_t(n) + 1);
  eval_hermite_normalized_all(n, x, all);
  return all.back();
}

RealCoeffs analyze(std::span<const double> samples, const QuadRule1D& rule, int degree) {
  check_degree(degree, "analyze");
  if (rule.order() < std::size_t(degree) + 1) {
    throw UsageError("analyze: quadrature order " + std::to_string(rule.order()) +
                     " is insufficient for degree " + std::to_string(degree));
  }
  if (samples.size() != rule.order()) throw UsageError("analyze: sample count does not match rule order");
  RealCoeffs out(degree);
  kernels::omp::real_analyze(rule.nodes, rule.weights, samples, degree, out.values());
  return out;
}

std::vector<double> synthesize(const RealCoeffs& coeffs, std::span<const double> points) {
  check_degree(coeffs.degree(), "synthesize");
  std::vector<double> out(points.size());
  kernels::omp::real_synthesize(coeffs.values(), points, out);
  return out;
}

WeightedShift derivative_matrix(int k, int degree) {
  if (k < 1) throw UsageError("derivative_matrix: k must be >= 1");
  if (k > degree) throw UsageError("derivative_matrix: k exceeds degree");
  WeightedShift shift;
  shift.input_size = std::size_t(degree) + 1;
  for (int r = 0; r + k <= degree; ++r) {
    const int n = r + k;
    double w = 1.0;
    for (int j = 0; j < k; ++j) w *= std::sqrt(2.0 * (n - j));
    shift.row_diag.push_back(std::size_t(r));
    shift.row_source.push_back(std::size_t(n));
    shift.row_weight.push_back(w);
  }
  return shift;
}

}  // namespace gaussl2
