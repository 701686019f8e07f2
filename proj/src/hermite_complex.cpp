#include "gaussl2/hermite_complex.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gaussl2/error.hpp"
#include "gaussl2/kernels.hpp"

namespace gaussl2 {
namespace {

void check_index(int m, int n, const char* what) {
  if (m < 0 || n < 0 || m > kMaxItoIndex || n > kMaxItoIndex) {
    throw UsageError(std::string(what) + ": indices must be in [0, " +
                     std::to_string(kMaxItoIndex) + "]");
  }
}

// sqrt(n!/(n-k)!) as a product of square roots.
double falling_sqrt(int n, int k) {
  double w = 1.0;
  for (int j = 0; j < k; ++j) w *= std::sqrt(double(n - j));
  return w;
}

}  // namespace

ComplexCoeffs::ComplexCoeffs(int degree_m, int degree_n) : degree_m_(degree_m), degree_n_(degree_n) {
  if (degree_m < 0 || degree_n < 0) throw UsageError("ComplexCoeffs: negative degree");
  coeffs_.assign(std::size_t(degree_m + 1) * std::size_t(degree_n + 1), cplx{});
}

double ComplexCoeffs::squared_norm() const {
  double s = 0.0;
  for (const cplx& c : coeffs_) s += std::norm(c);
  return s;
}

ComplexCoeffs ComplexCoeffs::reshaped(int degree_m, int degree_n) const {
  ComplexCoeffs out(degree_m, degree_n);
  for (int m = 0; m <= std::min(degree_m, degree_m_); ++m) {
    for (int n = 0; n <= std::min(degree_n, degree_n_); ++n) out(m, n) = (*this)(m, n);
  }
  return out;
}

ComplexCoeffs ComplexCoeffs::unit(int m, int n, int degree) {
  if (m < 0 || n < 0 || m > degree || n > degree) throw UsageError("ComplexCoeffs::unit: index out of range");
  ComplexCoeffs out(degree);
  out(m, n) = 1.0;
  return out;
}

cplx eval_ito(int m, int n, cplx z) {
  check_index(m, n, "eval_ito");
  const cplx zb = std::conj(z);
  // column[j] holds H_{i,j} for the current i.
  std::vector<cplx> column(std::size_t(n) + 1);
  column[0] = 1.0;
  for (int j = 1; j <= n; ++j) column[j] = column[j - 1] * zb;
  for (int i = 0; i < m; ++i) {
    for (int j = n; j >= 1; --j) column[j] = z * column[j] - double(j) * column[j - 1];
    column[0] = z * column[0];
  }
  return column[n];
}

cplx eval_ito_closed_form(int m, int n, cplx z) {
  check_index(m, n, "eval_ito_closed_form");
  const cplx zb = std::conj(z);
  cplx sum = 0.0;
  // term_j = (-1)^j j! C(m,j) C(n,j); updated multiplicatively.
  double coeff = 1.0;
  for (int j = 0; j <= std::min(m, n); ++j) {
    if (j > 0) coeff *= -double(m - j + 1) * double(n - j + 1) / j;
    sum += coeff * std::pow(z, m - j) * std::pow(zb, n - j);
  }
  return sum;
}

void eval_ito_normalized_all(int degree_m, int degree_n, cplx z, std::span<cplx> out) {
  check_index(degree_m, degree_n, "eval_ito_normalized");
  const std::size_t stride = std::size_t(degree_n) + 1;
  if (out.size() < std::size_t(degree_m + 1) * stride) throw UsageError("eval_ito_normalized_all: short output");
  const cplx zb = std::conj(z);
  out[0] = 1.0 / std::sqrt(std::numbers::pi);
  for (int n = 1; n <= degree_n; ++n) out[n] = zb * out[n - 1] / std::sqrt(double(n));
  for (int m = 0; m < degree_m; ++m) {
    const cplx* row = &out[std::size_t(m) * stride];
    cplx* next = &out[std::size_t(m + 1) * stride];
    const double scale = 1.0 / std::sqrt(double(m + 1));
    next[0] = z * row[0] * scale;
    for (int n = 1; n <= degree_n; ++n) {
      next[n] = (z * row[n] - std::sqrt(double(n)) * row[n - 1]) * scale;
    }
  }
}

cplx eval_ito_normalized(int m, int n, cplx z) {
  check_index(m, n, "eval_ito_normalized");
  std::vector<cplx> all(std::size_t(m + 1) * std::size_t(n + 1));
  eval_ito_normalized_all(m, n, z, all);
  return all.back();
}

ComplexCoeffs analyze_c(std::span<const cplx> samples, const QuadRule2D& rule, int degree) {
  check_index(degree, degree, "analyze_c");
  if (rule.order() < std::size_t(2 * degree + 2)) {
    throw UsageError("analyze_c: quadrature order " + std::to_string(rule.order()) +
                     " is insufficient for degree " + std::to_string(degree));
  }
  if (samples.size() != rule.size()) throw UsageError("analyze_c: sample count does not match rule");
  ComplexCoeffs out(degree);
  kernels::omp::complex_analyze(rule.nodes, rule.weights, samples, degree, out.values());
  return out;
}

std::vector<cplx> synthesize_c(const ComplexCoeffs& coeffs, std::span<const cplx> points) {
  check_index(coeffs.degree_m(), coeffs.degree_n(), "synthesize_c");
  std::vector<cplx> out(points.size());
  kernels::omp::complex_synthesize(coeffs.values(), coeffs.degree_m(), coeffs.degree_n(), points, out);
  return out;
}

WeightedShift dbar_matrix(int k, int degree) {
  if (k < 1) throw UsageError("dbar_matrix: k must be >= 1");
  if (k > degree) throw UsageError("dbar_matrix: k exceeds degree");
  const std::size_t stride = std::size_t(degree) + 1;
  WeightedShift shift;
  shift.input_size = stride * stride;
  for (int m = 0; m <= degree; ++m) {
    for (int n = 0; n + k <= degree; ++n) {
      shift.row_diag.push_back(std::size_t(m) * stride + std::size_t(n));
      shift.row_source.push_back(std::size_t(m) * stride + std::size_t(n + k));
      shift.row_weight.push_back(falling_sqrt(n + k, k));
    }
  }
  return shift;
}

WeightedShift mixed_matrix(int k, int degree) {
  if (k < 1) throw UsageError("mixed_matrix: k must be >= 1");
  if (k > degree) throw UsageError("mixed_matrix: k exceeds degree");
  const std::size_t stride = std::size_t(degree) + 1;
  WeightedShift shift;
  shift.input_size = stride * stride;
  for (int m = 0; m + k <= degree; ++m) {
    for (int n = 0; n + k <= degree; ++n) {
      shift.row_diag.push_back(std::size_t(m) * stride + std::size_t(n));
      shift.row_source.push_back(std::size_t(m + k) * stride + std::size_t(n + k));
      shift.row_weight.push_back(falling_sqrt(m + k, k) * falling_sqrt(n + k, k));
    }
  }
  return shift;
}

}  // namespace gaussl2
