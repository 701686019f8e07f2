#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "gaussl2/gauss_hermite.hpp"
#include "gaussl2/weighted_shift.hpp"

namespace gaussl2 {

using cplx = std::complex<double>;

inline constexpr int kMaxItoIndex = 60;

/// Coefficients c_{m,n} with respect to the orthonormal complex Hermite
/// basis eps_{m,n} = H_{m,n} / sqrt(pi m! n!) of L^2(C, e^{-|z|^2}).
/// Stored row-major over m; the shape may be rectangular because the image
/// of dbar^k keeps rows m <= N, n <= N - k.
class ComplexCoeffs {
 public:
  ComplexCoeffs() = default;
  explicit ComplexCoeffs(int degree) : ComplexCoeffs(degree, degree) {}
  ComplexCoeffs(int degree_m, int degree_n);

  int degree_m() const { return degree_m_; }
  int degree_n() const { return degree_n_; }
  /// Truncation bound of a square array.
  int degree() const { return std::max(degree_m_, degree_n_); }
  bool is_square() const { return degree_m_ == degree_n_; }
  std::size_t size() const { return coeffs_.size(); }

  std::size_t flat_index(int m, int n) const {
    return std::size_t(m) * std::size_t(degree_n_ + 1) + std::size_t(n);
  }
  cplx& operator()(int m, int n) { return coeffs_[flat_index(m, n)]; }
  cplx operator()(int m, int n) const { return coeffs_[flat_index(m, n)]; }

  std::span<cplx> values() { return coeffs_; }
  std::span<const cplx> values() const { return coeffs_; }

  double squared_norm() const;

  /// Copy into another shape, zero-padding or dropping entries.
  ComplexCoeffs reshaped(int degree_m, int degree_n) const;

  static ComplexCoeffs unit(int m, int n, int degree);

  friend bool operator==(const ComplexCoeffs&, const ComplexCoeffs&) = default;

 private:
  int degree_m_ = -1;
  int degree_n_ = -1;
  std::vector<cplx> coeffs_;
};

/// H_{m,n}(z, zbar) via H_{m+1,n} = z H_{m,n} - n H_{m,n-1}, H_{0,n} = zbar^n.
cplx eval_ito(int m, int n, cplx z);

/// Same polynomial from the closed form
/// sum_j (-1)^j j! C(m,j) C(n,j) z^{m-j} zbar^{n-j}.
cplx eval_ito_closed_form(int m, int n, cplx z);

/// eps_{m,n}(z) by the orthonormal recurrence.
cplx eval_ito_normalized(int m, int n, cplx z);

/// eps_{m,n}(z) for m <= M, n <= N into out (row-major, size (M+1)(N+1)).
void eval_ito_normalized_all(int degree_m, int degree_n, cplx z, std::span<cplx> out);

/// c_{m,n} = sum_i w_i conj(eps_{m,n}(z_i)) f(z_i). Needs order >= 2N + 2.
ComplexCoeffs analyze_c(std::span<const cplx> samples, const QuadRule2D& rule, int degree);

/// Pointwise sum c_{m,n} eps_{m,n}(z).
std::vector<cplx> synthesize_c(const ComplexCoeffs& coeffs, std::span<const cplx> points);

/// dbar^k: eps_{m,n} -> sqrt(n!/(n-k)!) eps_{m,n-k}. Rows m <= N, n <= N-k,
/// flattened in the (N, N-k) shape.
WeightedShift dbar_matrix(int k, int degree);

/// d^k dbar^k: eps_{m,n} -> sqrt(m!/(m-k)!) sqrt(n!/(n-k)!) eps_{m-k,n-k}.
/// Rows m, n <= N-k, flattened in the (N-k, N-k) shape.
WeightedShift mixed_matrix(int k, int degree);

}  // namespace gaussl2
