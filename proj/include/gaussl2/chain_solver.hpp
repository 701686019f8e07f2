#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "gaussl2/error.hpp"

namespace gaussl2 {

namespace detail {
inline double cj(double x) { return x; }
inline std::complex<double> cj(std::complex<double> x) { return std::conj(x); }
}  // namespace detail

/// Minimal-norm solver for one two-band chain
///
///   diag * u[j] + super[j] * u[j+1] = y[j],   j = 0 .. L-2,
///
/// with L unknowns and L-1 equations (full row rank when every super[j] is
/// nonzero). The factorization is a Givens QR of the adjoint, A^H = Q [R; 0]
/// with R upper bidiagonal; the solution is u = Q [R^{-H} y; 0]. Cost and
/// storage are O(L).
template <class Scalar>
class BidiagonalMinNorm {
 public:
  BidiagonalMinNorm() = default;

  BidiagonalMinNorm(Scalar diag, std::span<const Scalar> super) : unknowns_(super.size() + 1) {
    const std::size_t eqs = super.size();
    rot_c_.resize(eqs);
    rot_s_.resize(eqs);
    r_diag_.resize(eqs);
    r_super_.resize(eqs);
    Scalar top = detail::cj(diag);
    for (std::size_t j = 0; j < eqs; ++j) {
      if (super[j] == Scalar(0)) throw DegenerateError("BidiagonalMinNorm: zero coupling breaks the chain");
      const Scalar low = detail::cj(super[j]);
      const double ft = std::abs(top);
      const double rho = std::hypot(ft, std::abs(low));
      double c;
      Scalar s;
      Scalar r;
      if (ft == 0.0) {
        c = 0.0;
        s = detail::cj(low) / std::abs(low);
        r = Scalar(std::abs(low));
      } else {
        const Scalar phase = top / ft;
        c = ft / rho;
        s = phase * detail::cj(low) / rho;
        r = phase * rho;
      }
      rot_c_[j] = c;
      rot_s_[j] = s;
      r_diag_[j] = r;
      // Next column of A^H has conj(diag) in row j+1 and zero in row j.
      const Scalar next = detail::cj(diag);
      r_super_[j] = s * next;
      top = c * next;
    }
  }

  std::size_t unknowns() const { return unknowns_; }
  std::size_t equations() const { return unknowns_ == 0 ? 0 : unknowns_ - 1; }

  /// rhs has equations() entries, out has unknowns() entries.
  void solve(std::span<const Scalar> rhs, std::span<Scalar> out) const {
    const std::size_t eqs = equations();
    if (unknowns_ == 0) return;
    // R^H v = y, R^H lower bidiagonal.
    for (std::size_t j = 0; j < eqs; ++j) {
      Scalar acc = rhs[j];
      if (j > 0) acc -= detail::cj(r_super_[j - 1]) * out[j - 1];
      out[j] = acc / detail::cj(r_diag_[j]);
    }
    out[eqs] = Scalar(0);
    // u = G_0^H ... G_{L-2}^H v.
    for (std::size_t jj = eqs; jj-- > 0;) {
      const Scalar a = out[jj];
      const Scalar b = out[jj + 1];
      out[jj] = rot_c_[jj] * a - rot_s_[jj] * b;
      out[jj + 1] = detail::cj(rot_s_[jj]) * a + rot_c_[jj] * b;
    }
  }

 private:
  std::size_t unknowns_ = 0;
  std::vector<double> rot_c_;
  std::vector<Scalar> rot_s_;
  std::vector<Scalar> r_diag_;
  std::vector<Scalar> r_super_;
};

}  // namespace gaussl2
