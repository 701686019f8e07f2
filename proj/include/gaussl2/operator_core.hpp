#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gaussl2/chain_solver.hpp"
#include "gaussl2/hermite_complex.hpp"
#include "gaussl2/hermite_real.hpp"
#include "gaussl2/weighted_shift.hpp"

namespace gaussl2 {

// Tolerance ladder.
inline constexpr double kResidualRelTol = 1e-9;
inline constexpr double kBoundSlack = 1e-6;
inline constexpr double kEqualityTol = 1e-10;

enum class Family { RealDeriv, RealLaplacian, AntiHolo, MixedDiag };

/// CLI spelling: dk, lap, dbar, mixed.
std::string_view family_name(Family family);
std::optional<Family> parse_family(std::string_view name);
bool is_real_family(Family family);

/// alpha * A + c for A in {D^k, Laplacian, dbar^k, d^k dbar^k}.
/// The Laplacian on R is D^2 and is stored with order 2.
class OperatorSpec {
 public:
  /// Validates |alpha| >= 1, k >= 1, and real scalars for the real families.
  static OperatorSpec make(Family family, int k, cplx alpha, cplx c);

  static OperatorSpec laplacian(double alpha, double c) { return make(Family::RealLaplacian, 2, alpha, c); }
  static OperatorSpec real_deriv(int k, double alpha, double c) { return make(Family::RealDeriv, k, alpha, c); }
  static OperatorSpec anti_holo(int k, cplx alpha, cplx c) { return make(Family::AntiHolo, k, alpha, c); }
  static OperatorSpec mixed(int k, cplx alpha, cplx c) { return make(Family::MixedDiag, k, alpha, c); }

  Family family() const { return family_; }
  int order() const { return k_; }
  cplx alpha() const { return alpha_; }
  cplx c() const { return c_; }
  bool is_real() const { return is_real_family(family_); }

  /// c' = c / alpha, the constant of the normalized equation A u + c' u = f.
  cplx normalized_c() const { return c_ / alpha_; }

  OperatorSpec with_c(cplx c) const { return make(family_, k_, alpha_, c); }

  std::string describe() const;

 private:
  OperatorSpec(Family family, int k, cplx alpha, cplx c) : family_(family), k_(k), alpha_(alpha), c_(c) {}

  Family family_;
  int k_;
  cplx alpha_;
  cplx c_;
};

/// Squared shift floor of the lowering map: 2^k k!, k!, (k!)^2.
double lowering_floor_sq(Family family, int k);

/// Squared-norm constant of the estimate: alpha^2/8, alpha^2/(2^k k!),
/// |alpha|^2/k!, |alpha|^2/(k!)^2.
double bound_sq(const OperatorSpec& spec);

/// Lowering map of the family on coefficients of the given degree.
WeightedShift lowering_map(const OperatorSpec& spec, int degree);

/// Shape of the retained equation rows for inputs of the given degree:
/// real -> N-k; dbar -> (N, N-k); mixed -> (N-k, N-k).
struct RowShape {
  int degree_m = 0;
  int degree_n = 0;
};
RowShape row_shape(const OperatorSpec& spec, int degree);

/// alpha * A u + c u on the retained rows.
RealCoeffs apply(const OperatorSpec& spec, const RealCoeffs& u);
ComplexCoeffs apply(const OperatorSpec& spec, const ComplexCoeffs& u);

template <class Coeffs>
struct SolveResult {
  Coeffs solution;
  double residual_norm = 0.0;
  double input_sq_norm = 0.0;
  double output_sq_norm = 0.0;
  std::optional<double> ratio_sq;  // empty when f = 0
  double bound_sq = 0.0;
  double tolerance = kBoundSlack;
  bool satisfied = true;
};
using RealSolveResult = SolveResult<RealCoeffs>;
using ComplexSolveResult = SolveResult<ComplexCoeffs>;

/// Bounded right inverse T = (alpha A + c)^+ on the truncated space, held as
/// one factored two-band chain per residue class (real, dbar) or diagonal
/// (mixed). Immutable and safe to share between threads.
class RightInverse {
 public:
  static RightInverse build(const OperatorSpec& spec, int degree);

  const OperatorSpec& spec() const { return spec_; }
  int degree() const { return degree_; }
  RowShape rows() const { return rows_; }
  /// Default input band for estimates: N - 4k, floored at 0.
  int band() const;
  std::size_t chain_count() const { return chains_.size(); }

  /// Minimal-norm u with (alpha A + c) u = g on every retained row. g may be
  /// any degree that fits inside the row shape.
  RealCoeffs operator()(const RealCoeffs& g) const;
  ComplexCoeffs operator()(const ComplexCoeffs& g) const;

  /// Serial loop over chains; the default call runs chains in parallel.
  RealCoeffs solve_serial(const RealCoeffs& g) const;
  ComplexCoeffs solve_serial(const ComplexCoeffs& g) const;

 private:
  struct Chain {
    std::vector<std::size_t> unknowns;  // input flat indices
    std::vector<std::size_t> rows;      // row flat indices, unknowns.size() - 1 of them
  };

  RightInverse(OperatorSpec spec, int degree) : spec_(spec), degree_(degree) {}

  template <class Scalar>
  void solve_chains(std::span<const Scalar> rhs, std::span<Scalar> out, bool parallel) const;

  OperatorSpec spec_;
  int degree_;
  RowShape rows_{};
  std::vector<Chain> chains_;
  std::vector<BidiagonalMinNorm<double>> real_factors_;
  std::vector<BidiagonalMinNorm<cplx>> complex_factors_;
};

inline RightInverse build_right_inverse(const OperatorSpec& spec, int degree) {
  return RightInverse::build(spec, degree);
}

/// Minimal-norm solution of alpha A u + c u = alpha f with degree-N unknowns.
RealSolveResult solve_min_norm(const OperatorSpec& spec, const RealCoeffs& f, int degree,
                               double bound_tol = kBoundSlack);
ComplexSolveResult solve_min_norm(const OperatorSpec& spec, const ComplexCoeffs& f, int degree,
                                  double bound_tol = kBoundSlack);

struct NormCandidate {
  std::string label;
  double value = 0.0;
  bool satisfied = false;
};

struct OpNormEstimate {
  int band = 0;
  int trials = 0;
  double sampled_sup = 0.0;  // max ||T g|| / ||g|| over seeded random g
  double measured = 0.0;     // largest singular value of T on the band
  double zero_c_norm = 0.0;  // same quantity for c = 0
  double zero_c_expected = 0.0;  // 1 / (|alpha| sqrt(floor))
  /// Constant implied by the squared-norm estimate first; for complex
  /// families the second entry is the constant printed with the right
  /// inverse theorem when it differs.
  std::vector<NormCandidate> candidates;
};

OpNormEstimate estimate_op_norm(const RightInverse& inverse, int trials, std::uint64_t seed,
                                int band = -1);

/// Entrywise check of (alpha S + c)(alpha S + c)^* - (alpha S + c)^*(alpha S + c)
/// = |alpha|^2 diag(d) on the interior rows of the truncated matrix.
/// Errors are relative to sqrt(|M_ii| |M_jj|) of the entries involved.
struct CommutatorCertificate {
  std::size_t rows = 0;
  double max_offdiag_err = 0.0;
  double max_diag_err = 0.0;  // measured d vs the shift-weight formula
  double min_d = 0.0;
  double floor = 0.0;
  bool holds = false;
};

CommutatorCertificate commutator_certificate(const OperatorSpec& spec, int degree, double tol = kEqualityTol);

}  // namespace gaussl2
