#pragma once

#include <complex>
#include <optional>

#include "gaussl2/gauss_hermite.hpp"
#include "gaussl2/interval_quadrature.hpp"
#include "gaussl2/operator_core.hpp"

namespace gaussl2 {

enum class WeightKind { GaussReal, ScaledReal, GaussComplex, ScaledComplex };

/// Gaussian weight e^{-phi} with
///   ScaledReal:    phi = lambda (x - x0)^2
///   ScaledComplex: phi = lambda^p |z - z0|^2,  p = exponent in {1, 2}.
/// The Gauss kinds are lambda = 1 centered at 0.
class WeightSpec {
 public:
  static WeightSpec gauss_real() { return WeightSpec(WeightKind::GaussReal, 1.0, 0.0, 1); }
  static WeightSpec gauss_complex() { return WeightSpec(WeightKind::GaussComplex, 1.0, 0.0, 1); }
  static WeightSpec scaled_real(double lambda, double x0);
  static WeightSpec scaled_complex(double lambda, cplx z0, int exponent = 1);

  WeightKind kind() const { return kind_; }
  bool is_real() const { return kind_ == WeightKind::GaussReal || kind_ == WeightKind::ScaledReal; }
  double lambda() const { return lambda_; }
  cplx center() const { return center_; }
  int exponent() const { return exponent_; }

  /// mu with phi = mu |z - z0|^2: lambda, or lambda^exponent for complex weights.
  double mu() const;

  /// Unit-frame variable y = sqrt(mu) (x - x0).
  double to_unit_frame(double x) const;
  cplx to_unit_frame(cplx z) const;
  double from_unit_frame(double y) const;
  cplx from_unit_frame(cplx w) const;

  /// dx = jacobian dy (real) or d sigma_z = jacobian d sigma_w (complex).
  double jacobian() const;

 private:
  WeightSpec(WeightKind kind, double lambda, cplx center, int exponent)
      : kind_(kind), lambda_(lambda), center_(center), exponent_(exponent) {}

  WeightKind kind_;
  double lambda_;
  cplx center_;
  int exponent_;
};

/// Scale s with A_x = s A_y under the substitution, so u = v / s.
double operator_scale(const OperatorSpec& spec, const WeightSpec& w);

/// Constant obtained by transporting bound_sq through the substitution:
/// bound_sq(spec) / operator_scale^2.
double scaled_bound_sq(const OperatorSpec& spec, const WeightSpec& w);

/// Constant as printed with the corollaries:
///   lap: alpha^2/(8 lambda^2), dk: alpha^2/((2 lambda)^k k!),
///   dbar: |alpha|^2/(lambda^k k!), mixed: |alpha|^2/(lambda^k k!)^2.
/// Equal to scaled_bound_sq except for the mixed operator with exponent 2.
double printed_bound_sq(const OperatorSpec& spec, const WeightSpec& w);

/// Quadrature against the scaled weight, built from a unit Gauss-Hermite rule.
LineRule scaled_rule(const WeightSpec& w, const QuadRule1D& rule);
PlaneRule scaled_rule(const WeightSpec& w, const QuadRule2D& rule);

template <class Coeffs>
struct ScaledSolveResult {
  SolveResult<Coeffs> unit;  // solve in the unit frame with c / s
  Coeffs solution;           // unit-basis coefficients of u(y / sqrt(mu) + x0)
  double scale = 1.0;        // operator_scale
  double jacobian = 1.0;
  double input_sq_norm = 0.0;   // weighted norm of f in the scaled weight
  double output_sq_norm = 0.0;  // weighted norm of u in the scaled weight
  std::optional<double> ratio_sq;
  double bound_sq = 0.0;         // transported
  double printed_bound_sq = 0.0;
  double tolerance = kBoundSlack;
  bool satisfied = true;
  bool printed_satisfied = true;
};

/// f is given by its scaled-frame coefficients, i.e. the unit-basis
/// coefficients of g(y) = f(y / sqrt(mu) + x0).
ScaledSolveResult<RealCoeffs> solve_scaled(const OperatorSpec& spec, const WeightSpec& w, const RealCoeffs& f,
                                           int degree, double bound_tol = kBoundSlack);
ScaledSolveResult<ComplexCoeffs> solve_scaled(const OperatorSpec& spec, const WeightSpec& w,
                                              const ComplexCoeffs& f, int degree,
                                              double bound_tol = kBoundSlack);

enum class DomainKind { Interval, Disk };

/// Bounded open set U: an interval (a, b) or a disk, with a basepoint in U.
class DomainSpec {
 public:
  static DomainSpec interval(double a, double b, double basepoint);
  static DomainSpec disk(cplx center, double radius, cplx basepoint);

  DomainKind kind() const { return kind_; }
  double a() const { return a_; }
  double b() const { return b_; }
  cplx center() const { return center_; }
  double radius() const { return radius_; }
  cplx basepoint() const { return basepoint_; }
  double diameter() const;
  bool contains(cplx z) const;

 private:
  DomainSpec() = default;

  DomainKind kind_ = DomainKind::Interval;
  double a_ = 0.0;
  double b_ = 0.0;
  cplx center_ = 0.0;
  double radius_ = 0.0;
  cplx basepoint_ = 0.0;
};

struct DomainOptions {
  int floor_samples = 4001;  // dense samples for the weight floor (per axis on a disk)
  int extra_points = 16;     // quadrature points beyond the polynomial degree
  double applicable_floor = 1e-14;  // int_U f^2 below this: end-to-end ratio not applicable
};

/// Checks of the bounded-domain estimate for one f, solved in the unit
/// weight centered at the basepoint. The constant is bound_sq(spec) (no lambda).
struct DomainReport {
  double diameter = 0.0;
  double factor = 0.0;    // e^{|U|^2}
  double bound_sq = 0.0;
  double weight_floor = 0.0;          // e^{-|U|^2}
  double sampled_weight_min = 0.0;    // min over dense samples of e^{-|x - x0|^2}
  bool floor_ok = false;

  // Global band-limited f.
  double residual_norm = 0.0;
  double weighted_f_sq = 0.0;   // int f^2 e^{-|x-x0|^2}
  double weighted_u_sq = 0.0;
  double u_on_U_weighted_sq = 0.0;  // int_U u^2 e^{-|x-x0|^2}
  double u_on_U_sq = 0.0;           // int_U u^2
  double f_on_U_sq = 0.0;           // int_U f^2
  bool weighted_ok = false;  // weighted_u_sq <= bound_sq weighted_f_sq
  bool step_floor_ok = false;  // u_on_U_sq <= factor u_on_U_weighted_sq
  bool global_ok = false;      // u_on_U_sq <= factor bound_sq weighted_f_sq

  // Projected zero extension: f 1_U projected onto the band of f.
  bool projected_applicable = false;
  double projected_f_sq = 0.0;         // coefficient norm of the projection
  double projection_residual = 0.0;    // weighted norm of f 1_U minus its projection
  double projected_residual_norm = 0.0;
  double projected_u_on_U_sq = 0.0;
  std::optional<double> projected_ratio;  // projected_u_on_U_sq / f_on_U_sq
  bool projected_ok = true;

  double tolerance = kBoundSlack;
  bool satisfied = false;
};

DomainReport restrict_and_check(const OperatorSpec& spec, const DomainSpec& dom, const RealCoeffs& f, int degree,
                                const DomainOptions& options = {});
DomainReport restrict_and_check(const OperatorSpec& spec, const DomainSpec& dom, const ComplexCoeffs& f,
                                int degree, const DomainOptions& options = {});

}  // namespace gaussl2
