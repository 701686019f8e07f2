#include "gaussl2/weight_maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gaussl2/error.hpp"

namespace gaussl2 {
namespace {

double factorial(int k) {
  double f = 1.0;
  for (int j = 2; j <= k; ++j) f *= j;
  return f;
}

void check_pairing(const OperatorSpec& spec, const WeightSpec& w) {
  if (spec.is_real() != w.is_real()) throw UsageError("weight kind does not match the operator family");
  if (w.exponent() == 2 && spec.family() != Family::MixedDiag) {
    throw UsageError("the squared-lambda weight pairs with the mixed operator only");
  }
}

}  // namespace

WeightSpec WeightSpec::scaled_real(double lambda, double x0) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw UsageError("lambda must be a positive finite number");
  if (!std::isfinite(x0)) throw UsageError("x0 must be finite");
  return WeightSpec(WeightKind::ScaledReal, lambda, x0, 1);
}

WeightSpec WeightSpec::scaled_complex(double lambda, cplx z0, int exponent) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw UsageError("lambda must be a positive finite number");
  if (!std::isfinite(std::abs(z0))) throw UsageError("z0 must be finite");
  if (exponent != 1 && exponent != 2) throw UsageError("weight exponent must be 1 or 2");
  return WeightSpec(WeightKind::ScaledComplex, lambda, z0, exponent);
}

double WeightSpec::mu() const { return exponent_ == 2 ? lambda_ * lambda_ : lambda_; }

double WeightSpec::to_unit_frame(double x) const { return std::sqrt(mu()) * (x - center_.real()); }
cplx WeightSpec::to_unit_frame(cplx z) const { return std::sqrt(mu()) * (z - center_); }
double WeightSpec::from_unit_frame(double y) const { return y / std::sqrt(mu()) + center_.real(); }
cplx WeightSpec::from_unit_frame(cplx w) const { return w / std::sqrt(mu()) + center_; }

double WeightSpec::jacobian() const { return is_real() ? 1.0 / std::sqrt(mu()) : 1.0 / mu(); }

double operator_scale(const OperatorSpec& spec, const WeightSpec& w) {
  check_pairing(spec, w);
  const double mu = w.mu();
  const int k = spec.order();
  return spec.family() == Family::MixedDiag ? std::pow(mu, k) : std::pow(mu, 0.5 * k);
}

double scaled_bound_sq(const OperatorSpec& spec, const WeightSpec& w) {
  const double s = operator_scale(spec, w);
  return bound_sq(spec) / (s * s);
}

double printed_bound_sq(const OperatorSpec& spec, const WeightSpec& w) {
  check_pairing(spec, w);
  const double a2 = std::norm(spec.alpha());
  const double lam = w.lambda();
  const int k = spec.order();
  switch (spec.family()) {
    case Family::RealLaplacian: return a2 / (8.0 * lam * lam);
    case Family::RealDeriv: return a2 / (std::pow(2.0 * lam, k) * factorial(k));
    case Family::AntiHolo: return a2 / (std::pow(lam, k) * factorial(k));
    case Family::MixedDiag: {
      const double d = std::pow(lam, k) * factorial(k);
      return a2 / (d * d);
    }
  }
  return 0.0;
}

LineRule scaled_rule(const WeightSpec& w, const QuadRule1D& rule) {
  if (!w.is_real()) throw UsageError("scaled_rule: complex weight with a 1D rule");
  LineRule out;
  out.nodes.reserve(rule.nodes.size());
  out.weights.reserve(rule.weights.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    out.nodes.push_back(w.from_unit_frame(rule.nodes[i]));
    out.weights.push_back(rule.weights[i] * w.jacobian());
  }
  return out;
}

PlaneRule scaled_rule(const WeightSpec& w, const QuadRule2D& rule) {
  if (w.is_real()) throw UsageError("scaled_rule: real weight with a 2D rule");
  PlaneRule out;
  out.nodes.reserve(rule.nodes.size());
  out.weights.reserve(rule.weights.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    out.nodes.push_back(w.from_unit_frame(rule.nodes[i]));
    out.weights.push_back(rule.weights[i] * w.jacobian());
  }
  return out;
}

namespace {

template <class Coeffs>
ScaledSolveResult<Coeffs> scaled_impl(const OperatorSpec& spec, const WeightSpec& w, const Coeffs& f, int degree,
                                      double bound_tol) {
  ScaledSolveResult<Coeffs> out;
  out.scale = operator_scale(spec, w);
  out.jacobian = w.jacobian();
  const OperatorSpec inner = spec.with_c(spec.c() / out.scale);
  out.unit = solve_min_norm(inner, f, degree, bound_tol);
  out.solution = out.unit.solution;
  for (auto& v : out.solution.values()) v /= out.scale;
  out.input_sq_norm = f.squared_norm() * out.jacobian;
  out.output_sq_norm = out.solution.squared_norm() * out.jacobian;
  out.bound_sq = scaled_bound_sq(spec, w);
  out.printed_bound_sq = printed_bound_sq(spec, w);
  out.tolerance = bound_tol;
  if (out.input_sq_norm > 0.0) {
    out.ratio_sq = out.output_sq_norm / out.input_sq_norm;
    out.satisfied = *out.ratio_sq <= out.bound_sq + bound_tol;
    out.printed_satisfied = *out.ratio_sq <= out.printed_bound_sq + bound_tol;
  }
  return out;
}

}  // namespace

ScaledSolveResult<RealCoeffs> solve_scaled(const OperatorSpec& spec, const WeightSpec& w, const RealCoeffs& f,
                                           int degree, double bound_tol) {
  return scaled_impl(spec, w, f, degree, bound_tol);
}

ScaledSolveResult<ComplexCoeffs> solve_scaled(const OperatorSpec& spec, const WeightSpec& w, const ComplexCoeffs& f,
                                              int degree, double bound_tol) {
  return scaled_impl(spec, w, f, degree, bound_tol);
}

DomainSpec DomainSpec::interval(double a, double b, double basepoint) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) throw UsageError("interval needs finite a < b");
  DomainSpec d;
  d.kind_ = DomainKind::Interval;
  d.a_ = a;
  d.b_ = b;
  d.basepoint_ = basepoint;
  if (!d.contains(basepoint)) throw UsageError("basepoint lies outside the interval");
  return d;
}

DomainSpec DomainSpec::disk(cplx center, double radius, cplx basepoint) {
  if (!std::isfinite(std::abs(center)) || !(radius > 0.0) || !std::isfinite(radius)) {
    throw UsageError("disk needs a finite center and positive radius");
  }
  DomainSpec d;
  d.kind_ = DomainKind::Disk;
  d.center_ = center;
  d.radius_ = radius;
  d.basepoint_ = basepoint;
  if (!d.contains(basepoint)) throw UsageError("basepoint lies outside the disk");
  return d;
}

double DomainSpec::diameter() const { return kind_ == DomainKind::Interval ? b_ - a_ : 2.0 * radius_; }

bool DomainSpec::contains(cplx z) const {
  if (kind_ == DomainKind::Interval) return z.imag() == 0.0 && a_ < z.real() && z.real() < b_;
  return std::abs(z - center_) < radius_;
}

namespace {

void fill_common(DomainReport& rep, const OperatorSpec& spec, const DomainSpec& dom, double tol) {
  rep.diameter = dom.diameter();
  rep.factor = std::exp(rep.diameter * rep.diameter);
  rep.weight_floor = std::exp(-rep.diameter * rep.diameter);
  rep.bound_sq = bound_sq(spec);
  rep.tolerance = tol;
}

bool le_rel(double lhs, double rhs, double tol) { return lhs <= rhs * (1.0 + tol); }

void finish(DomainReport& rep) {
  const double tol = rep.tolerance;
  rep.floor_ok = rep.sampled_weight_min >= rep.weight_floor;
  rep.weighted_ok = le_rel(rep.weighted_u_sq, rep.bound_sq * rep.weighted_f_sq, tol);
  rep.step_floor_ok = le_rel(rep.u_on_U_sq, rep.factor * rep.u_on_U_weighted_sq, tol);
  rep.global_ok = le_rel(rep.u_on_U_sq, rep.factor * rep.bound_sq * rep.weighted_f_sq, tol);
  if (rep.projected_applicable) {
    rep.projected_ratio = rep.projected_u_on_U_sq / rep.f_on_U_sq;
    rep.projected_ok = le_rel(rep.projected_u_on_U_sq, rep.factor * rep.bound_sq * rep.f_on_U_sq, tol);
  }
  rep.satisfied = rep.floor_ok && rep.weighted_ok && rep.step_floor_ok && rep.global_ok && rep.projected_ok;
}

}  // namespace

DomainReport restrict_and_check(const OperatorSpec& spec, const DomainSpec& dom, const RealCoeffs& f, int degree,
                                const DomainOptions& options) {
  if (!spec.is_real() || dom.kind() != DomainKind::Interval) {
    throw UsageError("restrict_and_check: real operators need an interval domain");
  }
  DomainReport rep;
  fill_common(rep, spec, dom, kBoundSlack);
  const double x0 = dom.basepoint().real();

  rep.sampled_weight_min = std::numeric_limits<double>::infinity();
  const int ns = std::max(2, options.floor_samples);
  for (int i = 0; i < ns; ++i) {
    const double x = dom.a() + (dom.b() - dom.a()) * i / (ns - 1);
    rep.sampled_weight_min = std::min(rep.sampled_weight_min, std::exp(-(x - x0) * (x - x0)));
  }

  const LineRule line = composite_gauss_legendre(dom.a(), dom.b(), 4, degree + options.extra_points);
  std::vector<double> shifted(line.nodes.size());
  std::vector<double> gauss(line.nodes.size());
  for (std::size_t i = 0; i < line.nodes.size(); ++i) {
    shifted[i] = line.nodes[i] - x0;
    gauss[i] = std::exp(-shifted[i] * shifted[i]);
  }

  const RealSolveResult sol = solve_min_norm(spec, f, degree);
  rep.residual_norm = sol.residual_norm;
  rep.weighted_f_sq = sol.input_sq_norm;
  rep.weighted_u_sq = sol.output_sq_norm;
  const std::vector<double> uv = synthesize(sol.solution, shifted);
  const std::vector<double> fv = synthesize(f, shifted);
  double f_on_U_weighted = 0.0;
  for (std::size_t i = 0; i < line.nodes.size(); ++i) {
    const double w = line.weights[i];
    rep.u_on_U_sq += w * uv[i] * uv[i];
    rep.u_on_U_weighted_sq += w * uv[i] * uv[i] * gauss[i];
    rep.f_on_U_sq += w * fv[i] * fv[i];
    f_on_U_weighted += w * fv[i] * fv[i] * gauss[i];
  }

  rep.projected_applicable = rep.f_on_U_sq > options.applicable_floor;
  if (rep.projected_applicable) {
    const int band = f.degree();
    RealCoeffs proj(band);
    std::vector<double> basis(std::size_t(band) + 1);
    for (std::size_t i = 0; i < line.nodes.size(); ++i) {
      eval_hermite_normalized_all(band, shifted[i], basis);
      for (int n = 0; n <= band; ++n) proj[std::size_t(n)] += line.weights[i] * gauss[i] * fv[i] * basis[std::size_t(n)];
    }
    rep.projected_f_sq = proj.squared_norm();
    rep.projection_residual = std::sqrt(std::max(0.0, f_on_U_weighted - rep.projected_f_sq));
    const RealSolveResult psol = solve_min_norm(spec, proj, degree);
    rep.projected_residual_norm = psol.residual_norm;
    const std::vector<double> pv = synthesize(psol.solution, shifted);
    for (std::size_t i = 0; i < line.nodes.size(); ++i) rep.projected_u_on_U_sq += line.weights[i] * pv[i] * pv[i];
  }
  finish(rep);
  return rep;
}

DomainReport restrict_and_check(const OperatorSpec& spec, const DomainSpec& dom, const ComplexCoeffs& f, int degree,
                                const DomainOptions& options) {
  if (spec.is_real() || dom.kind() != DomainKind::Disk) {
    throw UsageError("restrict_and_check: complex operators need a disk domain");
  }
  DomainReport rep;
  fill_common(rep, spec, dom, kBoundSlack);
  const cplx z0 = dom.basepoint();

  // Square grid over the bounding box, closed disk only.
  rep.sampled_weight_min = std::numeric_limits<double>::infinity();
  const int ng = std::max(2, int(std::lround(std::sqrt(double(options.floor_samples)) * 6.0)));
  const double r = dom.radius();
  for (int i = 0; i < ng; ++i) {
    for (int j = 0; j < ng; ++j) {
      const cplx z = dom.center() + cplx(-r + 2.0 * r * i / (ng - 1), -r + 2.0 * r * j / (ng - 1));
      if (std::abs(z - dom.center()) > r) continue;
      rep.sampled_weight_min = std::min(rep.sampled_weight_min, std::exp(-std::norm(z - z0)));
    }
  }

  const int extra = options.extra_points;
  const PlaneRule plane = disk_rule(dom.center(), r, 2 * degree + extra, 4 * degree + 2 * extra);
  std::vector<cplx> shifted(plane.nodes.size());
  std::vector<double> gauss(plane.nodes.size());
  for (std::size_t i = 0; i < plane.nodes.size(); ++i) {
    shifted[i] = plane.nodes[i] - z0;
    gauss[i] = std::exp(-std::norm(shifted[i]));
  }

  const ComplexSolveResult sol = solve_min_norm(spec, f, degree);
  rep.residual_norm = sol.residual_norm;
  rep.weighted_f_sq = sol.input_sq_norm;
  rep.weighted_u_sq = sol.output_sq_norm;
  const std::vector<cplx> uv = synthesize_c(sol.solution, shifted);
  const std::vector<cplx> fv = synthesize_c(f, shifted);
  double f_on_U_weighted = 0.0;
  for (std::size_t i = 0; i < plane.nodes.size(); ++i) {
    const double w = plane.weights[i];
    rep.u_on_U_sq += w * std::norm(uv[i]);
    rep.u_on_U_weighted_sq += w * std::norm(uv[i]) * gauss[i];
    rep.f_on_U_sq += w * std::norm(fv[i]);
    f_on_U_weighted += w * std::norm(fv[i]) * gauss[i];
  }

  rep.projected_applicable = rep.f_on_U_sq > options.applicable_floor;
  if (rep.projected_applicable) {
    const int dm = f.degree_m();
    const int dn = f.degree_n();
    ComplexCoeffs proj(dm, dn);
    std::vector<cplx> basis(proj.size());
    for (std::size_t i = 0; i < plane.nodes.size(); ++i) {
      eval_ito_normalized_all(dm, dn, shifted[i], basis);
      const cplx wf = plane.weights[i] * gauss[i] * fv[i];
      for (std::size_t j = 0; j < basis.size(); ++j) proj.values()[j] += std::conj(basis[j]) * wf;
    }
    rep.projected_f_sq = proj.squared_norm();
    rep.projection_residual = std::sqrt(std::max(0.0, f_on_U_weighted - rep.projected_f_sq));
    const ComplexSolveResult psol = solve_min_norm(spec, proj, degree);
    rep.projected_residual_norm = psol.residual_norm;
    const std::vector<cplx> pv = synthesize_c(psol.solution, shifted);
    for (std::size_t i = 0; i < plane.nodes.size(); ++i) rep.projected_u_on_U_sq += plane.weights[i] * std::norm(pv[i]);
  }
  finish(rep);
  return rep;
}

}  // namespace gaussl2
