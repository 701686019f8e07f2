#include "gaussl2/operator_core.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "gaussl2/error.hpp"

namespace gaussl2 {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

double factorial(int k) {
  double f = 1.0;
  for (int j = 2; j <= k; ++j) f *= j;
  return f;
}

void require_degree(const OperatorSpec& spec, int degree) {
  if (degree < spec.order()) {
    throw UsageError("degree " + std::to_string(degree) + " is too small for operator order " +
                     std::to_string(spec.order()));
  }
}

}  // namespace

std::string_view family_name(Family family) {
  switch (family) {
    case Family::RealDeriv: return "dk";
    case Family::RealLaplacian: return "lap";
    case Family::AntiHolo: return "dbar";
    case Family::MixedDiag: return "mixed";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view name) {
  if (name == "dk") return Family::RealDeriv;
  if (name == "lap") return Family::RealLaplacian;
  if (name == "dbar") return Family::AntiHolo;
  if (name == "mixed") return Family::MixedDiag;
  return std::nullopt;
}

bool is_real_family(Family family) {
  return family == Family::RealDeriv || family == Family::RealLaplacian;
}

OperatorSpec OperatorSpec::make(Family family, int k, cplx alpha, cplx c) {
  if (family == Family::RealLaplacian) k = 2;
  if (k < 1) throw UsageError("operator order k must be >= 1");
  if (alpha == cplx(0.0)) throw DegenerateError("alpha = 0 leaves only multiplication by c");
  // Slack for unit-modulus alphas built from polar form.
  if (std::abs(alpha) < 1.0 - 1e-12) {
    throw HypothesisError("estimate requires |alpha| >= 1, got |alpha| = " + std::to_string(std::abs(alpha)));
  }
  if (is_real_family(family) && (alpha.imag() != 0.0 || c.imag() != 0.0)) {
    throw UsageError("real operator families take real alpha and c");
  }
  if (!std::isfinite(std::abs(alpha)) || !std::isfinite(std::abs(c))) throw UsageError("alpha and c must be finite");
  return OperatorSpec(family, k, alpha, c);
}

std::string OperatorSpec::describe() const {
  std::ostringstream os;
  os << family_name(family_) << "(k=" << k_ << ", alpha=" << alpha_ << ", c=" << c_ << ")";
  return os.str();
}

double lowering_floor_sq(Family family, int k) {
  switch (family) {
    case Family::RealDeriv:
    case Family::RealLaplacian: return std::ldexp(factorial(k), k);
    case Family::AntiHolo: return factorial(k);
    case Family::MixedDiag: return factorial(k) * factorial(k);
  }
  return 0.0;
}

double bound_sq(const OperatorSpec& spec) {
  return std::norm(spec.alpha()) / lowering_floor_sq(spec.family(), spec.order());
}

WeightedShift lowering_map(const OperatorSpec& spec, int degree) {
  require_degree(spec, degree);
  switch (spec.family()) {
    case Family::RealDeriv:
    case Family::RealLaplacian: return derivative_matrix(spec.order(), degree);
    case Family::AntiHolo: return dbar_matrix(spec.order(), degree);
    case Family::MixedDiag: return mixed_matrix(spec.order(), degree);
  }
  return {};
}

RowShape row_shape(const OperatorSpec& spec, int degree) {
  const int k = spec.order();
  switch (spec.family()) {
    case Family::RealDeriv:
    case Family::RealLaplacian: return {degree - k, degree - k};
    case Family::AntiHolo: return {degree, degree - k};
    case Family::MixedDiag: return {degree - k, degree - k};
  }
  return {};
}

RealCoeffs apply(const OperatorSpec& spec, const RealCoeffs& u) {
  if (!spec.is_real()) throw UsageError("apply: complex operator on real coefficients");
  const WeightedShift shift = lowering_map(spec, u.degree());
  const double a = spec.alpha().real();
  const double c = spec.c().real();
  RealCoeffs out(row_shape(spec, u.degree()).degree_m);
  for (std::size_t r = 0; r < shift.row_count(); ++r) {
    out[r] = c * u[shift.row_diag[r]] + a * shift.row_weight[r] * u[shift.row_source[r]];
  }
  return out;
}

ComplexCoeffs apply(const OperatorSpec& spec, const ComplexCoeffs& u) {
  if (spec.is_real()) throw UsageError("apply: real operator on complex coefficients");
  if (!u.is_square()) throw UsageError("apply: complex input must be a square coefficient array");
  const WeightedShift shift = lowering_map(spec, u.degree());
  const RowShape shape = row_shape(spec, u.degree());
  ComplexCoeffs out(shape.degree_m, shape.degree_n);
  auto in = u.values();
  auto dst = out.values();
  for (std::size_t r = 0; r < shift.row_count(); ++r) {
    dst[r] = spec.c() * in[shift.row_diag[r]] + spec.alpha() * shift.row_weight[r] * in[shift.row_source[r]];
  }
  return out;
}

RightInverse RightInverse::build(const OperatorSpec& spec, int degree) {
  require_degree(spec, degree);
  RightInverse inv(spec, degree);
  inv.rows_ = row_shape(spec, degree);
  const WeightedShift shift = lowering_map(spec, degree);

  std::vector<std::size_t> diag_row(shift.input_size, kNone);
  std::vector<bool> is_source(shift.input_size, false);
  for (std::size_t r = 0; r < shift.row_count(); ++r) {
    diag_row[shift.row_diag[r]] = r;
    is_source[shift.row_source[r]] = true;
  }
  for (std::size_t start = 0; start < shift.input_size; ++start) {
    if (is_source[start]) continue;
    Chain chain;
    std::size_t idx = start;
    while (true) {
      chain.unknowns.push_back(idx);
      const std::size_t r = diag_row[idx];
      if (r == kNone) break;
      chain.rows.push_back(r);
      idx = shift.row_source[r];
    }
    if (spec.is_real()) {
      std::vector<double> super;
      super.reserve(chain.rows.size());
      for (std::size_t r : chain.rows) super.push_back(spec.alpha().real() * shift.row_weight[r]);
      inv.real_factors_.emplace_back(spec.c().real(), super);
    } else {
      std::vector<cplx> super;
      super.reserve(chain.rows.size());
      for (std::size_t r : chain.rows) super.push_back(spec.alpha() * shift.row_weight[r]);
      inv.complex_factors_.emplace_back(spec.c(), super);
    }
    inv.chains_.push_back(std::move(chain));
  }
  return inv;
}

int RightInverse::band() const { return std::max(0, degree_ - 4 * spec_.order()); }

template <class Scalar>
void RightInverse::solve_chains(std::span<const Scalar> rhs, std::span<Scalar> out, bool parallel) const {
  const auto& factors = [&]() -> const auto& {
    if constexpr (std::is_same_v<Scalar, double>) {
      return real_factors_;
    } else {
      return complex_factors_;
    }
  }();
  const auto count = static_cast<std::ptrdiff_t>(chains_.size());
  // Chains touch disjoint unknowns and rows.
#pragma omp parallel if (parallel)
  {
    std::vector<Scalar> y;
    std::vector<Scalar> u;
#pragma omp for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      const Chain& chain = chains_[std::size_t(i)];
      y.resize(chain.rows.size());
      u.resize(chain.unknowns.size());
      for (std::size_t j = 0; j < chain.rows.size(); ++j) y[j] = rhs[chain.rows[j]];
      factors[std::size_t(i)].solve(y, u);
      for (std::size_t j = 0; j < chain.unknowns.size(); ++j) out[chain.unknowns[j]] = u[j];
    }
  }
}

namespace {

void check_real_rhs(const RealCoeffs& g, RowShape rows) {
  if (g.degree() > rows.degree_m) {
    throw UsageError("right-hand side degree " + std::to_string(g.degree()) +
                     " exceeds the retained rows (max " + std::to_string(rows.degree_m) + ")");
  }
}

void check_complex_rhs(const ComplexCoeffs& g, RowShape rows) {
  if (g.degree_m() > rows.degree_m || g.degree_n() > rows.degree_n) {
    throw UsageError("right-hand side shape exceeds the retained rows");
  }
}

}  // namespace

RealCoeffs RightInverse::operator()(const RealCoeffs& g) const {
  if (!spec_.is_real()) throw UsageError("RightInverse: complex operator applied to real coefficients");
  check_real_rhs(g, rows_);
  const RealCoeffs rhs = g.resized(rows_.degree_m);
  RealCoeffs u(degree_);
  solve_chains<double>(rhs.values(), u.values(), true);
  return u;
}

ComplexCoeffs RightInverse::operator()(const ComplexCoeffs& g) const {
  if (spec_.is_real()) throw UsageError("RightInverse: real operator applied to complex coefficients");
  check_complex_rhs(g, rows_);
  const ComplexCoeffs rhs = g.reshaped(rows_.degree_m, rows_.degree_n);
  ComplexCoeffs u(degree_);
  solve_chains<cplx>(rhs.values(), u.values(), true);
  return u;
}

RealCoeffs RightInverse::solve_serial(const RealCoeffs& g) const {
  if (!spec_.is_real()) throw UsageError("RightInverse: complex operator applied to real coefficients");
  check_real_rhs(g, rows_);
  const RealCoeffs rhs = g.resized(rows_.degree_m);
  RealCoeffs u(degree_);
  solve_chains<double>(rhs.values(), u.values(), false);
  return u;
}

ComplexCoeffs RightInverse::solve_serial(const ComplexCoeffs& g) const {
  if (spec_.is_real()) throw UsageError("RightInverse: real operator applied to complex coefficients");
  check_complex_rhs(g, rows_);
  const ComplexCoeffs rhs = g.reshaped(rows_.degree_m, rows_.degree_n);
  ComplexCoeffs u(degree_);
  solve_chains<cplx>(rhs.values(), u.values(), false);
  return u;
}

RealSolveResult solve_min_norm(const OperatorSpec& spec, const RealCoeffs& f, int degree, double bound_tol) {
  if (!spec.is_real()) throw UsageError("solve_min_norm: complex operator on real coefficients");
  require_degree(spec, degree);
  check_real_rhs(f, row_shape(spec, degree));
  const RightInverse inverse = RightInverse::build(spec, degree);
  const double a = spec.alpha().real();
  RealCoeffs rhs = f.resized(inverse.rows().degree_m);
  for (double& v : rhs.values()) v *= a;

  RealSolveResult result;
  result.solution = inverse(rhs);
  const RealCoeffs image = apply(spec, result.solution);
  double res = 0.0;
  for (std::size_t r = 0; r < image.size(); ++r) res += (image[r] - rhs[r]) * (image[r] - rhs[r]);
  result.residual_norm = std::sqrt(res);
  result.input_sq_norm = f.squared_norm();
  result.output_sq_norm = result.solution.squared_norm();
  result.bound_sq = bound_sq(spec);
  result.tolerance = bound_tol;
  if (result.input_sq_norm > 0.0) {
    result.ratio_sq = result.output_sq_norm / result.input_sq_norm;
    result.satisfied = *result.ratio_sq <= result.bound_sq + bound_tol;
  }
  return result;
}

ComplexSolveResult solve_min_norm(const OperatorSpec& spec, const ComplexCoeffs& f, int degree, double bound_tol) {
  if (spec.is_real()) throw UsageError("solve_min_norm: real operator on complex coefficients");
  require_degree(spec, degree);
  const RowShape rows = row_shape(spec, degree);
  check_complex_rhs(f, rows);
  const RightInverse inverse = RightInverse::build(spec, degree);
  ComplexCoeffs rhs = f.reshaped(rows.degree_m, rows.degree_n);
  for (cplx& v : rhs.values()) v *= spec.alpha();

  ComplexSolveResult result;
  result.solution = inverse(rhs);
  const ComplexCoeffs image = apply(spec, result.solution);
  double res = 0.0;
  for (std::size_t r = 0; r < image.size(); ++r) res += std::norm(image.values()[r] - rhs.values()[r]);
  result.residual_norm = std::sqrt(res);
  result.input_sq_norm = f.squared_norm();
  result.output_sq_norm = result.solution.squared_norm();
  result.bound_sq = bound_sq(spec);
  result.tolerance = bound_tol;
  if (result.input_sq_norm > 0.0) {
    result.ratio_sq = result.output_sq_norm / result.input_sq_norm;
    result.satisfied = *result.ratio_sq <= result.bound_sq + bound_tol;
  }
  return result;
}

namespace {

// Largest singular value of T restricted to inputs of degree <= band,
// assembled column by column.
double band_norm(const RightInverse& inverse, int band) {
  if (inverse.spec().is_real()) {
    const int n = inverse.degree();
    Eigen::MatrixXd m(n + 1, band + 1);
    for (int j = 0; j <= band; ++j) {
      const RealCoeffs col = inverse(RealCoeffs::unit(j, band));
      for (int i = 0; i <= n; ++i) m(i, j) = col[std::size_t(i)];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    return svd.singularValues()(0);
  }
  const std::size_t out = inverse.degree() + 1;
  const std::size_t in = std::size_t(band + 1);
  Eigen::MatrixXcd m(Eigen::Index(out * out), Eigen::Index(in * in));
  for (int a = 0; a <= band; ++a) {
    for (int b = 0; b <= band; ++b) {
      const ComplexCoeffs col = inverse(ComplexCoeffs::unit(a, b, band));
      const auto j = Eigen::Index(std::size_t(a) * in + std::size_t(b));
      for (std::size_t i = 0; i < col.size(); ++i) m(Eigen::Index(i), j) = col.values()[i];
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

}  // namespace

OpNormEstimate estimate_op_norm(const RightInverse& inverse, int trials, std::uint64_t seed, int band) {
  if (trials < 1) throw UsageError("estimate_op_norm: trials must be >= 1");
  const OperatorSpec& spec = inverse.spec();
  if (band < 0) band = inverse.band();
  const RowShape rows = inverse.rows();
  if (band > rows.degree_n || band > rows.degree_m) throw UsageError("estimate_op_norm: band exceeds retained rows");

  OpNormEstimate est;
  est.band = band;
  est.trials = trials;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    double ratio = 0.0;
    if (spec.is_real()) {
      RealCoeffs g(band);
      for (double& v : g.values()) v = unif(rng);
      const double gn = std::sqrt(g.squared_norm());
      if (gn == 0.0) continue;
      ratio = std::sqrt(inverse(g).squared_norm()) / gn;
    } else {
      ComplexCoeffs g(band);
      for (cplx& v : g.values()) v = cplx(unif(rng), unif(rng));
      const double gn = std::sqrt(g.squared_norm());
      if (gn == 0.0) continue;
      ratio = std::sqrt(inverse(g).squared_norm()) / gn;
    }
    est.sampled_sup = std::max(est.sampled_sup, ratio);
  }
  est.measured = std::max(band_norm(inverse, band), est.sampled_sup);
  const RightInverse zero_c = RightInverse::build(spec.with_c(0.0), inverse.degree());
  est.zero_c_norm = band_norm(zero_c, band);
  const int k = spec.order();
  const double floor = lowering_floor_sq(spec.family(), k);
  est.zero_c_expected = 1.0 / (std::abs(spec.alpha()) * std::sqrt(floor));

  // Candidates are stated for |alpha| = 1 and scale like 1/|alpha|.
  const double inv_alpha = 1.0 / std::abs(spec.alpha());
  auto add = [&](std::string label, double value) {
    value *= inv_alpha;
    est.candidates.push_back({std::move(label), value, est.measured <= value + kEqualityTol});
  };
  const std::string ks = std::to_string(k);
  switch (spec.family()) {
    case Family::RealLaplacian: add("1/sqrt(8)", 1.0 / std::sqrt(8.0)); break;
    case Family::RealDeriv: add("1/sqrt(2^" + ks + " " + ks + "!)", 1.0 / std::sqrt(floor)); break;
    case Family::AntiHolo:
      add("1/sqrt(" + ks + "!)", 1.0 / std::sqrt(floor));
      if (k > 1) add("1/" + ks + "!", 1.0 / floor);
      break;
    case Family::MixedDiag:
      add("1/" + ks + "!", 1.0 / std::sqrt(floor));
      if (k > 1) add("1/(" + ks + "!)^2", 1.0 / floor);
      break;
  }
  return est;
}

CommutatorCertificate commutator_certificate(const OperatorSpec& spec, int degree, double tol) {
  const WeightedShift shift = lowering_map(spec, degree);
  const auto rows = Eigen::Index(shift.row_count());
  const auto cols = Eigen::Index(shift.input_size);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(rows, cols);
  std::vector<double> weight_into(shift.input_size, 0.0);
  for (std::size_t r = 0; r < shift.row_count(); ++r) {
    a(Eigen::Index(r), Eigen::Index(shift.row_diag[r])) += spec.c();
    a(Eigen::Index(r), Eigen::Index(shift.row_source[r])) += spec.alpha() * shift.row_weight[r];
    weight_into[shift.row_source[r]] = shift.row_weight[r];
  }
  const Eigen::MatrixXcd left = a * a.adjoint();
  const Eigen::MatrixXcd right = a.adjoint() * a;
  const double alpha_sq = std::norm(spec.alpha());

  CommutatorCertificate cert;
  cert.rows = shift.row_count();
  cert.floor = lowering_floor_sq(spec.family(), spec.order());
  cert.min_d = std::numeric_limits<double>::infinity();
  for (Eigen::Index t = 0; t < rows; ++t) {
    const auto dt = Eigen::Index(shift.row_diag[std::size_t(t)]);
    for (Eigen::Index s = 0; s < rows; ++s) {
      const auto ds = Eigen::Index(shift.row_diag[std::size_t(s)]);
      const cplx diff = left(t, s) - right(dt, ds);
      const double scale = std::max(1.0, std::sqrt(std::abs(left(t, t)) * std::abs(left(s, s))));
      if (t == s) {
        const double w_out = shift.row_weight[std::size_t(t)];
        const double w_in = weight_into[std::size_t(dt)];
        const double expected = alpha_sq * (w_out * w_out - w_in * w_in);
        cert.max_diag_err = std::max(cert.max_diag_err, std::abs(diff - expected) / scale);
        cert.min_d = std::min(cert.min_d, diff.real() / alpha_sq);
      } else {
        cert.max_offdiag_err = std::max(cert.max_offdiag_err, std::abs(diff) / scale);
      }
    }
  }
  cert.holds = cert.max_offdiag_err <= tol && cert.max_diag_err <= tol && cert.min_d >= cert.floor * (1.0 - tol);
  return cert;
}

}  // namespace gaussl2
