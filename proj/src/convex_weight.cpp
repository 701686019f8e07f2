#include "gaussl2/convex_weight.hpp"

#include <algorithm>
#include <cmath>

#include "gaussl2/error.hpp"
#include "gaussl2/interval_quadrature.hpp"

namespace gaussl2 {

ConvexWeight ConvexWeight::polynomial(std::vector<double> coeffs) {
  while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
  for (double a : coeffs) {
    if (!std::isfinite(a)) throw UsageError("phi coefficients must be finite");
  }
  const int deg = static_cast<int>(coeffs.size()) - 1;
  if (deg < 2 || deg > kMaxConvexDegree || deg % 2 != 0) {
    throw UsageError("phi must be a polynomial of even degree between 2 and " + std::to_string(kMaxConvexDegree));
  }
  if (!(coeffs.back() > 0.0)) throw HypothesisError("phi needs a positive leading coefficient");
  return ConvexWeight(std::move(coeffs));
}

double ConvexWeight::phi(double x) const {
  double s = 0.0;
  for (std::size_t j = coeffs_.size(); j-- > 0;) s = s * x + coeffs_[j];
  return s;
}

double ConvexWeight::dphi(double x) const {
  double s = 0.0;
  for (std::size_t j = coeffs_.size(); j-- > 1;) s = s * x + double(j) * coeffs_[j];
  return s;
}

double ConvexWeight::d2phi(double x) const {
  double s = 0.0;
  for (std::size_t j = coeffs_.size(); j-- > 2;) s = s * x + double(j) * double(j - 1) * coeffs_[j];
  return s;
}

ConvexGrid build_convex_grid(const ConvexWeight& w, double rho, const ConvexGridOptions& options) {
  if (options.order < 2 || !(options.panel_width > 0.0)) throw UsageError("bad convex grid options");
  auto tail = [&](double x) { return w.phi(x) - 2.0 * rho * std::abs(x) - 40.0 * std::log1p(x * x); };

  double outer = 1.0;
  while (tail(outer) - tail(0.0) < options.decay + 1.0 || tail(-outer) - tail(0.0) < options.decay + 1.0) {
    outer *= 2.0;
    if (outer > 1e4) throw DegenerateError("weight decays too slowly for a finite grid");
  }
  const int scan = 20000;
  const double step = outer / scan;
  double lowest = tail(0.0);
  for (int i = 1; i <= scan; ++i) lowest = std::min({lowest, tail(i * step), tail(-i * step)});
  double half = 0.0;
  for (double side : {1.0, -1.0}) {
    int i = scan;
    while (i > 0 && tail(side * i * step) - lowest >= options.decay) --i;
    half = std::max(half, (i + 1) * step);
  }

  ConvexGrid grid;
  const int panels = std::max(1, static_cast<int>(std::ceil(half / options.panel_width)));
  grid.half_width = panels * options.panel_width;
  grid.order = options.order;
  for (int p = -panels; p <= panels; ++p) grid.breaks.push_back(p * options.panel_width);
  const LineRule base = gauss_legendre(options.order);
  for (std::size_t p = 0; p + 1 < grid.breaks.size(); ++p) {
    const double a = grid.breaks[p];
    const double b = grid.breaks[p + 1];
    for (int i = 0; i < options.order; ++i) {
      const double x = 0.5 * (a + b) + 0.5 * (b - a) * base.nodes[std::size_t(i)];
      grid.nodes.push_back(x);
      grid.weights.push_back(0.5 * (b - a) * base.weights[std::size_t(i)]);
      grid.density.push_back(std::exp(-w.phi(x)));
    }
  }
  return grid;
}

double weighted_norm_sq(const ConvexGrid& grid, std::span<const double> values) {
  if (values.size() != grid.nodes.size()) throw UsageError("weighted_norm_sq: size mismatch with the grid");
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += grid.weights[i] * grid.density[i] * values[i] * values[i];
  return s;
}

double ConvexSolution::particular(double x) const {
  const auto& br = grid_.breaks;
  const auto last = static_cast<std::ptrdiff_t>(br.size()) - 2;
  auto p = std::upper_bound(br.begin(), br.end(), x) - br.begin() - 1;
  p = std::clamp<std::ptrdiff_t>(p, 0, last);
  // Start from the break nearer to 0 so the recursion and the point
  // evaluation run in the same direction.
  const bool from_left = br[std::size_t(p)] >= 0.0;
  const double anchor = from_left ? br[std::size_t(p)] : br[std::size_t(p) + 1];
  const double start = up_at_break_[std::size_t(from_left ? p : p + 1)];
  if (x == anchor) return start;
  const double lo = std::min(anchor, x);
  const double hi = std::max(anchor, x);
  double integral = 0.0;
  for (std::size_t i = 0; i < panel_nodes_.size(); ++i) {
    const double t = 0.5 * (lo + hi) + 0.5 * (hi - lo) * panel_nodes_[i];
    integral += 0.5 * (hi - lo) * panel_weights_[i] * std::exp(c_prime_ * (t - x)) * f_(t);
  }
  const double sign = x > anchor ? 1.0 : -1.0;
  return std::exp(-c_prime_ * (x - anchor)) * start + sign * integral;
}

double ConvexSolution::homogeneous(double x) const { return std::exp(-c_prime_ * x); }

double ConvexSolution::operator()(double x) const { return particular(x) + k_star_ * homogeneous(x); }

double ConvexSolution::norm_sq_with(double k) const {
  double s = 0.0;
  for (std::size_t i = 0; i < up_.size(); ++i) {
    const double v = up_[i] + k * h_[i];
    s += grid_.weights[i] * grid_.density[i] * v * v;
  }
  return s;
}

ConvexSolution solve_first_order(const ConvexWeight& w, double alpha, double c, std::function<double(double)> f,
                                 const ConvexGridOptions& options) {
  if (!std::isfinite(alpha) || !std::isfinite(c)) throw UsageError("alpha and c must be finite");
  if (alpha == 0.0) throw DegenerateError("alpha = 0");
  if (std::abs(alpha) < 1.0) throw HypothesisError("estimate requires |alpha| >= 1");
  if (!f) throw UsageError("solve_first_order: empty right-hand side");

  ConvexSolution sol;
  sol.alpha_ = alpha;
  sol.c_ = c;
  sol.c_prime_ = c / alpha;
  sol.f_ = std::move(f);
  sol.grid_ = build_convex_grid(w, std::abs(sol.c_prime_), options);
  const ConvexGrid& g = sol.grid_;
  for (double x : g.nodes) {
    if (!(w.d2phi(x) > 0.0)) throw HypothesisError("phi is not strictly convex on the grid");
  }
  for (double x : g.breaks) {
    if (!(w.d2phi(x) > 0.0)) throw HypothesisError("phi is not strictly convex on the grid");
  }
  const LineRule base = gauss_legendre(g.order);
  sol.panel_nodes_ = base.nodes;
  sol.panel_weights_ = base.weights;

  // Cumulative particular solution at the panel breaks, outward from 0.
  const std::size_t nb = g.breaks.size();
  const std::size_t zero = nb / 2;
  sol.up_at_break_.assign(nb, 0.0);
  const double cp = sol.c_prime_;
  auto panel_integral = [&](double a, double b, double ref) {
    double s = 0.0;
    for (std::size_t i = 0; i < base.nodes.size(); ++i) {
      const double t = 0.5 * (a + b) + 0.5 * (b - a) * base.nodes[i];
      s += 0.5 * (b - a) * base.weights[i] * std::exp(cp * (t - ref)) * sol.f_(t);
    }
    return s;
  };
  for (std::size_t j = zero; j + 1 < nb; ++j) {
    const double a = g.breaks[j];
    const double b = g.breaks[j + 1];
    sol.up_at_break_[j + 1] = std::exp(-cp * (b - a)) * sol.up_at_break_[j] + panel_integral(a, b, b);
  }
  for (std::size_t j = zero; j-- > 0;) {
    const double a = g.breaks[j];
    const double b = g.breaks[j + 1];
    sol.up_at_break_[j] = std::exp(cp * (b - a)) * sol.up_at_break_[j + 1] - panel_integral(a, b, a);
  }

  const std::size_t n = g.nodes.size();
  sol.up_.resize(n);
  sol.h_.resize(n);
  double uh = 0.0;
  double hh = 0.0;
  double rhs = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = g.nodes[i];
    sol.up_[i] = sol.particular(x);
    sol.h_[i] = sol.homogeneous(x);
    const double wd = g.weights[i] * g.density[i];
    uh += wd * sol.up_[i] * sol.h_[i];
    hh += wd * sol.h_[i] * sol.h_[i];
    const double fx = sol.f_(x);
    rhs += wd * fx * fx / w.d2phi(x);
  }
  if (!(hh > 0.0) || !std::isfinite(hh)) throw DegenerateError("homogeneous solution has no finite weighted norm");
  sol.k_star_ = -uh / hh;
  sol.u_.resize(n);
  for (std::size_t i = 0; i < n; ++i) sol.u_[i] = sol.up_[i] + sol.k_star_ * sol.h_[i];
  sol.lhs_ = weighted_norm_sq(g, sol.u_);
  sol.rhs_ = alpha * alpha * rhs;
  return sol;
}

double ode_residual(const ConvexSolution& sol, std::span<const double> points, const std::function<double(double)>& f,
                    double step) {
  double worst = 0.0;
  for (double x : points) {
    const double du = (-sol(x + 2 * step) + 8 * sol(x + step) - 8 * sol(x - step) + sol(x - 2 * step)) / (12 * step);
    const double fx = f(x);
    worst = std::max(worst, std::abs(du + sol.c_prime() * sol(x) - fx) / (1.0 + std::abs(fx)));
  }
  return worst;
}

}  // namespace gaussl2
