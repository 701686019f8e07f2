#pragma once

#include <functional>
#include <span>
#include <vector>

namespace gaussl2 {

inline constexpr int kMaxConvexDegree = 8;

/// phi(x) = sum_j coeffs[j] x^j with even degree >= 2 and positive leading
/// coefficient. Strict convexity is checked on the quadrature grid.
class ConvexWeight {
 public:
  static ConvexWeight polynomial(std::vector<double> coeffs);
  static ConvexWeight gaussian() { return polynomial({0.0, 0.0, 1.0}); }

  const std::vector<double>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  double phi(double x) const;
  double dphi(double x) const;
  double d2phi(double x) const;

 private:
  explicit ConvexWeight(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}
  std::vector<double> coeffs_;
};

/// Composite Gauss-Legendre grid on [-L, L] with a panel boundary at 0.
struct ConvexGrid {
  double half_width = 0.0;  // L
  int order = 0;            // points per panel
  std::vector<double> breaks;   // panel boundaries, ascending
  std::vector<double> nodes;
  std::vector<double> weights;  // plain dx weights
  std::vector<double> density;  // e^{-phi(x_i)}
};

struct ConvexGridOptions {
  double decay = 41.5;       // required drop of phi - 2 rho |x| - 40 log(1 + x^2) from its minimum
  double panel_width = 0.25;
  int order = 20;
};

/// L is the smallest radius where the log-tail of a degree-40 integrand
/// against e^{-phi}, including the e^{2 rho |x|} growth of the homogeneous
/// solution, has dropped by `decay`.
ConvexGrid build_convex_grid(const ConvexWeight& w, double rho, const ConvexGridOptions& options = {});

/// sum_i w_i v_i^2 e^{-phi(x_i)}.
double weighted_norm_sq(const ConvexGrid& grid, std::span<const double> values);

/// Solution of alpha u' + c u = alpha f minimizing int u^2 e^{-phi}.
class ConvexSolution {
 public:
  double alpha() const { return alpha_; }
  double c() const { return c_; }
  double c_prime() const { return c_prime_; }
  double k_star() const { return k_star_; }
  const ConvexGrid& grid() const { return grid_; }

  double lhs() const { return lhs_; }  // int u^2 e^{-phi}
  double rhs() const { return rhs_; }  // alpha^2 int f^2 / phi'' e^{-phi}
  double tolerance() const { return tolerance_; }
  bool satisfied() const { return lhs_ <= rhs_ * (1.0 + tolerance_); }

  const std::vector<double>& u_values() const { return u_; }
  const std::vector<double>& particular_values() const { return up_; }
  const std::vector<double>& homogeneous_values() const { return h_; }

  /// u(x) for any x in [-L, L].
  double operator()(double x) const;
  double particular(double x) const;
  double homogeneous(double x) const;

  /// Weighted norm of u_p + K h.
  double norm_sq_with(double k) const;

 private:
  friend ConvexSolution solve_first_order(const ConvexWeight&, double, double, std::function<double(double)>,
                                          const ConvexGridOptions&);

  double alpha_ = 1.0;
  double c_ = 0.0;
  double c_prime_ = 0.0;
  double k_star_ = 0.0;
  double lhs_ = 0.0;
  double rhs_ = 0.0;
  double tolerance_ = 1e-6;
  ConvexGrid grid_;
  std::function<double(double)> f_;
  std::vector<double> up_at_break_;
  std::vector<double> up_;
  std::vector<double> h_;
  std::vector<double> u_;
  std::vector<double> panel_nodes_;  // reference Gauss-Legendre nodes on [-1, 1]
  std::vector<double> panel_weights_;
};

ConvexSolution solve_first_order(const ConvexWeight& w, double alpha, double c, std::function<double(double)> f,
                                 const ConvexGridOptions& options = {});

/// max |u'(x) + c' u(x) - f(x)| / (1 + |f(x)|) by a five-point stencil.
double ode_residual(const ConvexSolution& sol, std::span<const double> points, const std::function<double(double)>& f,
                    double step = 1e-3);

}  // namespace gaussl2
