#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "gaussl2/error.hpp"
#include "gaussl2/weight_maps.hpp"
#include "oracles/dense_min_norm.hpp"

using namespace gaussl2;

namespace {

double factorial(int k) { return std::tgamma(k + 1.0); }

RealCoeffs random_real(int band, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RealCoeffs f(band);
  for (double& v : f.values()) v = u(rng);
  return f;
}

ComplexCoeffs random_complex(int band, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexCoeffs f(band);
  for (cplx& v : f.values()) v = cplx(u(rng), u(rng));
  return f;
}

// int u(x)^2 e^{-phi(x)} dx by quadrature in the scaled weight, where the
// unit-frame coefficients of u are given.
double scaled_quadrature_norm(const WeightSpec& w, const RealCoeffs& unit_coeffs) {
  const QuadRule1D rule = build_rule_1d(unit_coeffs.degree() + 2);
  const LineRule line = scaled_rule(w, rule);
  std::vector<double> y(line.nodes.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = w.to_unit_frame(line.nodes[i]);
  const auto v = synthesize(unit_coeffs, y);
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += line.weights[i] * v[i] * v[i];
  return s;
}

double scaled_quadrature_norm(const WeightSpec& w, const ComplexCoeffs& unit_coeffs) {
  const QuadRule2D rule = build_rule_2d(2 * unit_coeffs.degree() + 2);
  const PlaneRule plane = scaled_rule(w, rule);
  std::vector<cplx> y(plane.nodes.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = w.to_unit_frame(plane.nodes[i]);
  const auto v = synthesize_c(unit_coeffs, y);
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += plane.weights[i] * std::norm(v[i]);
  return s;
}

}  // namespace

TEST_CASE("scaled_bound_sq examples") {
  CHECK(std::abs(scaled_bound_sq(OperatorSpec::laplacian(1.0, 0.0), WeightSpec::scaled_real(2.0, 0.0)) - 1.0 / 32) <
        1e-15);
  CHECK(std::abs(scaled_bound_sq(OperatorSpec::real_deriv(1, 1.0, 0.0), WeightSpec::scaled_real(0.5, 0.0)) - 1.0) <
        1e-15);
  for (int k = 1; k <= 4; ++k) {
    const OperatorSpec r = OperatorSpec::real_deriv(k, 2.0, 1.0);
    CHECK(scaled_bound_sq(r, WeightSpec::scaled_real(1.0, 3.0)) == doctest::Approx(bound_sq(r)).epsilon(1e-15));
    const OperatorSpec d = OperatorSpec::anti_holo(k, cplx(1, 1), 0.0);
    CHECK(scaled_bound_sq(d, WeightSpec::scaled_complex(1.0, cplx(1, -1))) ==
          doctest::Approx(bound_sq(d)).epsilon(1e-15));
    CHECK(scaled_bound_sq(d, WeightSpec::gauss_complex()) == doctest::Approx(bound_sq(d)).epsilon(1e-15));
  }
}

TEST_CASE("printed constants") {
  for (double lam : {0.5, 2.0, 4.0}) {
    for (int k = 1; k <= 4; ++k) {
      const auto wr = WeightSpec::scaled_real(lam, 0.0);
      const auto wc = WeightSpec::scaled_complex(lam, 0.0, 1);
      const OperatorSpec dk = OperatorSpec::real_deriv(k, 1.5, 0.0);
      const OperatorSpec db = OperatorSpec::anti_holo(k, cplx(0, 1.5), 0.0);
      const OperatorSpec mx = OperatorSpec::mixed(k, 1.5, 0.0);
      CHECK(printed_bound_sq(dk, wr) == doctest::Approx(2.25 / (std::pow(2 * lam, k) * factorial(k))));
      CHECK(printed_bound_sq(db, wc) == doctest::Approx(2.25 / (std::pow(lam, k) * factorial(k))));
      CHECK(printed_bound_sq(mx, wc) == doctest::Approx(2.25 / std::pow(std::pow(lam, k) * factorial(k), 2)));
      CHECK(printed_bound_sq(dk, wr) == doctest::Approx(scaled_bound_sq(dk, wr)).epsilon(1e-14));
      CHECK(printed_bound_sq(db, wc) == doctest::Approx(scaled_bound_sq(db, wc)).epsilon(1e-14));
      CHECK(printed_bound_sq(mx, wc) == doctest::Approx(scaled_bound_sq(mx, wc)).epsilon(1e-14));
    }
    const OperatorSpec lap = OperatorSpec::laplacian(1.0, 0.0);
    CHECK(printed_bound_sq(lap, WeightSpec::scaled_real(lam, 0.0)) == doctest::Approx(1.0 / (8 * lam * lam)));
  }
}

TEST_CASE("weight pairing errors") {
  CHECK_THROWS_AS(scaled_bound_sq(OperatorSpec::laplacian(1.0, 0.0), WeightSpec::gauss_complex()), UsageError);
  CHECK_THROWS_AS(scaled_bound_sq(OperatorSpec::anti_holo(1, 1.0, 0.0), WeightSpec::gauss_real()), UsageError);
  CHECK_THROWS_AS(scaled_bound_sq(OperatorSpec::anti_holo(1, 1.0, 0.0), WeightSpec::scaled_complex(2.0, 0.0, 2)),
                  UsageError);
  CHECK_NOTHROW(scaled_bound_sq(OperatorSpec::mixed(1, 1.0, 0.0), WeightSpec::scaled_complex(2.0, 0.0, 2)));
  CHECK_THROWS_AS(WeightSpec::scaled_real(0.0, 0.0), UsageError);
  CHECK_THROWS_AS(WeightSpec::scaled_real(-1.0, 0.0), UsageError);
  CHECK_THROWS_AS(WeightSpec::scaled_complex(1.0, 0.0, 3), UsageError);
}

TEST_CASE("lambda = 1 at the origin reproduces the unit solve") {
  std::mt19937_64 rng(1);
  const OperatorSpec spec = OperatorSpec::real_deriv(2, 1.3, 2.0);
  const RealCoeffs f = random_real(24, rng);
  const auto s = solve_scaled(spec, WeightSpec::scaled_real(1.0, 0.0), f, 96);
  const auto d = solve_min_norm(spec, f, 96);
  CHECK(s.solution == d.solution);
  CHECK(*s.ratio_sq == *d.ratio_sq);
}

TEST_CASE("Laplacian at lambda = 4") {
  const auto w = WeightSpec::scaled_real(4.0, 0.0);
  const auto s = solve_scaled(OperatorSpec::laplacian(1.0, 0.0), w, RealCoeffs::unit(0, 0), 16);
  CHECK(std::abs(*s.ratio_sq - 1.0 / 128) < 1e-15);
  const double u_sq = scaled_quadrature_norm(w, s.solution);
  const double f_sq = scaled_quadrature_norm(w, RealCoeffs::unit(0, 0));
  CHECK(std::abs(u_sq / f_sq - 1.0 / 128) < 1e-12);
}

TEST_CASE("translation leaves the ratio unchanged") {
  std::mt19937_64 rng(2);
  const OperatorSpec spec = OperatorSpec::real_deriv(3, 2.0, -1.5);
  const RealCoeffs f = random_real(20, rng);
  const auto a = solve_scaled(spec, WeightSpec::scaled_real(1.0, 0.0), f, 96);
  const auto b = solve_scaled(spec, WeightSpec::scaled_real(1.0, 3.0), f, 96);
  CHECK(*a.ratio_sq == doctest::Approx(*b.ratio_sq).epsilon(1e-14));
  CHECK(std::abs(scaled_quadrature_norm(WeightSpec::scaled_real(1.0, 3.0), b.solution) -
                 scaled_quadrature_norm(WeightSpec::scaled_real(1.0, 0.0), a.solution)) < 1e-10);
}

TEST_CASE("conjugation identity against a dense solve in the original frame") {
  // In the scaled frame the equation reads alpha s A v + c v = alpha f; the
  // minimal-norm v of that system must be the pushed-forward solution.
  std::mt19937_64 rng(3);
  for (double lam : {0.5, 2.0, 4.0}) {
    for (int k = 1; k <= 3; ++k) {
      const OperatorSpec spec = OperatorSpec::real_deriv(k, 1.5, 0.8);
      const auto w = WeightSpec::scaled_real(lam, -0.7);
      const int N = 30;
      const RealCoeffs f = random_real(10, rng);
      const auto res = solve_scaled(spec, w, f, N);
      const double s = std::pow(lam, 0.5 * k);
      const Eigen::MatrixXd a = oracle::real_operator(k, N, 1.5 * s, 0.8);
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(N - k + 1);
      for (int i = 0; i <= 10; ++i) rhs(i) = 1.5 * f[std::size_t(i)];
      const Eigen::VectorXd v = oracle::min_norm_solve(a, rhs);
      double d = 0.0;
      for (int i = 0; i <= N; ++i) d = std::max(d, std::abs(res.solution[std::size_t(i)] - v(i)));
      CHECK(d <= 1e-12);
    }
    for (int k = 1; k <= 2; ++k) {
      const OperatorSpec spec = OperatorSpec::mixed(k, cplx(1, 1), cplx(-0.5, 2));
      const auto w = WeightSpec::scaled_complex(lam, cplx(0.3, 0.1), 1);
      const int N = 8;
      const ComplexCoeffs f = random_complex(4, rng);
      const auto res = solve_scaled(spec, w, f, N);
      const double s = std::pow(lam, k);
      const Eigen::MatrixXcd a = oracle::complex_operator(k, N, cplx(1, 1) * s, cplx(-0.5, 2), true);
      Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero((N - k + 1) * (N - k + 1));
      for (int m = 0; m <= 4; ++m) {
        for (int n = 0; n <= 4; ++n) rhs(m * (N - k + 1) + n) = cplx(1, 1) * f(m, n);
      }
      const Eigen::VectorXcd v = oracle::min_norm_solve(a, rhs);
      double d = 0.0;
      for (int m = 0; m <= N; ++m) {
        for (int n = 0; n <= N; ++n) d = std::max(d, std::abs(res.solution(m, n) - v(m * (N + 1) + n)));
      }
      CHECK(d <= 1e-12);
    }
  }
}

TEST_CASE("constant transport in the equality cases") {
  for (double lam : {0.5, 1.0, 2.0, 4.0}) {
    const auto wr = WeightSpec::scaled_real(lam, 1.0);
    for (double a : {1.0, 2.0}) {
      const OperatorSpec lap = OperatorSpec::laplacian(a, 0.0);
      const auto l = solve_scaled(lap, wr, RealCoeffs::unit(0, 0), 16);
      CHECK(std::abs(*l.ratio_sq - l.printed_bound_sq / (a * a)) <= 1e-9);
      CHECK(std::abs(*l.ratio_sq - 1.0 / (8 * lam * lam)) <= 1e-9);
      for (int k = 1; k <= 6; ++k) {
        const auto r = solve_scaled(OperatorSpec::real_deriv(k, a, 0.0), wr, RealCoeffs::unit(0, 0), 4 * k + 8);
        CHECK(std::abs(*r.ratio_sq - 1.0 / (std::pow(2 * lam, k) * factorial(k))) <= 1e-9);
      }
    }
    const auto wc = WeightSpec::scaled_complex(lam, cplx(0.5, -0.5), 1);
    for (int k = 1; k <= 4; ++k) {
      const auto d = solve_scaled(OperatorSpec::anti_holo(k, cplx(0, 2), 0.0), wc, ComplexCoeffs::unit(0, 0, 0), k + 4);
      CHECK(std::abs(*d.ratio_sq - 1.0 / (std::pow(lam, k) * factorial(k))) <= 1e-9);
      const auto m = solve_scaled(OperatorSpec::mixed(k, 1.0, 0.0), wc, ComplexCoeffs::unit(0, 0, 0), k + 4);
      CHECK(std::abs(*m.ratio_sq - 1.0 / std::pow(std::pow(lam, k) * factorial(k), 2)) <= 1e-9);
      CHECK(m.printed_satisfied);
    }
  }
}

TEST_CASE("squared-lambda weight transports lambda^{2k}") {
  // phi = lambda^2 |z - z0|^2 gives the constant 1/(lambda^{2k} k!)^2, not
  // the printed 1/(lambda^k k!)^2; the two agree only at lambda = 1.
  const auto w = WeightSpec::scaled_complex(0.5, 0.0, 2);
  const auto m = solve_scaled(OperatorSpec::mixed(1, 1.0, 0.0), w, ComplexCoeffs::unit(0, 0, 0), 6);
  CHECK(std::abs(*m.ratio_sq - 16.0) < 1e-12);
  CHECK(std::abs(m.bound_sq - 16.0) < 1e-12);
  CHECK(std::abs(m.printed_bound_sq - 4.0) < 1e-12);
  CHECK(m.satisfied);
  CHECK_FALSE(m.printed_satisfied);
  const auto one = solve_scaled(OperatorSpec::mixed(2, 1.0, 0.0), WeightSpec::scaled_complex(1.0, 0.0, 2),
                                ComplexCoeffs::unit(0, 0, 0), 6);
  CHECK(one.printed_satisfied);
}

TEST_CASE("norm transport matches quadrature in the scaled weight") {
  std::mt19937_64 rng(4);
  for (double lam : {0.5, 2.0, 4.0}) {
    const auto wr = WeightSpec::scaled_real(lam, 0.4);
    const auto r = solve_scaled(OperatorSpec::real_deriv(2, 1.2, 3.0), wr, random_real(12, rng), 40);
    CHECK(std::abs(scaled_quadrature_norm(wr, r.solution) - r.output_sq_norm) <= 1e-9 * std::max(1.0, r.output_sq_norm));
    const auto wc = WeightSpec::scaled_complex(lam, cplx(-1, 0.5), 1);
    const auto c = solve_scaled(OperatorSpec::anti_holo(1, cplx(1, 1), cplx(2, 0)), wc, random_complex(4, rng), 8);
    CHECK(std::abs(scaled_quadrature_norm(wc, c.solution) - c.output_sq_norm) <= 1e-9 * std::max(1.0, c.output_sq_norm));
    CHECK(std::abs(scaled_quadrature_norm(wc, c.solution.reshaped(8, 8)) - c.output_sq_norm) <= 1e-9);
  }
}

TEST_CASE("domain specs") {
  const DomainSpec u = DomainSpec::interval(-1.0, 1.0, 0.0);
  CHECK(u.diameter() == 2.0);
  CHECK(u.contains(0.999));
  CHECK_FALSE(u.contains(1.0));
  CHECK_THROWS_AS(DomainSpec::interval(-1.0, 1.0, 1.5), UsageError);
  CHECK_THROWS_AS(DomainSpec::interval(1.0, -1.0, 0.0), UsageError);
  const DomainSpec d = DomainSpec::disk(0.0, 1.0, cplx(0.2, 0.2));
  CHECK(d.diameter() == 2.0);
  CHECK_THROWS_AS(DomainSpec::disk(0.0, 1.0, cplx(1.0, 0.5)), UsageError);
  CHECK_THROWS_AS(DomainSpec::disk(0.0, 0.0, 0.0), UsageError);
}

TEST_CASE("interval corollary, closed-form case") {
  // f = e_0, D u = f: u = e_1/sqrt(2) = x pi^{-1/4}.
  const auto rep = restrict_and_check(OperatorSpec::real_deriv(1, 1.0, 0.0), DomainSpec::interval(-1.0, 1.0, 0.0),
                                      RealCoeffs::unit(0, 0), 16);
  const double rpi = 1.0 / std::sqrt(std::numbers::pi);
  CHECK(std::abs(rep.factor - std::exp(4.0)) < 1e-12);
  CHECK(std::abs(rep.factor - 54.598150033144236) < 1e-12);
  CHECK(std::abs(rep.weight_floor - std::exp(-4.0)) < 1e-15);
  CHECK(std::abs(rep.u_on_U_sq - 2.0 / 3.0 * rpi) < 1e-13);
  CHECK(std::abs(rep.f_on_U_sq - 2.0 * rpi) < 1e-13);
  CHECK(rep.floor_ok);
  CHECK(rep.sampled_weight_min >= rep.weight_floor);
  CHECK(rep.satisfied);
  CHECK(rep.projected_applicable);
}

TEST_CASE("domain corollary on random inputs") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> cr(-5.0, 5.0), base(-0.9, 0.9);
  for (int t = 0; t < 50; ++t) {
    const int k = 1 + t % 4;
    const OperatorSpec spec = (t % 5 == 0) ? OperatorSpec::laplacian(1.5, cr(rng)) : OperatorSpec::real_deriv(k, 1.0, cr(rng));
    const auto rep = restrict_and_check(spec, DomainSpec::interval(-1.0, 1.0, base(rng)), random_real(12, rng), 48);
    CHECK(rep.satisfied);
    CHECK(rep.floor_ok);
    CHECK(rep.global_ok);
    CHECK(rep.residual_norm <= 1e-8);
  }
  for (int t = 0; t < 10; ++t) {
    const int k = 1 + t % 3;
    const cplx c(cr(rng), cr(rng));
    const OperatorSpec spec = t % 2 ? OperatorSpec::anti_holo(k, 1.0, c) : OperatorSpec::mixed(k, cplx(0, 1), c);
    const auto rep = restrict_and_check(spec, DomainSpec::disk(0.0, 1.0, cplx(base(rng), 0.0) * 0.7),
                                        random_complex(4, rng), 12);
    CHECK(rep.satisfied);
    CHECK(rep.floor_ok);
  }
}

TEST_CASE("zero input is not applicable") {
  const auto rep = restrict_and_check(OperatorSpec::real_deriv(1, 1.0, 1.0), DomainSpec::interval(-1.0, 1.0, 0.0),
                                      RealCoeffs(6), 20);
  CHECK_FALSE(rep.projected_applicable);
  CHECK_FALSE(rep.projected_ratio.has_value());
  CHECK(rep.satisfied);
  CHECK_THROWS_AS(restrict_and_check(OperatorSpec::real_deriv(1, 1.0, 1.0), DomainSpec::disk(0.0, 1.0, 0.0),
                                     RealCoeffs(6), 20),
                  UsageError);
}
