#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "gaussl2/error.hpp"
#include "gaussl2/operator_core.hpp"
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

double max_diff(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

// Random spec drawn from the ranges of the randomized suite.
OperatorSpec random_spec(Family fam, int k, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mag(1.0, 3.0), cr(-5.0, 5.0), ph(0.0, 6.283185307179586);
  if (is_real_family(fam)) {
    const double a = mag(rng) * (rng() % 2 ? 1.0 : -1.0);
    return OperatorSpec::make(fam, k, a, cr(rng));
  }
  cplx c(cr(rng), cr(rng));
  if (std::abs(c) > 5.0) c *= 5.0 / std::abs(c);
  return OperatorSpec::make(fam, k, std::polar(mag(rng), ph(rng)), c);
}

}  // namespace

TEST_CASE("bound_sq examples") {
  CHECK(bound_sq(OperatorSpec::laplacian(1.0, 0.0)) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(std::abs(bound_sq(OperatorSpec::real_deriv(3, 2.0, 0.0)) - 1.0 / 12.0) < 1e-15);
  CHECK(std::abs(bound_sq(OperatorSpec::mixed(2, 1.0, 0.0)) - 0.25) < 1e-15);
  CHECK(std::abs(bound_sq(OperatorSpec::anti_holo(3, cplx(0, 2), 0.0)) - 4.0 / 6.0) < 1e-15);
  // The Laplacian is D^2.
  CHECK(bound_sq(OperatorSpec::laplacian(1.7, 0.3)) == bound_sq(OperatorSpec::real_deriv(2, 1.7, 0.3)));
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(OperatorSpec::real_deriv(1, 0.5, 0.0), HypothesisError);
  CHECK_THROWS_AS(OperatorSpec::anti_holo(1, cplx(0.3, 0.3), 0.0), HypothesisError);
  CHECK_THROWS_AS(OperatorSpec::real_deriv(1, 0.0, 1.0), DegenerateError);
  CHECK_THROWS_AS(OperatorSpec::real_deriv(0, 1.0, 0.0), UsageError);
  CHECK_THROWS_AS(OperatorSpec::make(Family::RealDeriv, 1, cplx(1, 1), 0.0), UsageError);
  CHECK_THROWS_AS(OperatorSpec::make(Family::RealDeriv, 1, 1.0, cplx(0, 1)), UsageError);
  CHECK_THROWS_AS(OperatorSpec::real_deriv(1, 1.0, std::nan("")), UsageError);
  CHECK(OperatorSpec::make(Family::RealLaplacian, 7, 1.0, 0.0).order() == 2);
  CHECK(OperatorSpec::anti_holo(1, -1.0, cplx(0, 2)).normalized_c() == cplx(0, -2));
  CHECK(parse_family("dbar") == Family::AntiHolo);
  CHECK_FALSE(parse_family("curl").has_value());
  for (Family f : {Family::RealDeriv, Family::RealLaplacian, Family::AntiHolo, Family::MixedDiag}) {
    CHECK(parse_family(family_name(f)) == f);
  }
}

TEST_CASE("apply examples") {
  const RealCoeffs a = apply(OperatorSpec::real_deriv(1, 1.0, 0.0), RealCoeffs::unit(1, 3));
  CHECK(a.degree() == 2);
  CHECK(std::abs(a[0] - std::sqrt(2.0)) < 1e-15);
  CHECK(a[1] == 0.0);

  const RealCoeffs b = apply(OperatorSpec::real_deriv(1, 1.0, 5.0), RealCoeffs::unit(0, 3));
  CHECK(b[0] == 5.0);
  CHECK(b.squared_norm() == 25.0);

  const ComplexCoeffs c = apply(OperatorSpec::anti_holo(1, cplx(0, 1), 1.0), ComplexCoeffs::unit(0, 1, 3));
  CHECK(c.degree_m() == 3);
  CHECK(c.degree_n() == 2);
  CHECK(std::abs(c(0, 0) - cplx(0, 1)) < 1e-15);
  CHECK(std::abs(c(0, 1) - 1.0) < 1e-15);
  CHECK(std::abs(c.squared_norm() - 2.0) < 1e-14);

  CHECK_THROWS_AS(apply(OperatorSpec::real_deriv(4, 1.0, 0.0), RealCoeffs(2)), UsageError);
}

TEST_CASE("solve_min_norm examples") {
  const RealSolveResult r1 = solve_min_norm(OperatorSpec::real_deriv(1, 1.0, 0.0), RealCoeffs::unit(0, 0), 12);
  CHECK(std::abs(r1.solution[1] - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(*r1.ratio_sq - 0.5) < 1e-15);
  CHECK(r1.satisfied);

  const RealSolveResult lap = solve_min_norm(OperatorSpec::laplacian(1.0, 0.0), RealCoeffs::unit(0, 0), 12);
  CHECK(std::abs(lap.solution[2] - 1.0 / std::sqrt(8.0)) < 1e-15);
  CHECK(std::abs(*lap.ratio_sq - 0.125) < 1e-15);

  const RealSolveResult zero = solve_min_norm(OperatorSpec::real_deriv(2, 1.5, 3.0), RealCoeffs(4), 20);
  CHECK_FALSE(zero.ratio_sq.has_value());
  CHECK(zero.satisfied);
  CHECK(zero.solution.squared_norm() == 0.0);

  const ComplexSolveResult mx = solve_min_norm(OperatorSpec::mixed(1, 1.0, 0.0), ComplexCoeffs::unit(0, 0, 0), 6);
  CHECK(std::abs(mx.solution(1, 1) - 1.0) < 1e-15);
  CHECK(std::abs(*mx.ratio_sq - 1.0) < 1e-15);

  CHECK_THROWS_AS(solve_min_norm(OperatorSpec::real_deriv(3, 1.0, 0.0), RealCoeffs(5), 6), UsageError);
}

TEST_CASE("equality attainment for k = 1..6") {
  for (double a : {1.0, -1.0, 2.5}) {
    for (int k = 1; k <= 6; ++k) {
      const auto r = solve_min_norm(OperatorSpec::real_deriv(k, a, 0.0), RealCoeffs::unit(0, 0), 4 * k + 8);
      CHECK(std::abs(*r.ratio_sq - 1.0 / (std::pow(2.0, k) * factorial(k))) <= 1e-10);
      CHECK(std::abs(*r.ratio_sq - r.bound_sq / (a * a)) <= 1e-10);
    }
    const auto l = solve_min_norm(OperatorSpec::laplacian(a, 0.0), RealCoeffs::unit(0, 0), 16);
    CHECK(std::abs(*l.ratio_sq - 0.125) <= 1e-10);
  }
  for (cplx a : {cplx(1, 0), cplx(0, -1), cplx(1.2, 1.9)}) {
    for (int k = 1; k <= 6; ++k) {
      const auto d = solve_min_norm(OperatorSpec::anti_holo(k, a, 0.0), ComplexCoeffs::unit(0, 0, 0), k + 4);
      CHECK(std::abs(*d.ratio_sq - 1.0 / factorial(k)) <= 1e-10);
      const auto m = solve_min_norm(OperatorSpec::mixed(k, a, 0.0), ComplexCoeffs::unit(0, 0, 0), k + 4);
      CHECK(std::abs(*m.ratio_sq - 1.0 / (factorial(k) * factorial(k))) <= 1e-10);
    }
  }
}

TEST_CASE("agrees with a dense minimal-norm solve") {
  std::mt19937_64 rng(101);
  for (Family fam : {Family::RealDeriv, Family::RealLaplacian}) {
    for (int k = 1; k <= 4; ++k) {
      const OperatorSpec spec = random_spec(fam, k, rng);
      const int kk = spec.order();
      const int N = 40;
      const RealCoeffs f = random_real(12, rng);
      const RealSolveResult res = solve_min_norm(spec, f, N);
      const Eigen::MatrixXd a = oracle::real_operator(kk, N, spec.alpha().real(), spec.c().real());
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(N - kk + 1);
      for (int i = 0; i <= f.degree(); ++i) rhs(i) = spec.alpha().real() * f[std::size_t(i)];
      const Eigen::VectorXd u = oracle::min_norm_solve(a, rhs);
      for (int i = 0; i <= N; ++i) CHECK(std::abs(res.solution[std::size_t(i)] - u(i)) < 1e-10);
    }
  }
  for (Family fam : {Family::AntiHolo, Family::MixedDiag}) {
    for (int k = 1; k <= 3; ++k) {
      const OperatorSpec spec = random_spec(fam, k, rng);
      const int N = 10;
      const ComplexCoeffs f = random_complex(4, rng);
      const ComplexSolveResult res = solve_min_norm(spec, f, N);
      const bool mixed = fam == Family::MixedDiag;
      const Eigen::MatrixXcd a = oracle::complex_operator(k, N, spec.alpha(), spec.c(), mixed);
      const int rm = mixed ? N - k : N;
      const int rn = N - k;
      Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero((rm + 1) * (rn + 1));
      for (int m = 0; m <= 4; ++m) {
        for (int n = 0; n <= 4; ++n) rhs(m * (rn + 1) + n) = spec.alpha() * f(m, n);
      }
      const Eigen::VectorXcd u = oracle::min_norm_solve(a, rhs);
      for (int m = 0; m <= N; ++m) {
        for (int n = 0; n <= N; ++n) CHECK(std::abs(res.solution(m, n) - u(m * (N + 1) + n)) < 1e-10);
      }
    }
  }
}

TEST_CASE("bounds hold for c = 0 on random inputs") {
  std::mt19937_64 rng(202);
  for (int t = 0; t < 200; ++t) {
    const int k = 1 + int(t % 4);
    const RealCoeffs f = random_real(24, rng);
    const auto r = solve_min_norm(OperatorSpec::real_deriv(k, 1.0, 0.0), f, 96);
    CHECK(*r.ratio_sq <= 1.0 / (std::pow(2.0, k) * factorial(k)));
    const ComplexCoeffs g = random_complex(8, rng);
    const auto d = solve_min_norm(OperatorSpec::anti_holo(std::min(k, 3), 1.0, 0.0), g, 16);
    CHECK(*d.ratio_sq <= 1.0 / factorial(std::min(k, 3)));
    const auto m = solve_min_norm(OperatorSpec::mixed(std::min(k, 3), 1.0, 0.0), g, 16);
    CHECK(*m.ratio_sq <= 1.0 / (factorial(std::min(k, 3)) * factorial(std::min(k, 3))));
  }
}

TEST_CASE("bounds hold for random c") {
  std::mt19937_64 rng(303);
  for (int t = 0; t < 200; ++t) {
    const int k = 1 + int(t % 4);
    const Family fam = (t % 5 == 0) ? Family::RealLaplacian : Family::RealDeriv;
    const OperatorSpec spec = random_spec(fam, k, rng);
    const auto r = solve_min_norm(spec, random_real(24, rng), 96);
    CHECK(*r.ratio_sq <= r.bound_sq + 1e-6);
    CHECK(r.residual_norm <= 1e-8);
    CHECK(r.satisfied);
  }
  for (int t = 0; t < 100; ++t) {
    const int k = 1 + int(t % 3);
    const OperatorSpec spec = random_spec(t % 2 ? Family::AntiHolo : Family::MixedDiag, k, rng);
    const auto r = solve_min_norm(spec, random_complex(8, rng), 16);
    CHECK(*r.ratio_sq <= r.bound_sq + 1e-6);
    CHECK(r.residual_norm <= 1e-8);
  }
}

TEST_CASE("commutator certificate") {
  std::mt19937_64 rng(404);
  for (Family fam : {Family::RealDeriv, Family::RealLaplacian, Family::AntiHolo, Family::MixedDiag}) {
    for (int k = 1; k <= 4; ++k) {
      const OperatorSpec spec = random_spec(fam, k, rng);
      const int N = is_real_family(fam) ? 40 : 12;
      const CommutatorCertificate cert = commutator_certificate(spec, N);
      CHECK(cert.holds);
      CHECK(cert.max_offdiag_err <= 1e-10);
      CHECK(cert.max_diag_err <= 1e-10);
      CHECK(cert.floor == doctest::Approx(lowering_floor_sq(fam, spec.order())));
      CHECK(cert.min_d >= cert.floor * (1.0 - 1e-12));
    }
  }
}

TEST_CASE("right inverse examples") {
  std::mt19937_64 rng(505);
  const OperatorSpec spec = OperatorSpec::real_deriv(2, 1.7, -2.2);
  const RightInverse T = build_right_inverse(spec, 96);
  const RealCoeffs f = random_real(24, rng);
  RealCoeffs af = f;
  for (double& v : af.values()) v *= 1.7;
  const RealCoeffs via_t = T(af);
  const RealSolveResult direct = solve_min_norm(spec, f, 96);
  CHECK(max_diff(via_t.values(), direct.solution.values()) <= 1e-12);

  const RealCoeffs t0 = build_right_inverse(OperatorSpec::laplacian(1.0, 0.0), 20)(RealCoeffs::unit(0, 0));
  CHECK(std::abs(t0[2] - 1.0 / std::sqrt(8.0)) < 1e-15);
  CHECK(std::abs(t0.squared_norm() - 0.125) < 1e-15);

  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const RealCoeffs g = random_real(24, rng);
    const RealCoeffs back = apply(spec, T(g)).resized(24);
    worst = std::max(worst, std::sqrt([&] {
                       double s = 0.0;
                       for (int i = 0; i <= 24; ++i) s += std::pow(back[std::size_t(i)] - g[std::size_t(i)], 2);
                       return s;
                     }()));
  }
  CHECK(worst <= 1e-8);
  CHECK_THROWS_AS(T(RealCoeffs(95)), UsageError);
}

TEST_CASE("parallel and serial chain solves agree") {
  std::mt19937_64 rng(606);
  const RightInverse tr = build_right_inverse(OperatorSpec::real_deriv(3, 2.0, 1.0), 120);
  const RealCoeffs g = random_real(40, rng);
  CHECK(tr(g) == tr.solve_serial(g));
  const RightInverse tc = build_right_inverse(OperatorSpec::mixed(2, cplx(1, 1), cplx(0.5, -2)), 16);
  const ComplexCoeffs h = random_complex(8, rng);
  CHECK(tc(h) == tc.solve_serial(h));
}

TEST_CASE("linearity of the right inverse") {
  std::mt19937_64 rng(707);
  const RightInverse T = build_right_inverse(OperatorSpec::anti_holo(2, cplx(0.6, 1.1), cplx(-3, 1)), 16);
  const ComplexCoeffs g1 = random_complex(8, rng);
  const ComplexCoeffs g2 = random_complex(8, rng);
  ComplexCoeffs sum(8), scaled(8);
  const cplx s(2.5, -0.75);
  for (std::size_t i = 0; i < sum.size(); ++i) {
    sum.values()[i] = g1.values()[i] + g2.values()[i];
    scaled.values()[i] = s * g1.values()[i];
  }
  const ComplexCoeffs t1 = T(g1), t2 = T(g2), ts = T(sum), tsc = T(scaled);
  double d_add = 0.0, d_scale = 0.0;
  for (std::size_t i = 0; i < t1.size(); ++i) {
    d_add = std::max(d_add, std::abs(ts.values()[i] - t1.values()[i] - t2.values()[i]));
    d_scale = std::max(d_scale, std::abs(tsc.values()[i] - s * t1.values()[i]));
  }
  CHECK(d_add <= 1e-10);
  CHECK(d_scale <= 1e-10);
}

TEST_CASE("truncation stability") {
  std::mt19937_64 rng(808);
  for (int k = 1; k <= 4; ++k) {
    const OperatorSpec spec = random_spec(Family::RealDeriv, k, rng);
    const RealCoeffs f = random_real(24, rng);
    const double a = *solve_min_norm(spec, f, 96).ratio_sq;
    const double b = *solve_min_norm(spec, f, 192).ratio_sq;
    CHECK(std::abs(a - b) <= 1e-8);
  }
  const OperatorSpec spec = OperatorSpec::anti_holo(1, cplx(1.5, 0), cplx(2, -1));
  const ComplexCoeffs f = random_complex(8, rng);
  CHECK(std::abs(*solve_min_norm(spec, f, 24).ratio_sq - *solve_min_norm(spec, f, 48).ratio_sq) <= 1e-8);
}

TEST_CASE("operator norm estimates") {
  const OpNormEstimate lap = estimate_op_norm(build_right_inverse(OperatorSpec::laplacian(1.0, 0.0), 96), 20, 1);
  CHECK(std::abs(lap.measured - 1.0 / std::sqrt(8.0)) <= 1e-10);
  CHECK(std::abs(lap.zero_c_norm - lap.zero_c_expected) <= 1e-10);
  REQUIRE(lap.candidates.size() == 1);
  CHECK(lap.candidates[0].satisfied);
  CHECK(lap.sampled_sup <= lap.measured + 1e-12);

  const OpNormEstimate d1 = estimate_op_norm(build_right_inverse(OperatorSpec::real_deriv(1, 1.0, 0.0), 96), 5, 2);
  CHECK(std::abs(d1.measured - 1.0 / std::sqrt(2.0)) <= 1e-10);

  const OpNormEstimate db = estimate_op_norm(build_right_inverse(OperatorSpec::anti_holo(2, 1.0, 0.0), 16), 10, 3);
  CHECK(std::abs(db.measured - 1.0 / std::sqrt(2.0)) <= 1e-10);
  REQUIRE(db.candidates.size() == 2);
  CHECK(db.candidates[0].label == "1/sqrt(2!)");
  CHECK(db.candidates[0].satisfied);
  CHECK(db.candidates[1].label == "1/2!");
  CHECK_FALSE(db.candidates[1].satisfied);

  for (int k = 1; k <= 3; ++k) {
    const OpNormEstimate m = estimate_op_norm(build_right_inverse(OperatorSpec::mixed(k, cplx(0, 2), 0.0), 16), 5, 4);
    CHECK(std::abs(m.zero_c_norm - 1.0 / (2.0 * factorial(k))) <= 1e-10);
  }
  CHECK_THROWS_AS(estimate_op_norm(build_right_inverse(OperatorSpec::laplacian(1.0, 0.0), 20), 0, 1), UsageError);
}
