#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "doctest.h"
#include "gaussl2/coeff_io.hpp"
#include "gaussl2/error.hpp"

using namespace gaussl2;

namespace {

AnyCoeffs parse(const std::string& text) {
  std::istringstream in(text);
  return read_coeffs(in);
}

}  // namespace

TEST_CASE("real files") {
  const AnyCoeffs a = parse("0,1\n");
  REQUIRE(std::holds_alternative<RealCoeffs>(a));
  CHECK(std::get<RealCoeffs>(a).degree() == 0);
  CHECK(std::get<RealCoeffs>(a)[0] == 1.0);

  const auto b = std::get<RealCoeffs>(parse("# real-coeffs degree=5\n\n 3 , -2.5\n# note\n1,+4e-3\n"));
  CHECK(b.degree() == 5);
  CHECK(b[3] == -2.5);
  CHECK(b[1] == 4e-3);
  CHECK(b[0] == 0.0);
}

TEST_CASE("complex files") {
  const AnyCoeffs a = parse("0,0,1,0\n");
  REQUIRE(std::holds_alternative<ComplexCoeffs>(a));
  const auto c = std::get<ComplexCoeffs>(parse("# complex-coeffs degree=3\n2,1,0.5,-1\n"));
  CHECK(c.degree() == 3);
  CHECK(c.is_square());
  CHECK(c(2, 1) == cplx(0.5, -1));
}

TEST_CASE("malformed files") {
  CHECK_THROWS_AS(parse(""), UsageError);
  CHECK_THROWS_AS(parse("# real-coeffs degree=4\n"), UsageError);
  CHECK_THROWS_AS(parse("0,1,2\n"), UsageError);
  CHECK_THROWS_AS(parse("0,1\n0,2\n"), UsageError);
  CHECK_THROWS_AS(parse("0,abc\n"), UsageError);
  CHECK_THROWS_AS(parse("-1,1\n"), UsageError);
  CHECK_THROWS_AS(parse("0,nan\n"), UsageError);
  CHECK_THROWS_AS(parse("0,1\n0,0,1,0\n"), UsageError);
  CHECK_THROWS_AS(parse("# real-coeffs degree=2\n3,1\n"), UsageError);
  CHECK_THROWS_AS(parse("401,1\n"), UsageError);
  CHECK_THROWS_AS(parse("0,1\n# real-coeffs degree=3\n"), UsageError);
  CHECK_THROWS_AS(read_coeffs_file("/nonexistent/path.csv"), UsageError);
}

TEST_CASE("write then read is lossless") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  RealCoeffs r(17);
  for (double& v : r.values()) v = u(rng) * std::exp(u(rng) / 50.0);
  r[4] = 0.0;
  std::ostringstream os;
  write_coeffs(os, r);
  CHECK(std::get<RealCoeffs>(parse(os.str())) == r);

  ComplexCoeffs c(6);
  for (cplx& v : c.values()) v = cplx(u(rng), u(rng)) / 7.0;
  std::ostringstream oc;
  write_coeffs(oc, c);
  CHECK(std::get<ComplexCoeffs>(parse(oc.str())) == c);
}

TEST_CASE("format_double") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(1.0 / std::sqrt(2.0)) == "0.7071067811865475");
  const double x = 0.1 + 0.2;
  CHECK(std::stod(format_double(x)) == x);
}
