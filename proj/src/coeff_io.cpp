#include "gaussl2/coeff_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string_view>
#include <utility>
#include <vector>

#include "gaussl2/error.hpp"

namespace gaussl2 {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    out.push_back(trim(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

[[noreturn]] void fail(int line_no, const std::string& what) {
  throw UsageError("coefficient file line " + std::to_string(line_no) + ": " + what);
}

int parse_index(std::string_view s, int line_no, int cap) {
  int v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || v < 0) fail(line_no, "bad index '" + std::string(s) + "'");
  if (v > cap) fail(line_no, "index " + std::to_string(v) + " exceeds the maximum " + std::to_string(cap));
  return v;
}

double parse_value(std::string_view s, int line_no) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v)) {
    fail(line_no, "bad value '" + std::string(s) + "'");
  }
  return v;
}

enum class Kind { Unknown, Real, Complex };

}  // namespace

AnyCoeffs read_coeffs(std::istream& in) {
  Kind kind = Kind::Unknown;
  std::optional<int> header_degree;
  std::map<int, double> real;
  std::map<std::pair<int, int>, cplx> complex;
  std::string raw;
  int line_no = 0;
  int max_index = -1;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const std::string_view body = trim(line.substr(1));
      Kind hk = Kind::Unknown;
      std::string_view rest;
      if (body.starts_with("real-coeffs")) {
        hk = Kind::Real;
        rest = trim(body.substr(11));
      } else if (body.starts_with("complex-coeffs")) {
        hk = Kind::Complex;
        rest = trim(body.substr(14));
      } else {
        continue;  // free comment
      }
      if (kind != Kind::Unknown || !real.empty() || !complex.empty()) fail(line_no, "header must come first");
      kind = hk;
      if (!rest.empty()) {
        if (!rest.starts_with("degree=")) fail(line_no, "expected degree=N in the header");
        header_degree = parse_index(rest.substr(7), line_no, hk == Kind::Real ? kMaxHermiteDegree : kMaxItoIndex);
      }
      continue;
    }
    const auto fields = split(line);
    Kind lk = Kind::Unknown;
    if (fields.size() == 2) lk = Kind::Real;
    else if (fields.size() == 4) lk = Kind::Complex;
    else fail(line_no, "expected 2 (n,value) or 4 (m,n,re,im) fields");
    if (kind == Kind::Unknown) kind = lk;
    if (lk != kind) fail(line_no, "row does not match the coefficient format");
    if (kind == Kind::Real) {
      const int n = parse_index(fields[0], line_no, header_degree.value_or(kMaxHermiteDegree));
      if (!real.emplace(n, parse_value(fields[1], line_no)).second) fail(line_no, "duplicate index");
      max_index = std::max(max_index, n);
    } else {
      const int cap = header_degree.value_or(kMaxItoIndex);
      const int m = parse_index(fields[0], line_no, cap);
      const int n = parse_index(fields[1], line_no, cap);
      const cplx v(parse_value(fields[2], line_no), parse_value(fields[3], line_no));
      if (!complex.emplace(std::pair(m, n), v).second) fail(line_no, "duplicate index");
      max_index = std::max({max_index, m, n});
    }
  }
  if (max_index < 0) throw UsageError("coefficient file has no entries");
  const int degree = header_degree.value_or(max_index);
  if (kind == Kind::Real) {
    RealCoeffs c(degree);
    for (const auto& [n, v] : real) c[std::size_t(n)] = v;
    return c;
  }
  ComplexCoeffs c(degree);
  for (const auto& [mn, v] : complex) c(mn.first, mn.second) = v;
  return c;
}

AnyCoeffs read_coeffs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open coefficient file '" + path + "'");
  return read_coeffs(in);
}

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ec == std::errc() ? p : buf);
}

void write_coeffs(std::ostream& out, const RealCoeffs& c) {
  out << "# real-coeffs degree=" << c.degree() << '\n';
  for (std::size_t n = 0; n < c.size(); ++n) out << n << ',' << format_double(c[n]) << '\n';
}

void write_coeffs(std::ostream& out, const ComplexCoeffs& c) {
  out << "# complex-coeffs degree=" << c.degree() << '\n';
  for (int m = 0; m <= c.degree_m(); ++m) {
    for (int n = 0; n <= c.degree_n(); ++n) {
      const cplx v = c(m, n);
      out << m << ',' << n << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
    }
  }
}

void write_coeffs_file(const std::string& path, const AnyCoeffs& c) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  std::visit([&](const auto& v) { write_coeffs(out, v); }, c);
  if (!out) throw UsageError("write failed for '" + path + "'");
}

}  // namespace gaussl2
