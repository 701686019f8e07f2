#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "gaussl2/hermite_complex.hpp"
#include "gaussl2/hermite_real.hpp"

namespace gaussl2 {

/// CSV coefficient files.
///   real:    "# real-coeffs degree=N" then lines "n,value"
///   complex: "# complex-coeffs degree=N" then lines "m,n,re,im"
/// The header is optional; without it the degree is the largest index seen
/// and the format follows the column count. Missing entries are zero.
/// Parse failures and files without entries throw UsageError.
using AnyCoeffs = std::variant<RealCoeffs, ComplexCoeffs>;

AnyCoeffs read_coeffs(std::istream& in);
AnyCoeffs read_coeffs_file(const std::string& path);

void write_coeffs(std::ostream& out, const RealCoeffs& c);
void write_coeffs(std::ostream& out, const ComplexCoeffs& c);
void write_coeffs_file(const std::string& path, const AnyCoeffs& c);

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

}  // namespace gaussl2
