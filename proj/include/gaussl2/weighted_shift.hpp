#pragma once

#include <cstddef>
#include <vector>

namespace gaussl2 {

/// Coefficient-space action of an index-lowering operator (D^k, dbar^k,
/// d^k dbar^k) on a truncated orthonormal basis.
///
/// Row r of the image is the basis element at input index row_diag[r]; the
/// operator sends the input element row_source[r] onto it with weight
/// row_weight[r]. Rows whose source would exceed the truncation are not
/// present at all. Inputs that are never a source are annihilated.
struct WeightedShift {
  std::size_t input_size = 0;
  std::vector<std::size_t> row_diag;
  std::vector<std::size_t> row_source;
  std::vector<double> row_weight;

  std::size_t row_count() const { return row_diag.size(); }

  /// Nonzero singular values of the truncated map (one per row).
  std::vector<double> singular_values() const { return row_weight; }

  double min_weight() const;
};

}  // namespace gaussl2
