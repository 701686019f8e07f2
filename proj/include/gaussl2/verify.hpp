#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "gaussl2/hermite_complex.hpp"

namespace gaussl2 {

inline constexpr const char* kArtifactVersion = "1.0.0";

/// Suites: equality-pins, random-bounds, commutator, right-inverse,
/// scaling, domain, convex, all.
struct TrialConfig {
  std::string suite;
  std::vector<std::string> families{"lap", "dk", "dbar", "mixed"};
  int k_min = 1;
  std::optional<int> k_max;          // real families; 6 for equality-pins, else 4
  std::optional<int> complex_k_max;  // 3 for random-bounds and domain, else 4
  double alpha_min = 1.0;
  double alpha_max = 3.0;
  double c_max = 5.0;
  int band = 24;
  int degree = 96;
  int complex_band = 8;
  int complex_degree = 16;
  std::optional<int> trials;          // per-suite default, see trial_count()
  std::optional<int> complex_trials;  // random-bounds only; default 100
  std::uint64_t seed = 42;
  double tol_bound = 1e-6;
  double tol_residual = 1e-8;
  double tol_equality = 1e-10;
  double tol_scaled = 1e-9;
  double tol_conjugation = 1e-12;
  double tol_convex = 1e-6;
  double tol_convex_pin = 1e-8;
  std::vector<double> lambdas{0.5, 2.0, 4.0};
  bool record_wall_time = false;
  std::string out;

  /// Throws UsageError on unknown keys or bad types, HypothesisError when
  /// the alpha range leaves |alpha| >= 1.
  static TrialConfig from_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;
  void validate() const;
  /// Soft conditions, e.g. band + 4k > degree.
  std::vector<std::string> warnings() const;
  int real_k_max() const;
  int complex_k_max_resolved() const;
  /// random-bounds 200, right-inverse 20 per family and order, domain 50 per
  /// domain, convex 50; other suites ignore it.
  int trial_count() const;
  int complex_trial_count() const;
};

enum class Slack { Additive, Relative };

/// One checked inequality ratio_sq <= bound_sq (+ tolerance), optionally with
/// a residual ceiling and an equality pin |ratio_sq - expected| <= pin.
struct TrialRecord {
  std::string suite;
  std::string check;
  std::string family;
  int k = 0;
  cplx alpha = 1.0;
  cplx c = 0.0;
  std::map<std::string, double> params;
  double ratio_sq = 0.0;
  double bound_sq = 0.0;
  double tolerance = 0.0;
  Slack slack = Slack::Additive;
  std::optional<double> residual;
  std::optional<double> residual_limit;
  std::optional<double> expected_ratio_sq;
  std::optional<double> pin_tolerance;
  bool satisfied = false;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

bool recompute_satisfied(const TrialRecord& r);

struct Report {
  std::string version = kArtifactVersion;
  nlohmann::ordered_json config;
  std::vector<std::string> warnings;
  std::vector<TrialRecord> records;
  /// Findings reported without counting as violations: measured operator
  /// norms against candidate constants, printed-vs-transported constants.
  nlohmann::ordered_json notes = nlohmann::ordered_json::object();
  std::optional<double> wall_time_s;

  std::size_t violations() const;
};

struct Aggregates {
  std::size_t records = 0;
  std::size_t violations = 0;
  double max_ratio_sq = 0.0;
  double max_ratio_over_bound = 0.0;
};
Aggregates aggregate(const std::vector<TrialRecord>& records);

Report run_suite(const TrialConfig& config);

nlohmann::ordered_json to_json(const Report& report);
Report report_from_json(const nlohmann::ordered_json& j);
std::string dump_report(const Report& report);

/// Flattened records, one CSV row each.
std::string records_csv(const Report& report);

}  // namespace gaussl2
