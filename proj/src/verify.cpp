#include "gaussl2/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "gaussl2/coeff_io.hpp"
#include "gaussl2/convex_weight.hpp"
#include "gaussl2/error.hpp"
#include "gaussl2/operator_core.hpp"
#include "gaussl2/weight_maps.hpp"

namespace gaussl2 {

using ojson = nlohmann::ordered_json;

namespace {

const std::vector<std::string> kSuites{"equality-pins", "random-bounds", "commutator", "right-inverse",
                                       "scaling",       "domain",        "convex"};

// ---------------------------------------------------------------- config

template <class T>
T get_as(const nlohmann::json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config key '" + key + "': " + e.what());
  }
}

}  // namespace

TrialConfig TrialConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  TrialConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "suite") c.suite = get_as<std::string>(j, key);
    else if (key == "families") c.families = get_as<std::vector<std::string>>(j, key);
    else if (key == "k_min") c.k_min = get_as<int>(j, key);
    else if (key == "k_max") c.k_max = get_as<int>(j, key);
    else if (key == "complex_k_max") c.complex_k_max = get_as<int>(j, key);
    else if (key == "alpha_min") c.alpha_min = get_as<double>(j, key);
    else if (key == "alpha_max") c.alpha_max = get_as<double>(j, key);
    else if (key == "c_max") c.c_max = get_as<double>(j, key);
    else if (key == "band") c.band = get_as<int>(j, key);
    else if (key == "degree") c.degree = get_as<int>(j, key);
    else if (key == "complex_band") c.complex_band = get_as<int>(j, key);
    else if (key == "complex_degree") c.complex_degree = get_as<int>(j, key);
    else if (key == "trials") c.trials = get_as<int>(j, key);
    else if (key == "complex_trials") c.complex_trials = get_as<int>(j, key);
    else if (key == "seed") {
      if (!value.is_number_unsigned()) throw UsageError("config key 'seed' must be a non-negative integer");
      c.seed = value.get<std::uint64_t>();
    } else if (key == "tol_bound") c.tol_bound = get_as<double>(j, key);
    else if (key == "tol_residual") c.tol_residual = get_as<double>(j, key);
    else if (key == "tol_equality") c.tol_equality = get_as<double>(j, key);
    else if (key == "tol_scaled") c.tol_scaled = get_as<double>(j, key);
    else if (key == "tol_conjugation") c.tol_conjugation = get_as<double>(j, key);
    else if (key == "tol_convex") c.tol_convex = get_as<double>(j, key);
    else if (key == "tol_convex_pin") c.tol_convex_pin = get_as<double>(j, key);
    else if (key == "lambdas") c.lambdas = get_as<std::vector<double>>(j, key);
    else if (key == "record_wall_time") c.record_wall_time = get_as<bool>(j, key);
    else if (key == "out") c.out = get_as<std::string>(j, key);
    else throw UsageError("unknown config key '" + key + "'");
  }
  c.validate();
  return c;
}

int TrialConfig::real_k_max() const { return k_max.value_or(suite == "equality-pins" ? 6 : 4); }

int TrialConfig::complex_k_max_resolved() const {
  return complex_k_max.value_or(suite == "random-bounds" || suite == "domain" ? 3 : 4);
}

int TrialConfig::trial_count() const {
  if (trials) return *trials;
  if (suite == "random-bounds") return 200;
  if (suite == "right-inverse") return 20;
  return 50;
}

int TrialConfig::complex_trial_count() const { return complex_trials.value_or(suite == "random-bounds" ? 100 : 0); }

void TrialConfig::validate() const {
  if (suite.empty()) throw UsageError("config needs a 'suite'");
  if (suite != "all" && std::find(kSuites.begin(), kSuites.end(), suite) == kSuites.end()) {
    throw UsageError("unknown suite '" + suite + "'");
  }
  if (families.empty()) throw UsageError("families must not be empty");
  for (const auto& f : families) {
    if (!parse_family(f)) throw UsageError("unknown family '" + f + "'");
  }
  if (!(alpha_min > 0.0) || !std::isfinite(alpha_max) || alpha_max < alpha_min) {
    throw UsageError("alpha range must satisfy 0 < alpha_min <= alpha_max");
  }
  if (alpha_min < 1.0) throw HypothesisError("alpha range must satisfy |alpha| >= 1 (alpha_min < 1)");
  if (!(c_max >= 0.0) || !std::isfinite(c_max)) throw UsageError("c_max must be finite and >= 0");
  if (k_min < 1 || real_k_max() < k_min || complex_k_max_resolved() < k_min) {
    throw UsageError("order range must satisfy 1 <= k_min <= k_max");
  }
  if (trials && *trials < 1) throw UsageError("trials must be >= 1");
  if (complex_trials && *complex_trials < 0) throw UsageError("complex_trials must be >= 0");
  if (band < 0 || complex_band < 0) throw UsageError("band must be >= 0");
  if (band + real_k_max() > degree) throw UsageError("need band + k_max <= degree");
  if (complex_band + complex_k_max_resolved() > complex_degree) {
    throw UsageError("need complex_band + complex_k_max <= complex_degree");
  }
  if (degree > kMaxHermiteDegree) throw UsageError("degree exceeds " + std::to_string(kMaxHermiteDegree));
  if (complex_degree > kMaxItoIndex) throw UsageError("complex_degree exceeds " + std::to_string(kMaxItoIndex));
  for (double l : lambdas) {
    if (!(l > 0.0) || !std::isfinite(l)) throw UsageError("lambdas must be positive");
  }
  for (double t : {tol_bound, tol_residual, tol_equality, tol_scaled, tol_conjugation, tol_convex, tol_convex_pin}) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw UsageError("tolerances must be finite and >= 0");
  }
}

std::vector<std::string> TrialConfig::warnings() const {
  std::vector<std::string> w;
  if (band + 4 * real_k_max() > degree) {
    w.push_back("band + 4 k_max = " + std::to_string(band + 4 * real_k_max()) + " exceeds degree " +
                std::to_string(degree));
  }
  if (complex_band + 4 * complex_k_max_resolved() > complex_degree) {
    w.push_back("complex_band + 4 complex_k_max = " + std::to_string(complex_band + 4 * complex_k_max_resolved()) +
                " exceeds complex_degree " + std::to_string(complex_degree));
  }
  return w;
}

ojson TrialConfig::to_json() const {
  ojson j;
  j["suite"] = suite;
  j["families"] = families;
  j["k_min"] = k_min;
  j["k_max"] = real_k_max();
  j["complex_k_max"] = complex_k_max_resolved();
  j["alpha_min"] = alpha_min;
  j["alpha_max"] = alpha_max;
  j["c_max"] = c_max;
  j["band"] = band;
  j["degree"] = degree;
  j["complex_band"] = complex_band;
  j["complex_degree"] = complex_degree;
  j["trials"] = trial_count();
  j["complex_trials"] = complex_trial_count();
  j["seed"] = seed;
  j["tol_bound"] = tol_bound;
  j["tol_residual"] = tol_residual;
  j["tol_equality"] = tol_equality;
  j["tol_scaled"] = tol_scaled;
  j["tol_conjugation"] = tol_conjugation;
  j["tol_convex"] = tol_convex;
  j["tol_convex_pin"] = tol_convex_pin;
  j["lambdas"] = lambdas;
  j["record_wall_time"] = record_wall_time;
  if (!out.empty()) j["out"] = out;
  return j;
}

// ---------------------------------------------------------------- records

bool recompute_satisfied(const TrialRecord& r) {
  bool ok = r.slack == Slack::Additive ? r.ratio_sq <= r.bound_sq + r.tolerance
                                       : r.ratio_sq <= r.bound_sq * (1.0 + r.tolerance);
  if (r.residual_limit) ok = ok && r.residual && *r.residual <= *r.residual_limit;
  if (r.expected_ratio_sq) ok = ok && r.pin_tolerance && std::abs(r.ratio_sq - *r.expected_ratio_sq) <= *r.pin_tolerance;
  return ok;
}

std::size_t Report::violations() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const TrialRecord& r) {
    return !r.satisfied;
  }));
}

Aggregates aggregate(const std::vector<TrialRecord>& records) {
  Aggregates a;
  a.records = records.size();
  for (const auto& r : records) {
    if (!r.satisfied) ++a.violations;
    a.max_ratio_sq = std::max(a.max_ratio_sq, r.ratio_sq);
    if (r.bound_sq > 0.0) a.max_ratio_over_bound = std::max(a.max_ratio_over_bound, r.ratio_sq / r.bound_sq);
  }
  return a;
}

namespace {

// ---------------------------------------------------------------- helpers

using Rng = std::mt19937_64;

Rng trial_rng(std::uint64_t seed, std::uint32_t suite_salt, std::uint64_t index) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), suite_salt, std::uint32_t(index),
                    std::uint32_t(index >> 32)};
  return Rng(seq);
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

double draw_alpha_real(Rng& rng, const TrialConfig& cfg) { return uniform(rng, cfg.alpha_min, cfg.alpha_max); }

cplx draw_alpha_complex(Rng& rng, const TrialConfig& cfg) {
  const double r = uniform(rng, cfg.alpha_min, cfg.alpha_max);
  return std::polar(r, uniform(rng, 0.0, 2.0 * std::numbers::pi));
}

cplx draw_c_complex(Rng& rng, double c_max) {
  const double r = uniform(rng, 0.0, c_max);
  return std::polar(r, uniform(rng, 0.0, 2.0 * std::numbers::pi));
}

RealCoeffs random_real(Rng& rng, int band) {
  RealCoeffs f(band);
  for (double& v : f.values()) v = uniform(rng, -1.0, 1.0);
  const double n = std::sqrt(f.squared_norm());
  if (n > 0.0) {
    for (double& v : f.values()) v /= n;
  }
  return f;
}

ComplexCoeffs random_complex(Rng& rng, int band) {
  ComplexCoeffs f(band);
  for (cplx& v : f.values()) {
    const double re = uniform(rng, -1.0, 1.0);
    v = cplx(re, uniform(rng, -1.0, 1.0));
  }
  const double n = std::sqrt(f.squared_norm());
  if (n > 0.0) {
    for (cplx& v : f.values()) v /= n;
  }
  return f;
}

struct FamilyOrder {
  Family family;
  int k;
};

bool wants(const TrialConfig& cfg, Family f) {
  return std::find(cfg.families.begin(), cfg.families.end(), std::string(family_name(f))) != cfg.families.end();
}

std::vector<FamilyOrder> family_orders(const TrialConfig& cfg, bool real, bool complex) {
  std::vector<FamilyOrder> out;
  if (real && wants(cfg, Family::RealLaplacian)) out.push_back({Family::RealLaplacian, 2});
  if (real && wants(cfg, Family::RealDeriv)) {
    for (int k = cfg.k_min; k <= cfg.real_k_max(); ++k) out.push_back({Family::RealDeriv, k});
  }
  for (Family f : {Family::AntiHolo, Family::MixedDiag}) {
    if (complex && wants(cfg, f)) {
      for (int k = cfg.k_min; k <= cfg.complex_k_max_resolved(); ++k) out.push_back({f, k});
    }
  }
  return out;
}

TrialRecord base_record(const std::string& suite, const std::string& check, const OperatorSpec& spec) {
  TrialRecord r;
  r.suite = suite;
  r.check = check;
  r.family = std::string(family_name(spec.family()));
  r.k = spec.order();
  r.alpha = spec.alpha();
  r.c = spec.c();
  return r;
}

TrialRecord& finish(TrialRecord& r) {
  r.satisfied = recompute_satisfied(r);
  return r;
}

// Runs body(i) for i in [0, n) on OpenMP threads. Each index writes its own
// slot, so the output order does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      body(std::size_t(i));
    } catch (...) {
      errors[std::size_t(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// ---------------------------------------------------------------- suites

void suite_equality_pins(const TrialConfig& cfg, Report& rep) {
  for (const FamilyOrder& fo : family_orders(cfg, true, true)) {
    const bool real = is_real_family(fo.family);
    const OperatorSpec spec = OperatorSpec::make(fo.family, fo.k, cfg.alpha_min, 0.0);
    TrialRecord r = base_record("equality-pins", "pin", spec);
    if (real) {
      const RealSolveResult s = solve_min_norm(spec, RealCoeffs::unit(0, 0), cfg.degree, cfg.tol_bound);
      r.ratio_sq = s.ratio_sq.value_or(0.0);
      r.residual = s.residual_norm;
    } else {
      const ComplexSolveResult s = solve_min_norm(spec, ComplexCoeffs::unit(0, 0, 0), cfg.complex_degree, cfg.tol_bound);
      r.ratio_sq = s.ratio_sq.value_or(0.0);
      r.residual = s.residual_norm;
    }
    r.bound_sq = bound_sq(spec);
    r.tolerance = cfg.tol_bound;
    r.residual_limit = cfg.tol_residual;
    r.expected_ratio_sq = bound_sq(spec) / std::norm(spec.alpha());
    r.pin_tolerance = cfg.tol_equality;
    rep.records.push_back(finish(r));
  }
}

void suite_random_bounds(const TrialConfig& cfg, Report& rep) {
  std::vector<FamilyOrder> real_fo = family_orders(cfg, true, false);
  std::vector<FamilyOrder> complex_fo = family_orders(cfg, false, true);
  const std::size_t nr = real_fo.empty() ? 0 : std::size_t(cfg.trial_count());
  const std::size_t nc = complex_fo.empty() ? 0 : std::size_t(cfg.complex_trial_count());
  std::vector<TrialRecord> recs(nr + nc);
  parallel_for(nr + nc, [&](std::size_t i) {
    Rng rng = trial_rng(cfg.seed, 2, i);
    const bool real = i < nr;
    const auto& pool = real ? real_fo : complex_fo;
    const FamilyOrder fo = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    if (real) {
      const double alpha = draw_alpha_real(rng, cfg);
      const double c = uniform(rng, -cfg.c_max, cfg.c_max);
      const OperatorSpec spec = OperatorSpec::make(fo.family, fo.k, alpha, c);
      const RealSolveResult s = solve_min_norm(spec, random_real(rng, cfg.band), cfg.degree, cfg.tol_bound);
      TrialRecord r = base_record("random-bounds", "bound", spec);
      r.ratio_sq = s.ratio_sq.value_or(0.0);
      r.bound_sq = s.bound_sq;
      r.residual = s.residual_norm;
      recs[i] = r;
    } else {
      const cplx alpha = draw_alpha_complex(rng, cfg);
      const cplx c = draw_c_complex(rng, cfg.c_max);
      const OperatorSpec spec = OperatorSpec::make(fo.family, fo.k, alpha, c);
      const ComplexSolveResult s =
          solve_min_norm(spec, random_complex(rng, cfg.complex_band), cfg.complex_degree, cfg.tol_bound);
      TrialRecord r = base_record("random-bounds", "bound", spec);
      r.ratio_sq = s.ratio_sq.value_or(0.0);
      r.bound_sq = s.bound_sq;
      r.residual = s.residual_norm;
      recs[i] = r;
    }
    recs[i].tolerance = cfg.tol_bound;
    recs[i].residual_limit = cfg.tol_residual;
    finish(recs[i]);
  });
  rep.records.insert(rep.records.end(), recs.begin(), recs.end());
}

void suite_commutator(const TrialConfig& cfg, Report& rep) {
  const auto fos = family_orders(cfg, true, true);
  std::vector<TrialRecord> recs(fos.size());
  parallel_for(fos.size(), [&](std::size_t i) {
    Rng rng = trial_rng(cfg.seed, 3, i);
    const FamilyOrder fo = fos[i];
    const bool real = is_real_family(fo.family);
    const OperatorSpec spec =
        real ? OperatorSpec::make(fo.family, fo.k, draw_alpha_real(rng, cfg), uniform(rng, -cfg.c_max, cfg.c_max))
             : OperatorSpec::make(fo.family, fo.k, draw_alpha_complex(rng, cfg), draw_c_complex(rng, cfg.c_max));
    const CommutatorCertificate cert =
        commutator_certificate(spec, real ? cfg.degree : cfg.complex_degree, cfg.tol_equality);
    TrialRecord r = base_record("commutator", "min-d", spec);
    r.params["min_d"] = cert.min_d;
    r.params["floor"] = cert.floor;
    r.params["rows"] = double(cert.rows);
    r.ratio_sq = cert.floor / cert.min_d;
    r.bound_sq = 1.0;
    r.tolerance = cfg.tol_equality;
    r.residual = std::max(cert.max_offdiag_err, cert.max_diag_err);
    r.residual_limit = cfg.tol_equality;
    recs[i] = finish(r);
  });
  rep.records.insert(rep.records.end(), recs.begin(), recs.end());
}

ojson norm_note(const OperatorSpec& spec, const OpNormEstimate& est) {
  ojson j;
  j["family"] = std::string(family_name(spec.family()));
  j["k"] = spec.order();
  j["alpha"] = {spec.alpha().real(), spec.alpha().imag()};
  j["c"] = {spec.c().real(), spec.c().imag()};
  j["band"] = est.band;
  j["measured"] = est.measured;
  j["sampled_sup"] = est.sampled_sup;
  j["zero_c_norm"] = est.zero_c_norm;
  j["zero_c_expected"] = est.zero_c_expected;
  ojson cands = ojson::array();
  for (const auto& c : est.candidates) {
    cands.push_back({{"label", c.label}, {"value", c.value}, {"satisfied", c.satisfied}});
  }
  j["candidates"] = cands;
  return j;
}

void suite_right_inverse(const TrialConfig& cfg, Report& rep) {
  const auto fos = family_orders(cfg, true, true);
  const std::size_t per = std::size_t(cfg.trial_count());
  std::vector<std::vector<TrialRecord>> recs(fos.size());
  std::vector<ojson> notes(fos.size());
  parallel_for(fos.size(), [&](std::size_t i) {
    Rng rng = trial_rng(cfg.seed, 4, i);
    const FamilyOrder fo = fos[i];
    const bool real = is_real_family(fo.family);
    const int degree = real ? cfg.degree : cfg.complex_degree;
    const int band = real ? cfg.band : cfg.complex_band;
    const OperatorSpec spec =
        real ? OperatorSpec::make(fo.family, fo.k, draw_alpha_real(rng, cfg), uniform(rng, -cfg.c_max, cfg.c_max))
             : OperatorSpec::make(fo.family, fo.k, draw_alpha_complex(rng, cfg), draw_c_complex(rng, cfg.c_max));
    const RightInverse t = RightInverse::build(spec, degree);
    const double floor = lowering_floor_sq(spec.family(), spec.order());
    const double a2 = std::norm(spec.alpha());
    for (std::size_t trial = 0; trial < per; ++trial) {
      TrialRecord r = base_record("right-inverse", "identity", spec);
      double res = 0.0;
      if (real) {
        const RealCoeffs g = random_real(rng, band);
        const RealCoeffs u = t(g);
        const RealCoeffs back = apply(spec, u);
        for (std::size_t n = 0; n < back.size(); ++n) {
          const double gn = n < g.size() ? g[n] : 0.0;
          res += (back[n] - gn) * (back[n] - gn);
        }
        r.ratio_sq = u.squared_norm() / g.squared_norm();
      } else {
        const ComplexCoeffs g = random_complex(rng, band);
        const ComplexCoeffs u = t(g);
        const ComplexCoeffs back = apply(spec, u);
        const ComplexCoeffs gp = g.reshaped(back.degree_m(), back.degree_n());
        for (std::size_t n = 0; n < back.size(); ++n) res += std::norm(back.values()[n] - gp.values()[n]);
        r.ratio_sq = u.squared_norm() / g.squared_norm();
      }
      r.bound_sq = 1.0 / (a2 * floor);
      r.tolerance = cfg.tol_bound;
      r.residual = std::sqrt(res);
      r.residual_limit = cfg.tol_residual;
      recs[i].push_back(finish(r));
    }
    const OpNormEstimate est = estimate_op_norm(t, 20, rng());
    TrialRecord op = base_record("right-inverse", "opnorm", spec);
    op.params["measured"] = est.measured;
    op.ratio_sq = est.measured * est.measured;
    op.bound_sq = 1.0 / (a2 * floor);
    op.tolerance = cfg.tol_bound;
    recs[i].push_back(finish(op));

    TrialRecord pin = base_record("right-inverse", "opnorm-c0", spec.with_c(0.0));
    pin.params["zero_c_norm"] = est.zero_c_norm;
    pin.ratio_sq = est.zero_c_norm * est.zero_c_norm;
    pin.bound_sq = 1.0 / (a2 * floor);
    pin.tolerance = cfg.tol_bound;
    pin.expected_ratio_sq = est.zero_c_expected * est.zero_c_expected;
    pin.pin_tolerance = cfg.tol_equality;
    recs[i].push_back(finish(pin));

    const RightInverse t0 = RightInverse::build(spec.with_c(0.0), degree);
    ojson note;
    note["c"] = norm_note(spec, est);
    note["c0"] = norm_note(spec.with_c(0.0), estimate_op_norm(t0, 20, rng()));
    notes[i] = note;
  });
  ojson all = ojson::array();
  for (std::size_t i = 0; i < fos.size(); ++i) {
    rep.records.insert(rep.records.end(), recs[i].begin(), recs[i].end());
    all.push_back(notes[i]);
  }
  rep.notes["operator_norms"] = all;
}

// Residual of the original-frame equation alpha A_x u + c u = alpha f, written
// in the unit frame where A_x = s A_y.
template <class Coeffs>
double scaled_equation_residual(const OperatorSpec& spec, double s, const Coeffs& u, const Coeffs& f) {
  const WeightedShift shift = lowering_map(spec, u.degree());
  const RowShape shape = row_shape(spec, u.degree());
  double res = 0.0;
  auto in = u.values();
  if constexpr (std::is_same_v<Coeffs, RealCoeffs>) {
    const RealCoeffs fp = f.resized(shape.degree_m);
    for (std::size_t r = 0; r < shift.row_count(); ++r) {
      const double v = spec.c().real() * in[shift.row_diag[r]] +
                       spec.alpha().real() * s * shift.row_weight[r] * in[shift.row_source[r]];
      res += (v - spec.alpha().real() * fp[r]) * (v - spec.alpha().real() * fp[r]);
    }
  } else {
    const ComplexCoeffs fp = f.reshaped(shape.degree_m, shape.degree_n);
    for (std::size_t r = 0; r < shift.row_count(); ++r) {
      const cplx v = spec.c() * in[shift.row_diag[r]] + spec.alpha() * s * shift.row_weight[r] * in[shift.row_source[r]];
      res += std::norm(v - spec.alpha() * fp.values()[r]);
    }
  }
  return std::sqrt(res);
}

template <class Coeffs>
double max_diff(const Coeffs& a, const Coeffs& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a.values()[i] - b.values()[i]));
  return d;
}

void suite_scaling(const TrialConfig& cfg, Report& rep) {
  const auto fos = family_orders(cfg, true, true);
  struct Job {
    FamilyOrder fo;
    double lambda;
  };
  std::vector<Job> jobs;
  for (double l : cfg.lambdas) {
    for (const auto& fo : fos) jobs.push_back({fo, l});
  }
  std::vector<std::vector<TrialRecord>> recs(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    Rng rng = trial_rng(cfg.seed, 5, i);
    const Job job = jobs[i];
    const bool real = is_real_family(job.fo.family);
    const double x0 = uniform(rng, -2.0, 2.0);
    const double y0 = uniform(rng, -2.0, 2.0);
    const WeightSpec w = real ? WeightSpec::scaled_real(job.lambda, x0)
                              : WeightSpec::scaled_complex(job.lambda, cplx(x0, y0), 1);
    const int degree = real ? cfg.degree : cfg.complex_degree;
    const double s = operator_scale(OperatorSpec::make(job.fo.family, job.fo.k, cfg.alpha_min, 0.0), w);

    // Equality case, c = 0, f = first basis function.
    {
      const OperatorSpec spec = OperatorSpec::make(job.fo.family, job.fo.k, cfg.alpha_min, 0.0);
      TrialRecord r = base_record("scaling", "pin", spec);
      r.params["lambda"] = job.lambda;
      if (real) {
        const auto res = solve_scaled(spec, w, RealCoeffs::unit(0, 0), degree, cfg.tol_bound);
        r.ratio_sq = res.ratio_sq.value_or(0.0);
        r.bound_sq = res.bound_sq;
        r.params["printed_bound_sq"] = res.printed_bound_sq;
        r.residual = scaled_equation_residual(spec, s, res.solution, RealCoeffs::unit(0, 0));
      } else {
        const auto res = solve_scaled(spec, w, ComplexCoeffs::unit(0, 0, 0), degree, cfg.tol_bound);
        r.ratio_sq = res.ratio_sq.value_or(0.0);
        r.bound_sq = res.bound_sq;
        r.params["printed_bound_sq"] = res.printed_bound_sq;
        r.residual = scaled_equation_residual(spec, s, res.solution, ComplexCoeffs::unit(0, 0, 0));
      }
      r.tolerance = cfg.tol_bound;
      r.residual_limit = cfg.tol_residual;
      r.expected_ratio_sq = r.bound_sq / std::norm(spec.alpha());
      r.pin_tolerance = cfg.tol_scaled;
      recs[i].push_back(finish(r));
    }
    // Random c and f: bound, original-frame residual, conjugation identity.
    {
      const OperatorSpec spec =
          real ? OperatorSpec::make(job.fo.family, job.fo.k, draw_alpha_real(rng, cfg), uniform(rng, -cfg.c_max, cfg.c_max))
               : OperatorSpec::make(job.fo.family, job.fo.k, draw_alpha_complex(rng, cfg), draw_c_complex(rng, cfg.c_max));
      TrialRecord r = base_record("scaling", "bound", spec);
      TrialRecord conj = base_record("scaling", "conjugation", spec);
      r.params["lambda"] = job.lambda;
      conj.params["lambda"] = job.lambda;
      if (real) {
        const RealCoeffs f = random_real(rng, cfg.band);
        const auto res = solve_scaled(spec, w, f, degree, cfg.tol_bound);
        RealCoeffs manual = solve_min_norm(spec.with_c(spec.c() / s), f, degree).solution;
        for (double& v : manual.values()) v /= s;
        r.ratio_sq = res.ratio_sq.value_or(0.0);
        r.bound_sq = res.bound_sq;
        r.residual = scaled_equation_residual(spec, s, res.solution, f);
        conj.residual = max_diff(res.solution, manual);
      } else {
        const ComplexCoeffs f = random_complex(rng, cfg.complex_band);
        const auto res = solve_scaled(spec, w, f, degree, cfg.tol_bound);
        ComplexCoeffs manual = solve_min_norm(spec.with_c(spec.c() / s), f, degree).solution;
        for (cplx& v : manual.values()) v /= s;
        r.ratio_sq = res.ratio_sq.value_or(0.0);
        r.bound_sq = res.bound_sq;
        r.residual = scaled_equation_residual(spec, s, res.solution, f);
        conj.residual = max_diff(res.solution, manual);
      }
      r.tolerance = cfg.tol_bound;
      r.residual_limit = cfg.tol_residual;
      recs[i].push_back(finish(r));
      conj.ratio_sq = 0.0;
      conj.bound_sq = 0.0;
      conj.residual_limit = cfg.tol_conjugation;
      recs[i].push_back(finish(conj));
    }
  });
  for (const auto& v : recs) rep.records.insert(rep.records.end(), v.begin(), v.end());

  // The squared-lambda weight for the mixed operator: transported constant
  // against the printed one, equality case, alpha = alpha_min.
  ojson notes = ojson::array();
  if (wants(cfg, Family::MixedDiag)) {
    for (double l : cfg.lambdas) {
      for (int k = cfg.k_min; k <= cfg.complex_k_max_resolved(); ++k) {
        const OperatorSpec spec = OperatorSpec::mixed(k, cfg.alpha_min, 0.0);
        const WeightSpec w = WeightSpec::scaled_complex(l, 0.0, 2);
        const auto res = solve_scaled(spec, w, ComplexCoeffs::unit(0, 0, 0), cfg.complex_degree, cfg.tol_bound);
        ojson n;
        n["family"] = "mixed";
        n["k"] = k;
        n["lambda"] = l;
        n["exponent"] = 2;
        n["ratio_sq"] = res.ratio_sq.value_or(0.0);
        n["transported_bound_sq"] = res.bound_sq;
        n["printed_bound_sq"] = res.printed_bound_sq;
        n["transported_satisfied"] = res.satisfied;
        n["printed_satisfied"] = res.printed_satisfied;
        notes.push_back(n);
      }
    }
  }
  rep.notes["squared_lambda_weight"] = notes;
}

void suite_domain(const TrialConfig& cfg, Report& rep) {
  const auto real_fo = family_orders(cfg, true, false);
  const auto complex_fo = family_orders(cfg, false, true);
  const std::size_t per = std::size_t(cfg.trial_count());
  const std::size_t nr = real_fo.empty() ? 0 : per;
  const std::size_t nc = complex_fo.empty() ? 0 : per;
  std::vector<std::vector<TrialRecord>> recs(nr + nc);
  std::vector<int> not_applicable(nr + nc, 0);
  parallel_for(nr + nc, [&](std::size_t i) {
    Rng rng = trial_rng(cfg.seed, 6, i);
    const bool real = i < nr;
    const auto& pool = real ? real_fo : complex_fo;
    const FamilyOrder fo = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    DomainReport d;
    OperatorSpec spec = OperatorSpec::make(fo.family, fo.k, 1.0, 0.0);
    if (real) {
      spec = OperatorSpec::make(fo.family, fo.k, draw_alpha_real(rng, cfg), uniform(rng, -cfg.c_max, cfg.c_max));
      const DomainSpec dom = DomainSpec::interval(-1.0, 1.0, uniform(rng, -0.95, 0.95));
      d = restrict_and_check(spec, dom, random_real(rng, cfg.band), cfg.degree);
    } else {
      spec = OperatorSpec::make(fo.family, fo.k, draw_alpha_complex(rng, cfg), draw_c_complex(rng, cfg.c_max));
      const cplx z0 = std::polar(uniform(rng, 0.0, 0.95), uniform(rng, 0.0, 2.0 * std::numbers::pi));
      const DomainSpec dom = DomainSpec::disk(0.0, 1.0, z0);
      d = restrict_and_check(spec, dom, random_complex(rng, cfg.complex_band), cfg.complex_degree);
    }
    auto make = [&](const char* check, double ratio, double bound) {
      TrialRecord r = base_record("domain", check, spec);
      r.params["diameter"] = d.diameter;
      r.params["factor"] = d.factor;
      r.ratio_sq = ratio;
      r.bound_sq = bound;
      r.tolerance = cfg.tol_bound;
      r.slack = Slack::Relative;
      return r;
    };
    TrialRecord floor = make("weight-floor", d.weight_floor, d.sampled_weight_min);
    floor.tolerance = 0.0;
    recs[i].push_back(finish(floor));
    TrialRecord weighted = make("weighted", d.weighted_u_sq / d.weighted_f_sq, d.bound_sq);
    weighted.residual = d.residual_norm;
    weighted.residual_limit = cfg.tol_residual;
    recs[i].push_back(finish(weighted));
    TrialRecord step = make("floor-step", d.u_on_U_sq, d.factor * d.u_on_U_weighted_sq);
    recs[i].push_back(finish(step));
    TrialRecord global = make("global", d.u_on_U_sq / d.weighted_f_sq, d.factor * d.bound_sq);
    recs[i].push_back(finish(global));
    if (d.projected_applicable) {
      TrialRecord proj = make("zero-extension", *d.projected_ratio, d.factor * d.bound_sq);
      proj.params["projection_residual"] = d.projection_residual;
      proj.residual = d.projected_residual_norm;
      proj.residual_limit = cfg.tol_residual;
      recs[i].push_back(finish(proj));
    } else {
      not_applicable[i] = 1;
    }
  });
  int na = 0;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    rep.records.insert(rep.records.end(), recs[i].begin(), recs[i].end());
    na += not_applicable[i];
  }
  rep.notes["domain_not_applicable"] = na;
}

void suite_convex(const TrialConfig& cfg, Report& rep) {
  const std::vector<double> residual_points = [] {
    std::vector<double> p;
    for (int i = 0; i <= 24; ++i) p.push_back(-3.0 + 0.25 * i);
    return p;
  }();
  auto record = [&](const ConvexSolution& sol, const std::function<double(double)>& f) {
    TrialRecord r;
    r.suite = "convex";
    r.family = "dk";
    r.k = 1;
    r.alpha = sol.alpha();
    r.c = sol.c();
    r.params["lhs"] = sol.lhs();
    r.params["rhs"] = sol.rhs();
    r.params["k_star"] = sol.k_star();
    r.params["half_width"] = sol.grid().half_width;
    r.ratio_sq = sol.rhs() > 0.0 ? sol.lhs() / sol.rhs() : 0.0;
    r.bound_sq = 1.0;
    r.tolerance = cfg.tol_convex;
    r.slack = Slack::Relative;
    r.residual = ode_residual(sol, residual_points, f);
    r.residual_limit = 1e-7;
    return r;
  };

  {
    const auto f = [](double) { return 1.0; };
    const ConvexSolution sol = solve_first_order(ConvexWeight::gaussian(), 1.0, 0.0, f);
    TrialRecord r = record(sol, f);
    r.check = "pin-gaussian";
    r.expected_ratio_sq = 1.0;
    r.pin_tolerance = cfg.tol_convex_pin;
    rep.records.push_back(finish(r));
  }
  const ConvexWeight quartic = ConvexWeight::polynomial({0.0, 0.0, 1.0, 0.0, 1.0 / 12.0});
  const std::size_t n = std::size_t(cfg.trial_count());
  std::vector<TrialRecord> recs(n);
  parallel_for(n, [&](std::size_t i) {
    Rng rng = trial_rng(cfg.seed, 7, i);
    const int deg = std::uniform_int_distribution<int>(0, 6)(rng);
    std::vector<double> coeffs(std::size_t(deg) + 1);
    for (double& a : coeffs) a = uniform(rng, -1.0, 1.0);
    const auto f = [coeffs](double x) {
      double s = 0.0;
      for (std::size_t j = coeffs.size(); j-- > 0;) s = s * x + coeffs[j];
      return s;
    };
    double alpha = draw_alpha_real(rng, cfg);
    if (uniform(rng, 0.0, 1.0) < 0.5) alpha = -alpha;
    const double c = uniform(rng, -2.0, 2.0);
    const ConvexSolution sol = solve_first_order(quartic, alpha, c, f);
    TrialRecord r = record(sol, f);
    r.check = "quartic";
    r.params["f_degree"] = deg;
    recs[i] = finish(r);
  });
  rep.records.insert(rep.records.end(), recs.begin(), recs.end());
}

void run_one(const TrialConfig& cfg, Report& rep) {
  if (cfg.suite == "equality-pins") suite_equality_pins(cfg, rep);
  else if (cfg.suite == "random-bounds") suite_random_bounds(cfg, rep);
  else if (cfg.suite == "commutator") suite_commutator(cfg, rep);
  else if (cfg.suite == "right-inverse") suite_right_inverse(cfg, rep);
  else if (cfg.suite == "scaling") suite_scaling(cfg, rep);
  else if (cfg.suite == "domain") suite_domain(cfg, rep);
  else if (cfg.suite == "convex") suite_convex(cfg, rep);
}

}  // namespace

Report run_suite(const TrialConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  Report rep;
  rep.config = config.to_json();
  if (config.suite == "all") {
    for (const auto& name : kSuites) {
      TrialConfig sub = config;
      sub.suite = name;
      sub.validate();
      for (auto& w : sub.warnings()) rep.warnings.push_back(name + ": " + w);
      run_one(sub, rep);
    }
  } else {
    rep.warnings = config.warnings();
    run_one(config, rep);
  }
  if (config.record_wall_time) {
    rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return rep;
}

// ---------------------------------------------------------------- JSON

namespace {

ojson record_json(const TrialRecord& r) {
  ojson j;
  j["suite"] = r.suite;
  j["check"] = r.check;
  j["family"] = r.family;
  j["k"] = r.k;
  j["alpha"] = {r.alpha.real(), r.alpha.imag()};
  j["c"] = {r.c.real(), r.c.imag()};
  ojson params = ojson::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = params;
  j["ratio_sq"] = r.ratio_sq;
  j["bound_sq"] = r.bound_sq;
  j["tolerance"] = r.tolerance;
  j["slack"] = r.slack == Slack::Additive ? "additive" : "relative";
  if (r.residual) j["residual"] = *r.residual;
  if (r.residual_limit) j["residual_limit"] = *r.residual_limit;
  if (r.expected_ratio_sq) j["expected_ratio_sq"] = *r.expected_ratio_sq;
  if (r.pin_tolerance) j["pin_tolerance"] = *r.pin_tolerance;
  j["satisfied"] = r.satisfied;
  return j;
}

cplx read_pair(const ojson& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

std::optional<double> read_opt(const ojson& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  return j.at(key).get<double>();
}

TrialRecord record_from_json(const ojson& j) {
  TrialRecord r;
  r.suite = j.at("suite").get<std::string>();
  r.check = j.at("check").get<std::string>();
  r.family = j.at("family").get<std::string>();
  r.k = j.at("k").get<int>();
  r.alpha = read_pair(j.at("alpha"));
  r.c = read_pair(j.at("c"));
  for (const auto& [k, v] : j.at("params").items()) r.params[k] = v.get<double>();
  r.ratio_sq = j.at("ratio_sq").get<double>();
  r.bound_sq = j.at("bound_sq").get<double>();
  r.tolerance = j.at("tolerance").get<double>();
  const std::string slack = j.at("slack").get<std::string>();
  if (slack != "additive" && slack != "relative") throw UsageError("bad slack '" + slack + "'");
  r.slack = slack == "additive" ? Slack::Additive : Slack::Relative;
  r.residual = read_opt(j, "residual");
  r.residual_limit = read_opt(j, "residual_limit");
  r.expected_ratio_sq = read_opt(j, "expected_ratio_sq");
  r.pin_tolerance = read_opt(j, "pin_tolerance");
  r.satisfied = j.at("satisfied").get<bool>();
  return r;
}

}  // namespace

ojson to_json(const Report& report) {
  ojson j;
  j["artifact"] = "gaussl2";
  j["version"] = report.version;
  j["config"] = report.config;
  j["warnings"] = report.warnings;
  const Aggregates a = aggregate(report.records);
  j["aggregates"] = {{"records", a.records},
                     {"violations", a.violations},
                     {"max_ratio_sq", a.max_ratio_sq},
                     {"max_ratio_over_bound", a.max_ratio_over_bound}};
  ojson recs = ojson::array();
  for (const auto& r : report.records) recs.push_back(record_json(r));
  j["records"] = recs;
  j["notes"] = report.notes;
  if (report.wall_time_s) j["wall_time_s"] = *report.wall_time_s;
  return j;
}

Report report_from_json(const nlohmann::ordered_json& j) {
  try {
    Report rep;
    rep.version = j.at("version").get<std::string>();
    rep.config = j.at("config");
    rep.warnings = j.at("warnings").get<std::vector<std::string>>();
    for (const auto& r : j.at("records")) rep.records.push_back(record_from_json(r));
    rep.notes = j.at("notes");
    if (j.contains("wall_time_s")) rep.wall_time_s = j.at("wall_time_s").get<double>();
    return rep;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed report: ") + e.what());
  }
}

std::string dump_report(const Report& report) { return to_json(report).dump(2) + "\n"; }

std::string records_csv(const Report& report) {
  std::ostringstream os;
  os << "suite,check,family,k,alpha_re,alpha_im,c_re,c_im,ratio_sq,bound_sq,tolerance,slack,residual,"
        "residual_limit,expected_ratio_sq,pin_tolerance,satisfied\n";
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  for (const auto& r : report.records) {
    os << r.suite << ',' << r.check << ',' << r.family << ',' << r.k << ',' << format_double(r.alpha.real()) << ','
       << format_double(r.alpha.imag()) << ',' << format_double(r.c.real()) << ',' << format_double(r.c.imag()) << ','
       << format_double(r.ratio_sq) << ',' << format_double(r.bound_sq) << ',' << format_double(r.tolerance) << ','
       << (r.slack == Slack::Additive ? "additive" : "relative") << ',' << opt(r.residual) << ','
       << opt(r.residual_limit) << ',' << opt(r.expected_ratio_sq) << ',' << opt(r.pin_tolerance) << ','
       << (r.satisfied ? "true" : "false") << '\n';
  }
  return os.str();
}

}  // namespace gaussl2
