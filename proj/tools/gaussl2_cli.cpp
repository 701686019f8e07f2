// gaussl2: command-line front end.
//
// Exit codes: 0 ok, 1 an inequality was violated, 2 usage/config/input error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gaussl2/coeff_io.hpp"
#include "gaussl2/convex_weight.hpp"
#include "gaussl2/error.hpp"
#include "gaussl2/gauss_hermite.hpp"
#include "gaussl2/operator_core.hpp"
#include "gaussl2/verify.hpp"
#include "gaussl2/weight_maps.hpp"

using namespace gaussl2;
using ojson = nlohmann::ordered_json;

namespace {

struct OperatorFlags {
  std::string family = "dk";
  int k = 1;
  double alpha_re = 1.0;
  double alpha_im = 0.0;
  double c_re = 0.0;
  double c_im = 0.0;
  int degree = -1;
  double tol_bound = kBoundSlack;

  OperatorSpec spec() const {
    const auto fam = parse_family(family);
    if (!fam) throw UsageError("unknown family '" + family + "' (lap, dk, dbar, mixed)");
    return OperatorSpec::make(*fam, k, cplx(alpha_re, alpha_im), cplx(c_re, c_im));
  }
};

void add_operator_flags(CLI::App* cmd, OperatorFlags& f,
                        const char* degree_help = "truncation degree N (default: input degree + 5k, at least 16)") {
  cmd->add_option("--family", f.family, "lap | dk | dbar | mixed")->capture_default_str();
  cmd->add_option("--k", f.k, "operator order (ignored for lap)")->capture_default_str();
  cmd->add_option("--alpha-re,--alpha", f.alpha_re, "real part of alpha")->capture_default_str();
  cmd->add_option("--alpha-im", f.alpha_im, "imaginary part of alpha")->capture_default_str();
  cmd->add_option("--c-re,--c", f.c_re, "real part of c")->capture_default_str();
  cmd->add_option("--c-im", f.c_im, "imaginary part of c")->capture_default_str();
  cmd->add_option("--degree", f.degree, degree_help);
  cmd->add_option("--tol-bound", f.tol_bound, "additive slack on the bound")->capture_default_str();
}

int default_degree(int input_degree, int k) { return std::max(16, input_degree + 5 * k); }

int input_degree(const AnyCoeffs& c) {
  return std::visit([](const auto& v) { return v.degree(); }, c);
}

std::string coeff_kind(const AnyCoeffs& c) { return std::holds_alternative<RealCoeffs>(c) ? "real" : "complex"; }

void check_field(const OperatorSpec& spec, const AnyCoeffs& c) {
  if (spec.is_real() != std::holds_alternative<RealCoeffs>(c)) {
    throw UsageError("family " + std::string(family_name(spec.family())) + " needs " +
                     (spec.is_real() ? "real" : "complex") + " coefficients, file has " + coeff_kind(c));
  }
}

void emit_coeffs(const std::string& out, const AnyCoeffs& c) {
  if (out.empty() || out == "-") {
    std::visit([](const auto& v) { write_coeffs(std::cout, v); }, c);
  } else {
    write_coeffs_file(out, c);
  }
}

ojson opt_json(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

// ---------------------------------------------------------------- rule

int cmd_rule(int order, bool plane) {
  ojson j;
  if (plane) {
    const QuadRule2D r = build_rule_2d(order);
    j["order"] = order;
    j["dimension"] = 2;
    ojson nodes = ojson::array();
    for (const cplx& z : r.nodes) nodes.push_back({z.real(), z.imag()});
    j["nodes"] = nodes;
    j["weights"] = r.weights;
  } else {
    const QuadRule1D r = build_rule_1d(order);
    j["order"] = order;
    j["dimension"] = 1;
    j["nodes"] = r.nodes;
    j["weights"] = r.weights;
  }
  std::cout << j.dump() << '\n';
  return 0;
}

// ---------------------------------------------------------------- solve

int cmd_solve(const OperatorFlags& flags, const std::string& in, const std::string& out) {
  const OperatorSpec spec = flags.spec();
  const AnyCoeffs f = read_coeffs_file(in);
  check_field(spec, f);
  const int degree = flags.degree >= 0 ? flags.degree : default_degree(input_degree(f), spec.order());
  ojson diag;
  diag["family"] = std::string(family_name(spec.family()));
  diag["k"] = spec.order();
  diag["degree"] = degree;
  bool ok = true;
  if (const auto* rf = std::get_if<RealCoeffs>(&f)) {
    const RealSolveResult r = solve_min_norm(spec, *rf, degree, flags.tol_bound);
    emit_coeffs(out, r.solution);
    diag["ratio_sq"] = opt_json(r.ratio_sq);
    diag["bound_sq"] = r.bound_sq;
    diag["residual"] = r.residual_norm;
    diag["satisfied"] = r.satisfied;
    ok = r.satisfied;
  } else {
    const ComplexSolveResult r = solve_min_norm(spec, std::get<ComplexCoeffs>(f), degree, flags.tol_bound);
    emit_coeffs(out, r.solution);
    diag["ratio_sq"] = opt_json(r.ratio_sq);
    diag["bound_sq"] = r.bound_sq;
    diag["residual"] = r.residual_norm;
    diag["satisfied"] = r.satisfied;
    ok = r.satisfied;
  }
  std::cout << diag.dump() << '\n';
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const std::string& config_path, std::optional<std::uint64_t> seed, std::optional<int> trials,
               const std::string& out_flag, const std::string& csv) {
  std::ifstream in(config_path);
  if (!in) throw UsageError("cannot open config '" + config_path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  TrialConfig cfg = TrialConfig::from_json(j);
  if (seed) cfg.seed = *seed;
  if (trials) cfg.trials = *trials;
  if (!out_flag.empty()) cfg.out = out_flag;
  cfg.validate();

  const Report rep = run_suite(cfg);
  const std::string text = dump_report(rep);
  if (cfg.out.empty() || cfg.out == "-") {
    std::cout << text;
  } else {
    std::ofstream o(cfg.out, std::ios::binary);
    if (!o) throw UsageError("cannot write report '" + cfg.out + "'");
    o << text;
  }
  if (!csv.empty()) {
    std::ofstream o(csv, std::ios::binary);
    if (!o) throw UsageError("cannot write '" + csv + "'");
    o << records_csv(rep);
  }
  for (const auto& w : rep.warnings) std::cerr << "warning: " << w << '\n';
  const Aggregates a = aggregate(rep.records);
  std::cerr << cfg.suite << ": " << a.records << " records, " << a.violations << " violations\n";
  return a.violations == 0 ? 0 : 1;
}

// ---------------------------------------------------------------- opnorm

ojson estimate_json(const OpNormEstimate& e) {
  ojson j;
  j["band"] = e.band;
  j["trials"] = e.trials;
  j["measured"] = e.measured;
  j["sampled_sup"] = e.sampled_sup;
  j["zero_c_norm"] = e.zero_c_norm;
  j["zero_c_expected"] = e.zero_c_expected;
  ojson c = ojson::array();
  for (const auto& cand : e.candidates) {
    c.push_back({{"label", cand.label}, {"value", cand.value}, {"satisfied", cand.satisfied}});
  }
  j["candidates"] = c;
  return j;
}

int cmd_opnorm(const OperatorFlags& flags, int trials, std::uint64_t seed, int band) {
  if (trials < 1) throw UsageError("--trials must be >= 1");
  const OperatorSpec spec = flags.spec();
  const int degree = flags.degree >= 0 ? flags.degree : (spec.is_real() ? 96 : 16);
  const RightInverse t = RightInverse::build(spec, degree);
  const OpNormEstimate e = estimate_op_norm(t, trials, seed, band);
  ojson j;
  j["family"] = std::string(family_name(spec.family()));
  j["k"] = spec.order();
  j["degree"] = degree;
  j.update(estimate_json(e));
  std::cout << j.dump() << '\n';
  return 0;
}

// ---------------------------------------------------------------- scaled

struct ScaledFlags {
  double lambda = 1.0;
  double x0_re = 0.0;
  double x0_im = 0.0;
  int exponent = 1;
};

int cmd_scaled(const OperatorFlags& flags, const ScaledFlags& sf, const std::string& in, const std::string& out) {
  const OperatorSpec spec = flags.spec();
  const AnyCoeffs f = read_coeffs_file(in);
  check_field(spec, f);
  const int degree = flags.degree >= 0 ? flags.degree : default_degree(input_degree(f), spec.order());
  const WeightSpec w = spec.is_real() ? WeightSpec::scaled_real(sf.lambda, sf.x0_re)
                                      : WeightSpec::scaled_complex(sf.lambda, cplx(sf.x0_re, sf.x0_im), sf.exponent);
  ojson diag;
  auto fill = [&](const auto& r) {
    emit_coeffs(out, r.solution);
    diag["family"] = std::string(family_name(spec.family()));
    diag["k"] = spec.order();
    diag["lambda"] = sf.lambda;
    diag["exponent"] = w.exponent();
    diag["degree"] = degree;
    diag["ratio_sq"] = opt_json(r.ratio_sq);
    diag["bound_sq"] = r.bound_sq;
    diag["printed_bound_sq"] = r.printed_bound_sq;
    diag["residual"] = r.unit.residual_norm;
    diag["satisfied"] = r.satisfied;
    diag["printed_satisfied"] = r.printed_satisfied;
    return r.satisfied;
  };
  bool ok;
  if (const auto* rf = std::get_if<RealCoeffs>(&f)) ok = fill(solve_scaled(spec, w, *rf, degree, flags.tol_bound));
  else ok = fill(solve_scaled(spec, w, std::get<ComplexCoeffs>(f), degree, flags.tol_bound));
  std::cout << diag.dump() << '\n';
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------- domain

struct DomainFlags {
  double a = -1.0;
  double b = 1.0;
  double center_re = 0.0;
  double center_im = 0.0;
  double radius = 1.0;
  double base_re = 0.0;
  double base_im = 0.0;
};

int cmd_domain(const OperatorFlags& flags, const DomainFlags& df, const std::string& in) {
  const OperatorSpec spec = flags.spec();
  const AnyCoeffs f = read_coeffs_file(in);
  check_field(spec, f);
  const int degree = flags.degree >= 0 ? flags.degree : default_degree(input_degree(f), spec.order());
  DomainReport d;
  if (const auto* rf = std::get_if<RealCoeffs>(&f)) {
    d = restrict_and_check(spec, DomainSpec::interval(df.a, df.b, df.base_re), *rf, degree);
  } else {
    const DomainSpec dom = DomainSpec::disk(cplx(df.center_re, df.center_im), df.radius, cplx(df.base_re, df.base_im));
    d = restrict_and_check(spec, dom, std::get<ComplexCoeffs>(f), degree);
  }
  ojson j;
  j["diameter"] = d.diameter;
  j["factor"] = d.factor;
  j["bound_sq"] = d.bound_sq;
  j["weight_floor"] = d.weight_floor;
  j["sampled_weight_min"] = d.sampled_weight_min;
  j["floor_ok"] = d.floor_ok;
  j["residual"] = d.residual_norm;
  j["weighted_f_sq"] = d.weighted_f_sq;
  j["weighted_u_sq"] = d.weighted_u_sq;
  j["u_on_U_sq"] = d.u_on_U_sq;
  j["u_on_U_weighted_sq"] = d.u_on_U_weighted_sq;
  j["f_on_U_sq"] = d.f_on_U_sq;
  j["weighted_ok"] = d.weighted_ok;
  j["step_floor_ok"] = d.step_floor_ok;
  j["global_ok"] = d.global_ok;
  j["zero_extension_applicable"] = d.projected_applicable;
  j["projection_residual"] = d.projection_residual;
  j["projected_ratio"] = opt_json(d.projected_ratio);
  j["projected_ok"] = d.projected_ok;
  j["satisfied"] = d.satisfied;
  std::cout << j.dump() << '\n';
  return d.satisfied ? 0 : 1;
}

// ---------------------------------------------------------------- convex

std::vector<double> parse_list(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string("bad number in ") + what + ": '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError(std::string(what) + " is empty");
  return out;
}

int cmd_convex(const std::string& phi, const std::string& f, double alpha, double c) {
  const ConvexWeight w = ConvexWeight::polynomial(parse_list(phi, "--phi"));
  const std::vector<double> fc = parse_list(f, "--f");
  const auto fn = [fc](double x) {
    double s = 0.0;
    for (std::size_t j = fc.size(); j-- > 0;) s = s * x + fc[j];
    return s;
  };
  const ConvexSolution sol = solve_first_order(w, alpha, c, fn);
  std::vector<double> pts;
  for (int i = 0; i <= 24; ++i) pts.push_back(-3.0 + 0.25 * i);
  ojson j;
  j["alpha"] = alpha;
  j["c"] = c;
  j["half_width"] = sol.grid().half_width;
  j["k_star"] = sol.k_star();
  j["lhs"] = sol.lhs();
  j["rhs"] = sol.rhs();
  j["ode_residual"] = ode_residual(sol, pts, fn);
  j["satisfied"] = sol.satisfied();
  std::cout << j.dump() << '\n';
  return sol.satisfied() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral right inverses and norm estimates in Gaussian-weighted L2 spaces"};
  app.require_subcommand(1);

  int order = 20;
  bool plane = false;
  auto* rule = app.add_subcommand("rule", "print a Gauss-Hermite rule as JSON");
  rule->add_option("--order", order, "number of nodes per axis")->capture_default_str();
  rule->add_flag("--complex", plane, "tensor rule on C");

  OperatorFlags solve_flags;
  std::string solve_in;
  std::string solve_out;
  auto* solve = app.add_subcommand("solve", "minimal-norm solve for a coefficient file");
  add_operator_flags(solve, solve_flags);
  solve->add_option("input", solve_in, "coefficient CSV")->required();
  solve->add_option("--out", solve_out, "solution CSV (default: standard output)");

  std::string config;
  std::optional<std::uint64_t> verify_seed;
  std::optional<int> verify_trials;
  std::string verify_out;
  std::string verify_csv;
  auto* verify = app.add_subcommand("verify", "run a verification suite from a JSON config");
  verify->add_option("--config", config, "JSON config")->required();
  verify->add_option("--seed", verify_seed, "override the config seed");
  verify->add_option("--trials", verify_trials, "override the trial count");
  verify->add_option("--out", verify_out, "report path (default: config 'out', else standard output)");
  verify->add_option("--csv", verify_csv, "also write records as CSV");

  OperatorFlags op_flags;
  op_flags.family = "lap";
  int op_trials = 20;
  std::uint64_t op_seed = 1;
  int op_band = -1;
  auto* opnorm = app.add_subcommand("opnorm", "measure the norm of the right inverse");
  add_operator_flags(opnorm, op_flags, "truncation degree N (default: 96 real, 16 complex)");
  opnorm->add_option("--trials", op_trials, "random probes")->capture_default_str();
  opnorm->add_option("--seed", op_seed, "probe seed")->capture_default_str();
  opnorm->add_option("--band", op_band, "input band B (default N - 4k)");

  OperatorFlags sc_flags;
  ScaledFlags sf;
  std::string sc_in;
  std::string sc_out;
  auto* scaled = app.add_subcommand("scaled", "solve in a scaled Gaussian weight");
  add_operator_flags(scaled, sc_flags);
  scaled->add_option("--lambda", sf.lambda, "weight scale")->capture_default_str();
  scaled->add_option("--x0,--z0-re", sf.x0_re, "center (real part)")->capture_default_str();
  scaled->add_option("--z0-im", sf.x0_im, "center (imaginary part)")->capture_default_str();
  scaled->add_option("--exponent", sf.exponent, "1: lambda |z-z0|^2, 2: lambda^2 |z-z0|^2")->capture_default_str();
  scaled->add_option("input", sc_in, "scaled-frame coefficient CSV")->required();
  scaled->add_option("--out", sc_out, "solution CSV (default: standard output)");

  OperatorFlags dom_flags;
  DomainFlags df;
  std::string dom_in;
  auto* domain = app.add_subcommand("domain", "bounded-domain estimate for a coefficient file");
  add_operator_flags(domain, dom_flags);
  domain->add_option("--a", df.a, "interval left end")->capture_default_str();
  domain->add_option("--b", df.b, "interval right end")->capture_default_str();
  domain->add_option("--center-re", df.center_re, "disk center")->capture_default_str();
  domain->add_option("--center-im", df.center_im, "disk center")->capture_default_str();
  domain->add_option("--radius", df.radius, "disk radius")->capture_default_str();
  domain->add_option("--base-re,--basepoint", df.base_re, "basepoint in U")->capture_default_str();
  domain->add_option("--base-im", df.base_im, "basepoint in U")->capture_default_str();
  domain->add_option("input", dom_in, "coefficient CSV")->required();

  std::string phi = "0,0,1";
  std::string fpoly = "1";
  double cv_alpha = 1.0;
  double cv_c = 0.0;
  auto* convex = app.add_subcommand("convex", "first-order equation with a convex polynomial weight");
  convex->add_option("--phi", phi, "coefficients of phi, constant term first")->capture_default_str();
  convex->add_option("--f", fpoly, "coefficients of f, constant term first")->capture_default_str();
  convex->add_option("--alpha", cv_alpha)->capture_default_str();
  convex->add_option("--c", cv_c)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*rule) return cmd_rule(order, plane);
    if (*solve) return cmd_solve(solve_flags, solve_in, solve_out);
    if (*verify) return cmd_verify(config, verify_seed, verify_trials, verify_out, verify_csv);
    if (*opnorm) return cmd_opnorm(op_flags, op_trials, op_seed, op_band);
    if (*scaled) return cmd_scaled(sc_flags, sf, sc_in, sc_out);
    if (*domain) return cmd_domain(dom_flags, df, dom_in);
    if (*convex) return cmd_convex(phi, fpoly, cv_alpha, cv_c);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
