// Command line front end: every command prints records in the fixed CSV (or
// JSON) layout of RecordWriter, so runs can be diffed and post-processed.

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli_support.hpp"
#include "tzeta/conjecture_lab.hpp"
#include "tzeta/epstein.hpp"
#include "tzeta/errors.hpp"
#include "tzeta/expansion.hpp"
#include "tzeta/summation.hpp"
#include "tzeta/torus_lattice.hpp"

namespace {

using namespace tzeta;
using tzeta::cli::RecordWriter;

struct RunConfig {
  double tol = 1e-12;
  int threads = 0;
  std::string format = "csv";
  std::string out;
  bool strict = false;
};

// Options shared by several commands. Each command only registers the ones it uses.
struct Arguments {
  std::string s;
  int n = 0;
  std::string variant = "nine";
  std::string n_list;
  int orders = 1;
  std::string route = "shifted";
  std::string which;
  std::optional<int> cutoff;
  std::string kind;
  double b = 70.0;
  double a_min = 0.01, a_max = 0.99;
  int points = 101;
  double b_min = 1.0, b_max = 40.0;
  int b_points = 4;
  double t_min = 1.0, t_max = 20.0, step = 0.05;
  std::string function = "lorentz";
  int M = 3;
  bool exclude_last = false;
};

ScanRecord record(const std::string& quantity, Complex s, Complex value, std::optional<int> n = std::nullopt,
                  double error = 0.0) {
  ScanRecord r;
  r.quantity = quantity;
  r.s = s;
  r.value = value;
  r.n = n;
  r.error_estimate = error;
  return r;
}

std::vector<double> linear_grid(double lo, double hi, int points) {
  std::vector<double> grid;
  if (points <= 0 || lo > hi) return grid;
  if (points == 1) return {lo};
  for (int i = 0; i < points; ++i) grid.push_back(lo + (hi - lo) * i / (points - 1));
  return grid;
}

void require_strip(Complex s, const char* what) {
  if (!(s.real() > 0.0 && s.real() < 1.0)) throw DomainError(std::string(what) + ": needs 0 < Re s < 1");
}

void run_zeta(const Arguments& a, RecordWriter& w) {
  const Complex s = cli::parse_complex(a.s);
  const Stencil v = stencil_from_string(a.variant);
  const LatticeSum sum = spectral_zeta(a.n, v, s);
  if (sum.empty) throw DegenerateError("empty spectrum: a torus with n = 1 has only the zero mode");
  ScanRecord r = record("spectral_zeta", s, sum.value, a.n, sum.error_estimate);
  r.meta = {{"variant", a.variant}};
  w.write(r);
}

void run_zeta1d(const Arguments& a, RecordWriter& w) {
  const Complex s = cli::parse_complex(a.s);
  w.write(record("spectral_zeta_1d", s, spectral_zeta_1d(a.n, s), a.n));
}

void run_epstein(const Arguments& a, RecordWriter& w) {
  const Complex s = cli::parse_complex(a.s);
  if (a.cutoff) {
    const DirectSum d = epstein_direct_sum(s, *a.cutoff);
    ScanRecord r = record("epstein_direct", s, d.value, std::nullopt, d.tail_bound);
    r.meta = {{"cutoff", std::to_string(*a.cutoff)}};
    w.write(r);
  } else {
    w.write(record("epstein_zeta", s, epstein_zeta_2d(s)));
  }
}

void run_xi(const Arguments& a, RecordWriter& w) {
  const Complex s = cli::parse_complex(a.s);
  w.write(record("completed_zeta", s, completed_zeta(s)));
}

RatioRoute route_from_string(const std::string& name) {
  if (name == "shifted") return RatioRoute::ShiftedZeta;
  if (name == "reflected") return RatioRoute::ReflectedZeta;
  if (name == "direct") return RatioRoute::Direct;
  throw DomainError("unknown route '" + name + "' (expected shifted, reflected or direct)");
}

void run_omega(const Arguments& a, RecordWriter& w) {
  const Complex s = cli::parse_complex(a.s);
  w.write(record("correction_term", s, correction_term(s)));
  ScanRecord r = record("correction_ratio", s, correction_ratio(s, route_from_string(a.route)));
  r.meta = {{"route", a.route}, {"abs", cli::format_double(std::abs(r.value))}};
  w.write(r);
}

void run_coeff(const Arguments& a, const RunConfig& cfg, RecordWriter& w) {
  const Complex s = cli::parse_complex(a.s);
  const Stencil v = stencil_from_string(a.variant);
  ScanRecord r = record("coeff_" + a.which, s, 0.0);
  if (a.which == "a") {
    require_strip(s, "coeff a");
    const QuadResult<Complex> integral = leading_integral(s, v, cfg.tol);
    const Complex inverse = inverse_front_factor(2, s);
    r.value = integral.value * inverse;
    r.error_estimate = integral.error * std::abs(inverse);
    r.meta = {{"variant", a.variant}};
  } else if (a.which == "b0") {
    r.value = constant_coefficient(s);
  } else if (a.which == "b1") {
    r.value = second_coefficient(s, v, cfg.tol);
    r.meta = {{"variant", a.variant}};
  } else if (a.which == "b1tilde") {
    r.value = second_coefficient(s, Stencil::NinePoint, cfg.tol);
  } else {
    r.value = angular_lattice_sum(s, cfg.tol);
  }
  w.write(r);
}

void run_expansion(const Arguments& a, const RunConfig& cfg, RecordWriter& w) {
  const Complex s = cli::parse_complex(a.s);
  if (cfg.strict) require_strip(s, "expansion");
  const std::vector<int> ns = cli::parse_int_list(a.n_list.empty() ? "32,64,128,256" : a.n_list);
  const ExpansionResult e = residual_order(s, stencil_from_string(a.variant), ns, a.orders, cfg.tol);
  const std::string slope = cli::format_double(e.slope);
  const auto meta = [&] {
    return std::vector<std::pair<std::string, std::string>>{
        {"variant", a.variant}, {"orders", std::to_string(a.orders)}, {"slope", slope}};
  };
  for (std::size_t i = 0; i < e.residuals.size(); ++i) {
    ScanRecord r = record("expansion_residual", s, e.residuals[i].second, e.residuals[i].first, e.noise[i]);
    r.meta = meta();
    w.write(r);
  }
  ScanRecord fit = record("expansion_slope", s, e.slope);
  fit.meta = meta();
  fit.meta.emplace_back("convention", e.convention);
  w.write(fit);
  if (s.real() < 1.0) w.write(record("coeff_a", s, e.leading));
  w.write(record("coeff_b0", s, e.constant));
  w.write(record("coeff_b1", s, e.second));
}

void run_hn(const Arguments& a, const RunConfig& cfg, RecordWriter& w) {
  const Complex s = cli::parse_complex(a.s);
  const std::vector<int> ns = cli::parse_int_list(a.n_list.empty() ? "32,64,128,256,512" : a.n_list);
  for (const ScanRecord& r : discrete_ratio_study(s, ns, cfg.tol)) w.write(r);
}

void run_scan(const Arguments& a, const RunConfig& cfg, RecordWriter& w) {
  if (a.kind == "omega") {
    const std::vector<double> grid = linear_grid(a.a_min, a.a_max, a.points);
    if (grid.empty()) return;
    if (cfg.strict && !(std::fabs(a.b) > 65.0)) {
      throw DomainError("scan omega: b = " + cli::format_double(a.b) + " is outside the range b > 65 (drop --strict to explore)");
    }
    if (grid.size() == 1) {
      const Complex s(grid[0], a.b);
      w.write(record("correction_ratio", s, correction_ratio(s)));
      return;
    }
    MonotonicityScan scan = monotonicity_scan(a.b, grid, cfg.threads);
    for (ScanRecord& r : scan.records) {
      r.meta.emplace_back("monotone", scan.strictly_increasing ? "true" : "false");
      r.meta.emplace_back("crossing", scan.crossing ? cli::format_double(*scan.crossing) : "none");
      w.write(r);
    }
  } else if (a.kind == "hn") {
    const std::vector<int> ns = cli::parse_int_list(a.n_list.empty() ? "32,64,128" : a.n_list);
    for (double re : linear_grid(a.a_min, a.a_max, a.points)) {
      for (const ScanRecord& r : discrete_ratio_study(Complex(re, a.b), ns, cfg.tol)) w.write(r);
    }
  } else if (a.kind == "xi-defect") {
    for (double re : linear_grid(a.a_min, a.a_max, a.points)) {
      for (double im : linear_grid(a.b_min, a.b_max, a.b_points)) {
        const Complex s(re, im);
        w.write(record("xi_defect", s, functional_equation_defect(s)));
      }
    }
  } else if (a.kind == "zeros") {
    if (!(a.t_max > a.t_min)) return;
    const ZeroScan scan = find_critical_zeros(a.t_min, a.t_max, a.step, cfg.threads);
    for (const std::string& warning : scan.warnings) {
      if (cfg.strict) throw ConvergenceError("scan zeros: " + warning);
      std::cerr << "warning: " << warning << '\n';
    }
    for (const ZeroRecord& z : scan.zeros) {
      ScanRecord r = record("critical_zero", Complex(0.5, z.t), z.t, std::nullopt, z.residual);
      r.meta = {{"source", to_string(z.source)}};
      w.write(r);
    }
  } else {
    throw DomainError("unknown scan kind '" + a.kind + "'");
  }
}

void run_emcheck(const Arguments& a, RecordWriter& w) {
  std::function<double(int, double)> u;
  if (a.function == "lorentz") {
    // 1/(1+x^2) = Im 1/(x - i).
    u = [](int k, double x) {
      double fact = 1.0;
      for (int j = 2; j <= k; ++j) fact *= j;
      const Complex d = std::pow(Complex(x, -1.0), -(k + 1));
      return ((k % 2 == 0 ? 1.0 : -1.0) * fact * d).imag();
    };
  } else if (a.function == "square") {
    u = [](int k, double x) { return k == 0 ? x * x : k == 1 ? 2.0 * x : k == 2 ? 2.0 : 0.0; };
  } else {
    u = [](int k, double x) { return (k % 2 == 0 ? 1.0 : -1.0) * std::exp(-x); };
  }
  const EulerMaclaurinCheck c = euler_maclaurin_check(a.M, a.n, u, a.exclude_last);
  const std::vector<std::pair<std::string, std::string>> meta = {
      {"function", a.function}, {"M", std::to_string(a.M)}, {"exclude_last", a.exclude_last ? "true" : "false"}};
  for (const auto& [name, value] : std::vector<std::pair<std::string, double>>{{"em_lhs", c.lhs},
                                                                               {"em_rhs", c.rhs},
                                                                               {"em_integral", c.integral},
                                                                               {"em_boundary", c.boundary},
                                                                               {"em_corrections", c.corrections},
                                                                               {"em_remainder", c.remainder},
                                                                               {"em_difference", c.lhs - c.rhs}}) {
    ScanRecord r = record(name, 0.0, value, a.n);
    r.meta = meta;
    w.write(r);
  }
}

int exit_code_for(const tzeta::Error& e) {
  switch (e.category()) {
    case ErrorCategory::Domain: return cli::usage_or_domain;
    case ErrorCategory::Convergence: return cli::convergence;
    case ErrorCategory::Internal: return cli::internal;
  }
  return cli::internal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral zeta functions of discrete Laplacians on the square torus"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  Arguments args;

  app.set_config("--config", "", "key=value file with defaults for the global options");
  app.add_option("--tol", cfg.tol, "quadrature tolerance")->check(CLI::Range(1e-300, 1e-3));
  app.add_option("--threads", cfg.threads, "worker threads (default: all cores)")->check(CLI::Range(1, 4096));
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", cfg.out, "write records to this file instead of stdout");
  app.add_flag("--strict", cfg.strict, "treat out-of-regime requests as errors");

  auto add_s = [&](CLI::App* c) { c->add_option("--s", args.s, "complex argument, e.g. 0.3+2i")->required(); };
  auto add_variant = [&](CLI::App* c) {
    c->add_option("--variant", args.variant, "stencil")->check(CLI::IsMember({"five", "nine"}));
  };

  CLI::App* zeta = app.add_subcommand("zeta", "spectral zeta of the discrete torus Laplacian");
  zeta->add_option("--n", args.n, "grid size")->required();
  add_variant(zeta);
  add_s(zeta);

  CLI::App* zeta1d = app.add_subcommand("zeta1d", "spectral zeta of the discrete circle Laplacian");
  zeta1d->add_option("--n", args.n, "grid size")->required();
  add_s(zeta1d);

  CLI::App* epstein = app.add_subcommand("epstein", "spectral zeta of the continuous torus");
  add_s(epstein);
  epstein->add_option("--cutoff", args.cutoff, "sum the lattice directly up to this cutoff (Re s > 1)");

  CLI::App* xi = app.add_subcommand("xi", "completed zeta pi^-s Gamma(s) zeta(s)");
  add_s(xi);

  CLI::App* omega = app.add_subcommand("omega", "n^-2 correction term and its reflection ratio");
  add_s(omega);
  omega->add_option("--route", args.route, "formula for the ratio")
      ->check(CLI::IsMember({"shifted", "reflected", "direct"}));

  CLI::App* coeff = app.add_subcommand("coeff", "expansion coefficients");
  coeff->add_option("which", args.which, "a, b0, b1, b1tilde or angular")
      ->required()
      ->check(CLI::IsMember({"a", "b0", "b1", "b1tilde", "angular"}));
  add_s(coeff);
  add_variant(coeff);

  CLI::App* expansion = app.add_subcommand("expansion", "residuals of the large-n expansion");
  add_s(expansion);
  add_variant(expansion);
  expansion->add_option("--n-list", args.n_list, "geometric list of n, e.g. 32,64,128,256");
  expansion->add_option("--orders", args.orders, "0: through b0, 1: through b1")->check(CLI::Range(0, 1));

  CLI::App* hn = app.add_subcommand("hn", "ratio of completed discrete zetas at 1-s and s");
  add_s(hn);
  hn->add_option("--n-list", args.n_list, "geometric list of n");

  CLI::App* scan = app.add_subcommand("scan", "grid scans");
  scan->add_option("--kind", args.kind, "what to scan")
      ->required()
      ->check(CLI::IsMember({"omega", "hn", "xi-defect", "zeros"}));
  scan->add_option("--b", args.b, "imaginary part for omega and hn scans");
  scan->add_option("--a-min", args.a_min, "first real part");
  scan->add_option("--a-max", args.a_max, "last real part");
  scan->add_option("--points", args.points, "number of real parts");
  scan->add_option("--b-min", args.b_min, "first imaginary part (xi-defect)");
  scan->add_option("--b-max", args.b_max, "last imaginary part (xi-defect)");
  scan->add_option("--b-points", args.b_points, "number of imaginary parts (xi-defect)");
  scan->add_option("--t-min", args.t_min, "start of the critical line segment (zeros)");
  scan->add_option("--t-max", args.t_max, "end of the critical line segment (zeros)");
  scan->add_option("--step", args.step, "sampling step along the critical line (zeros)");
  scan->add_option("--n-list", args.n_list, "n values for hn scans");

  CLI::App* emcheck = app.add_subcommand("emcheck", "both sides of the Euler-Maclaurin formula");
  emcheck->add_option("--function", args.function, "test function")
      ->check(CLI::IsMember({"lorentz", "square", "exp"}));
  emcheck->add_option("--M", args.M, "number of Bernoulli correction terms");
  emcheck->add_option("--n", args.n, "upper summation limit")->default_val(10);
  emcheck->add_flag("--exclude-last", args.exclude_last, "sum up to n-1 instead of n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::ok : cli::usage_or_domain;
  }

  const auto started = std::chrono::steady_clock::now();
  try {
    if (cfg.threads > 0) set_default_threads(cfg.threads);
    std::ofstream file;
    if (!cfg.out.empty()) {
      file.open(cfg.out, std::ios::out | std::ios::trunc);
      if (!file) throw DomainError("cannot open output file '" + cfg.out + "'");
    }
    std::ostream& sink = cfg.out.empty() ? std::cout : file;
    RecordWriter writer(sink, cfg.format == "json" ? cli::Format::Json : cli::Format::Csv);

    if (zeta->parsed()) run_zeta(args, writer);
    else if (zeta1d->parsed()) run_zeta1d(args, writer);
    else if (epstein->parsed()) run_epstein(args, writer);
    else if (xi->parsed()) run_xi(args, writer);
    else if (omega->parsed()) run_omega(args, writer);
    else if (coeff->parsed()) run_coeff(args, cfg, writer);
    else if (expansion->parsed()) run_expansion(args, cfg, writer);
    else if (hn->parsed()) run_hn(args, cfg, writer);
    else if (scan->parsed()) run_scan(args, cfg, writer);
    else if (emcheck->parsed()) run_emcheck(args, writer);
    writer.finish();
  } catch (const tzeta::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return cli::internal;
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  std::cerr << "elapsed " << elapsed << " s\n";
  return cli::ok;
}
