// Acceptance run: one PASS or FAIL line per criterion, exit status 1 if any
// criterion fails. Every check recomputes its numbers from the library.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "integrand_families.hpp"
#include "tzeta/conjecture_lab.hpp"
#include "tzeta/epstein.hpp"
#include "tzeta/expansion.hpp"
#include "tzeta/regularized.hpp"
#include "tzeta/taylor.hpp"
#include "tzeta/torus_lattice.hpp"

using namespace tzeta;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buffer[256];
  std::snprintf(buffer, sizeof buffer, pattern, a, b, c);
  return buffer;
}

Outcome stencil_eigenvalues() {
  double worst = 0.0;
  for (int n = 2; n <= 16; ++n) {
    for (Stencil v : {Stencil::FivePoint, Stencil::NinePoint}) {
      for (int k1 = 0; k1 < n; ++k1) {
        for (int k2 = 0; k2 < n; ++k2) {
          Eigen::MatrixXcd mode(n, n);
          for (int j1 = 0; j1 < n; ++j1)
            for (int j2 = 0; j2 < n; ++j2)
              mode(j1, j2) = std::polar(1.0, 2.0 * pi * (double(k1) * j1 + double(k2) * j2) / n);
          const Eigen::MatrixXcd image = apply_stencil(n, v, mode);
          const double lambda = eigenvalue(n, v, k1, k2);
          worst = std::max(worst, (image - lambda * mode).cwiseAbs().maxCoeff());
        }
      }
    }
  }
  return {worst <= 1e-12, fmt("max |L u - lambda u| = %.2e over n = 2..16, both stencils", worst)};
}

Outcome convergence_at_two() {
  const double target = epstein_zeta_2d(2.0).real();
  std::vector<double> errors;
  for (int n : {64, 128, 256}) errors.push_back(std::abs(spectral_zeta(n, Stencil::NinePoint, 2.0).value - target));
  const double r1 = errors[0] / errors[1], r2 = errors[1] / errors[2];
  const bool ok = r1 >= 3.3 && r1 <= 4.7 && r2 >= 3.3 && r2 <= 4.7;
  return {ok, fmt("error ratios %.3f, %.3f (error at n = 256: %.2e)", r1, r2, errors[2])};
}

Outcome expansion_residual() {
  const ExpansionResult r = residual_order({0.3, 2.0}, Stencil::NinePoint, {32, 64, 128, 256}, 1);
  return {r.slope <= -3.5, fmt("log-log slope %.4f at s = 0.3+2i", r.slope)};
}

Outcome circle_analogue() {
  double previous = INFINITY;
  bool decreasing = true;
  for (int n : {64, 128, 256, 512}) {
    const double scaled = std::abs(circle_expansion_residual(0.25, n)) * n * n;
    decreasing = decreasing && scaled < previous;
    previous = scaled;
  }
  return {decreasing, fmt("n^2 |residual| decreasing, %.3e at n = 512", previous)};
}

Outcome functional_equation() {
  double worst = 0.0;
  for (double a : {0.1, 0.3, 0.5, 0.7, 0.9})
    for (double b : {-40.0, -7.5, 1.0, 14.0, 27.0, 40.0}) worst = std::max(worst, functional_equation_defect({a, b}));
  return {worst <= 1e-9, fmt("max defect %.2e over a 5 x 6 grid", worst)};
}

Outcome critical_line_ratio() {
  double unit = 0.0;
  for (double b : {10.0, 70.0}) unit = std::max(unit, std::abs(std::abs(correction_ratio({0.5, b})) - 1.0));
  std::vector<double> grid;
  for (int i = 1; i <= 101; ++i) grid.push_back(i / 102.0);
  const MonotonicityScan scan = monotonicity_scan(70.0, grid);
  const double cell = grid[1] - grid[0];
  const bool crossing_ok = scan.crossing && std::fabs(*scan.crossing - 0.5) <= cell;
  const bool ok = unit <= 1e-10 && scan.strictly_increasing && crossing_ok;
  return {ok, fmt("||ratio| - 1| = %.1e on the line; increasing = %g, crossing at %.6f", unit,
                  scan.strictly_increasing ? 1.0 : 0.0, scan.crossing.value_or(NAN))};
}

Outcome discrete_ratio() {
  const std::vector<ScanRecord> rows = discrete_ratio_study({0.3, 2.0}, {32, 64, 128, 256, 512});
  std::vector<std::pair<int, double>> points;
  for (const ScanRecord& r : rows) points.push_back({*r.n, std::fabs(r.value.real() - 1.0)});
  const double slope = log_log_slope(points);
  return {slope >= -2.6 && slope <= -1.4, fmt("slope of ||ratio| - 1| over n = 32..512: %.4f", slope)};
}

Outcome regularized_integrals() {
  double powers = 0.0;
  for (double a : {-1.5, -0.5, 0.7, 2.0})
    powers = std::max(powers, std::abs(regularized_integral(testing::pure_power(a)).value));
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> lam(0.2, 6.0);
  double scaling = 0.0;
  for (int trial = 0; trial < 12; ++trial) {
    const IntegrandSpec f = testing::scaling_family(rng);
    const ScalingCheck r = change_of_variables_check(f, lam(rng));
    scaling = std::max(scaling, std::abs(r.lhs - r.rhs));
  }
  return {powers <= 1e-15 && scaling <= 1e-9,
          fmt("pure powers %.1e, change of variables %.2e over 12 draws", powers, scaling)};
}

Outcome expansion_identities() {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> re(0.05, 0.95), im(-30.0, 30.0);
  double combination = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Complex s(re(rng), im(rng));
    const Complex lhs = inverse_front_factor(2, s - 1.0) - 2.0 * inverse_front_factor(3, s - 1.0) +
                        inverse_front_factor(4, s - 1.0);
    const Complex rhs = s * (2.0 - s) / 6.0 * inverse_front_factor(2, s);
    combination = std::max(combination, std::abs(lhs - rhs) / std::abs(rhs));
  }

  // Individual terms of the decomposition are of size r^-4 and cancel, so
  // the pointwise error is measured on that scale.
  double fractions = 0.0;
  for (double k1 : {0.0, 1.0, 3.0, -7.0})
    for (double k2 : {0.0, 2.0, -5.0})
      for (double z : {0.1, 1.0, 4.5}) {
        const double scale = std::pow(k1 * k1 + k2 * k2 + z * z, -2);
        const auto [q, q_split] = quartic_partial_fractions(k1, k2, z);
        const auto [r, r_split] = radial_partial_fractions(k1, k2, z);
        fractions = std::max({fractions, std::fabs(q - q_split) / scale, std::fabs(r - r_split) / scale});
      }

  const ExactPolynomial one{{{0, 0}, Rational(1)}};
  const ExactPolynomial five{{{4, 0}, Rational(2, 3)}, {{0, 4}, Rational(2, 3)}};
  const ExactPolynomial nine{{{4, 0}, Rational(2, 3)}, {{2, 2}, Rational(4, 3)}, {{0, 4}, Rational(2, 3)}};
  bool exact = true;
  for (Stencil v : {Stencil::FivePoint, Stencil::NinePoint}) {
    const auto m0 = taylor_coefficients(0, v);
    const auto m1 = taylor_coefficients(1, v);
    exact = exact && m0.size() == 1 && m0[0].polynomial == one;
    exact = exact && m1.size() == 2 && m1[0].polynomial.empty() &&
            m1[1].polynomial == (v == Stencil::FivePoint ? five : nine);
  }

  double slope_gap = 0.0;
  for (Stencil v : {Stencil::FivePoint, Stencil::NinePoint})
    for (int N : {1, 2})
      slope_gap = std::max(slope_gap,
                           std::fabs(log_log_slope(series_truncation_check(v, N, 0.9, 0.6, 0.5, {8, 16, 32, 64})) + 2.0 * N));

  const bool ok = combination <= 1e-12 && fractions <= 1e-13 && exact && slope_gap <= 0.3;
  return {ok, fmt("front factors %.1e, partial fractions %.1e, truncation slope off by %.3f", combination, fractions,
                  slope_gap) +
                  (exact ? ", exact m <= 1 forms match" : ", exact m <= 1 forms DIFFER")};
}

Outcome euler_maclaurin() {
  auto lorentz = [](int k, double x) {
    double fact = 1.0;
    for (int j = 2; j <= k; ++j) fact *= j;
    const Complex d = std::pow(Complex(x, -1.0), -(k + 1));
    return ((k % 2 == 0 ? 1.0 : -1.0) * fact * d).imag();
  };
  const EulerMaclaurinCheck l = euler_maclaurin_check(3, 10, lorentz);
  auto square = [](int k, double x) { return k == 0 ? x * x : k == 1 ? 2.0 * x : k == 2 ? 2.0 : 0.0; };
  const EulerMaclaurinCheck p = euler_maclaurin_check(2, 7, square);
  const double poly_gap = std::fabs(p.lhs - p.rhs) / p.lhs;
  const bool ok = std::fabs(l.lhs - l.rhs) <= 1e-12 && poly_gap <= 16 * std::numeric_limits<double>::epsilon() && p.remainder == 0.0;
  return {ok, fmt("Lorentzian gap %.1e, x^2 relative gap %.1e with remainder %g", std::fabs(l.lhs - l.rhs), poly_gap,
                  p.remainder)};
}

Outcome critical_zeros() {
  const ZeroScan scan = find_critical_zeros(1.0, 20.0, 0.05);
  double beta = NAN, riemann = NAN, worst = 0.0;
  for (const ZeroRecord& z : scan.zeros) {
    worst = std::max(worst, z.residual);
    if (z.source == ZeroSource::BetaFactor && std::isnan(beta)) beta = z.t;
    if (z.source == ZeroSource::RiemannFactor && std::isnan(riemann)) riemann = z.t;
  }
  const bool ok = beta < 10.0 && riemann < 20.0 && worst < 1e-8;
  return {ok, fmt("first zeros t = %.10f (beta), %.10f (zeta), max residual %.1e", beta, riemann, worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"stencil eigenvalues", stencil_eigenvalues},
      {"second order convergence at s = 2", convergence_at_two},
      {"expansion residual order", expansion_residual},
      {"circle analogue", circle_analogue},
      {"functional equation", functional_equation},
      {"correction ratio on and off the line", critical_line_ratio},
      {"discrete ratio approach", discrete_ratio},
      {"regularized integrals", regularized_integrals},
      {"expansion identities", expansion_identities},
      {"Euler-Maclaurin", euler_maclaurin},
      {"critical line zeros", critical_zeros},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("threw: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!outcome.pass) ++failures;
    std::printf("[%s] %2d %-38s %s (%.2f s)\n", outcome.pass ? "PASS" : "FAIL", index, name, outcome.detail.c_str(),
                seconds);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
