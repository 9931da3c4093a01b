#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "test_support.hpp"
#include "tzeta/conjecture_lab.hpp"
#include "tzeta/epstein.hpp"
#include "tzeta/errors.hpp"
#include "tzeta/expansion.hpp"

using namespace tzeta;
using tzeta::testing::rel_err;

namespace {

constexpr double pi = std::numbers::pi;

std::string meta_value(const ScanRecord& r, const std::string& key) {
  for (const auto& [k, v] : r.meta) {
    if (k == key) return v;
  }
  return {};
}

std::vector<double> open_unit_grid(int points) {
  std::vector<double> grid;
  for (int i = 0; i < points; ++i) grid.push_back(0.01 + 0.98 * i / (points - 1));
  return grid;
}

}  // namespace

TEST_CASE("correction ratio routes") {
  // mpmath, 30 digits.
  const Complex s(0.3, 66.0);
  const Complex expected(-0.27793537900219338239, 0.20146969389750190532);
  for (RatioRoute route : {RatioRoute::ShiftedZeta, RatioRoute::ReflectedZeta, RatioRoute::Direct}) {
    CHECK(rel_err(correction_ratio(s, route), expected) < 1e-10);
  }
  CHECK(rel_err(correction_ratio(Complex(0.75, 70.0)),
                Complex(-5.0427489388831793058, -0.26507466591958462785)) < 1e-10);
  for (Complex p : {Complex(0.4, 3.0), Complex(0.1, 12.0), Complex(0.8, 40.0)}) {
    const Complex shifted = correction_ratio(p, RatioRoute::ShiftedZeta);
    CHECK(rel_err(correction_ratio(p, RatioRoute::ReflectedZeta), shifted) < 1e-10);
    CHECK(rel_err(correction_ratio(p, RatioRoute::Direct), shifted) < 1e-10);
    CHECK(rel_err(correction_ratio(std::conj(p)), std::conj(shifted)) < 1e-13);
  }
  for (double b : {5.0, 10.0, 66.0, 70.0, 100.0}) {
    CAPTURE(b);
    CHECK(std::fabs(std::abs(correction_ratio(Complex(0.5, b))) - 1.0) < 1e-10);
  }
  // zeta(s - 1) has a trivial zero at s - 1 = -2.
  CHECK_THROWS_AS(correction_ratio(-1.0, RatioRoute::ShiftedZeta), ZeroDenominatorError);
  CHECK_THROWS_AS(correction_ratio(1.0, RatioRoute::ReflectedZeta), ZeroDenominatorError);
}

TEST_CASE("rational prefactor") {
  CHECK(rational_prefactor_modulus(Complex(0.5, 1.0)) == doctest::Approx(pi * pi / 1.25).epsilon(1e-15));
  CHECK_THROWS_AS(rational_prefactor_modulus(0.0), PoleError);
  CHECK_THROWS_AS(rational_prefactor_modulus(1.0), PoleError);

  // Maximum over a at 1/2 for b = 1.
  double best_a = 0.0, best = 0.0;
  for (int i = 1; i < 1000; ++i) {
    const double a = i / 1000.0;
    const double q = rational_prefactor_modulus(Complex(a, 1.0));
    if (q > best) {
      best = q;
      best_a = a;
    }
  }
  CHECK(best_a == doctest::Approx(0.5));

  // Finite-difference slope of q^2 against the closed-form numerator.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> a_dist(0.02, 0.98), b_dist(0.51, 80.0);
  for (int i = 0; i < 200; ++i) {
    const double a = a_dist(rng), b = b_dist(rng);
    if (std::fabs(a - 0.5) < 1e-3) continue;
    const double h = 1e-6;
    const double up = std::pow(rational_prefactor_modulus(Complex(a + h, b)), 2);
    const double down = std::pow(rational_prefactor_modulus(Complex(a - h, b)), 2);
    const double numerator = rational_prefactor_slope_numerator(a, b);
    CHECK(((up - down) > 0.0) == (numerator > 0.0));
    CHECK((numerator > 0.0) == (a < 0.5));
  }
  // Below b^2 = 1/4 the sign pattern breaks down: at b = 0.3, q^2 decreases
  // at a = 0.3 although a < 1/2.
  CHECK(rational_prefactor_slope_numerator(0.3, 0.3) < 0.0);
  CHECK(rational_prefactor_modulus(Complex(0.31, 0.3)) < rational_prefactor_modulus(Complex(0.29, 0.3)));
}

TEST_CASE("shift moduli") {
  CHECK(forward_shift_modulus(Complex(0.75, 70.0)) == doctest::Approx(0.01017050447792271347).epsilon(1e-11));
  CHECK(reflected_shift_modulus(Complex(0.75, 70.0)) == doctest::Approx(0.000398849859642001128711).epsilon(1e-11));
  for (double a = 0.05; a < 1.0; a += 0.1) {
    for (double b : {0.5, 3.0, 20.0, 70.0}) {
      const Complex s(a, b);
      CHECK(std::fabs(reflected_shift_modulus(s) - forward_shift_modulus(1.0 - s)) <=
            1e-12 * std::max(1.0, forward_shift_modulus(1.0 - s)));
      CHECK(forward_shift_modulus(std::conj(s)) == doctest::Approx(forward_shift_modulus(s)).epsilon(1e-14));
      CHECK(reflected_shift_modulus(std::conj(s)) == doctest::Approx(reflected_shift_modulus(s)).epsilon(1e-14));
    }
  }
  // Monotone in a on either side of the critical line at b = 70.
  double previous_forward = 0.0;
  for (int i = 0; i <= 20; ++i) {
    const double a = 0.5 + 0.5 * (i + 0.5) / 21.0;
    const double f = forward_shift_modulus(Complex(a, 70.0));
    CHECK(f > previous_forward);
    previous_forward = f;
  }
  double previous_reflected = INFINITY;
  for (int i = 0; i <= 20; ++i) {
    const double a = 0.5 * (i + 0.5) / 21.0;
    const double r = reflected_shift_modulus(Complex(a, 70.0));
    CHECK(r < previous_reflected);
    previous_reflected = r;
  }
  CHECK_THROWS_AS(forward_shift_modulus(-1.0), ZeroDenominatorError);
  CHECK_THROWS_AS(reflected_shift_modulus(2.0), ZeroDenominatorError);
}

TEST_CASE("functional equation defect on the strip grid") {
  double worst = 0.0;
  for (double a : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    for (double b : {1.0, 14.0, 27.0, 40.0}) worst = std::max(worst, functional_equation_defect(Complex(a, b)));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("monotonicity scan") {
  const std::vector<double> grid = open_unit_grid(101);
  const MonotonicityScan scan = monotonicity_scan(70.0, grid);
  CHECK_FALSE(scan.exploratory);
  CHECK(scan.strictly_increasing);
  REQUIRE(scan.crossing.has_value());
  REQUIRE(scan.crossing_cell.has_value());
  CHECK(std::fabs(*scan.crossing - 0.5) <= grid[1] - grid[0]);
  REQUIRE(scan.records.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(scan.records[i].s == Complex(grid[i], 70.0));
    const double modulus = std::abs(scan.records[i].value);
    if (grid[i] < 0.5 - 1e-9) CHECK(modulus < 1.0);
    if (grid[i] > 0.5 + 1e-9) CHECK(modulus > 1.0);
  }
  // Thread count does not change the records.
  const MonotonicityScan serial = monotonicity_scan(70.0, grid, 1);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(serial.records[i].value == scan.records[i].value);

  // Low heights run but are flagged; the verdict is not asserted there.
  const MonotonicityScan low = monotonicity_scan(0.1, open_unit_grid(21));
  CHECK(low.exploratory);
  CHECK(meta_value(low.records[0], "exploratory") == "true");

  // A grid that does not increase is rejected.
  CHECK_THROWS_AS(monotonicity_scan(70.0, {0.3, 0.3}), DomainError);
}

TEST_CASE("discrete ratio study") {
  const Complex s(0.3, 2.0);
  const std::vector<int> ns = {32, 64, 128, 256, 512};
  const std::vector<ScanRecord> rows = discrete_ratio_study(s, ns);
  REQUIRE(rows.size() == ns.size());
  std::vector<std::pair<int, double>> defects;
  for (const ScanRecord& r : rows) {
    CHECK(r.quantity == "discrete_ratio");
    REQUIRE(r.n.has_value());
    defects.emplace_back(*r.n, std::fabs(r.value.real() - 1.0));
    CHECK(meta_value(r, "near_zero").empty());
  }
  for (std::size_t i = 1; i < defects.size(); ++i) CHECK(defects[i].second < defects[i - 1].second);
  const double slope = log_log_slope(defects);
  CHECK(slope >= -2.6);
  CHECK(slope <= -1.4);
  // |ratio| - 1 ~ Re[(correction(1-s) - correction(s)) / completed_zeta(s)] n^-2,
  // whose coefficient mpmath puts at 1.6971018451378074.
  CHECK(std::stod(meta_value(rows.back(), "defect_n2")) == doctest::Approx(1.6971018451378074).epsilon(1e-4));

  // The conjugate point gives the same moduli.
  const std::vector<ScanRecord> mirrored = discrete_ratio_study(std::conj(s), {32, 64, 128});
  for (std::size_t i = 0; i < mirrored.size(); ++i) {
    CHECK(mirrored[i].value.real() == doctest::Approx(rows[i].value.real()).epsilon(1e-12));
  }

  // On a zero of the beta factor the ratio still tends to one, and the
  // records say where the zero is.
  const Complex on_zero(0.5, 6.0209489046975966549);
  for (const ScanRecord& r : discrete_ratio_study(on_zero, {32, 64, 128})) {
    CHECK(std::fabs(r.value.real() - 1.0) < 1e-8);
    CHECK(std::stod(meta_value(r, "near_zero")) == doctest::Approx(6.0209489046975966549).epsilon(1e-10));
  }

  CHECK_THROWS_AS(discrete_ratio_study(Complex(1.2, 1.0), ns), DomainError);
  CHECK_THROWS_AS(discrete_ratio_study(s, {32, 64, 100}), DomainError);
}
