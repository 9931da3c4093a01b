#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "test_support.hpp"
#include "tzeta/epstein.hpp"
#include "tzeta/errors.hpp"

using namespace tzeta;
using tzeta::testing::rel_err;
using C = Complex;
constexpr double pi = std::numbers::pi;

// Reference values from mpmath at 30 digits (zeta times the Dirichlet
// L-function of the character mod 4), frozen here.
constexpr double torus_zeta_at_2 = 6.026812039691940124;

TEST_CASE("torus zeta through the factorization") {
  CHECK(rel_err(epstein_zeta_2d(2.0), torus_zeta_at_2) < 1e-14);
  CHECK(rel_err(epstein_zeta_2d(2.0), 4.0 * pi * pi / 6.0 * catalan_constant) < 1e-14);
  CHECK(rel_err(epstein_zeta_2d(0.0), -1.0) < 1e-14);
  CHECK(rel_err(epstein_zeta_2d(C(0.3, 2.0)), C(2.209239456849354389, -0.46458986887954433063)) < 1e-13);
  CHECK(rel_err(epstein_zeta_2d(C(2.5, 4.0)), C(3.5292105177138787507, -0.20958056585105268019)) < 1e-13);
  for (int k = 1; k <= 3; ++k) CHECK(std::abs(epstein_zeta_2d(-static_cast<double>(k))) < 1e-10);
  CHECK_THROWS_AS(epstein_zeta_2d(1.0), PoleError);
  const C s(0.7, -13.0);
  CHECK(std::abs(epstein_zeta_2d(std::conj(s)) - std::conj(epstein_zeta_2d(s))) < 1e-13);
}

TEST_CASE("direct lattice sums") {
  const DirectSum tiny = epstein_direct_sum(3.0, 1);
  CHECK(std::abs(tiny.value - 4.5) < 1e-15);
  for (C s : {C(2.0), C(3.0), C(2.5, 4.0)}) {
    double previous_bound = INFINITY;
    for (int K : {20, 40, 80}) {
      const DirectSum d = epstein_direct_sum(s, K);
      CHECK(std::abs(d.value - epstein_zeta_2d(s)) <= d.tail_bound);
      CHECK(d.tail_bound < previous_bound);
      previous_bound = d.tail_bound;
    }
  }
  const C s(2.2, 3.0);
  CHECK(std::abs(epstein_direct_sum(std::conj(s), 10).value - std::conj(epstein_direct_sum(s, 10).value)) < 1e-14);
  CHECK_THROWS_AS(epstein_direct_sum(1.0, 10), DomainError);
  CHECK_THROWS_AS(epstein_direct_sum(C(0.5, 3.0), 10), DomainError);
  CHECK_THROWS_AS(epstein_direct_sum(2.0, 0), RangeError);
}

TEST_CASE("front factor") {
  CHECK(rel_err(front_factor(2, 0.5), 4.0 / pi) < 1e-15);
  CHECK(rel_err(front_factor(2, C(0.3, 2.0)), C(-23.128839273902474459, 77.044733025704699137)) < 1e-13);
  CHECK(rel_err(front_factor(3, C(0.3, 40.0)), C(-1.2591473792169764851e51, -8.0413850549008301624e50)) < 1e-12);
  // The sine form (2/pi) sin(pi s) Gamma(1-s) Gamma(alpha) / Gamma(alpha-s).
  const C s(0.37, 1.3);
  const C sine_form = 2.0 / pi * sin_pi(s) * complex_gamma(1.0 - s) * 2.0 / complex_gamma(3.0 - s);
  CHECK(rel_err(front_factor(3, s), sine_form) < 1e-13);
  // Entire: zeros instead of poles.
  CHECK(front_factor(2, 0.0) == C(0.0));
  CHECK(front_factor(2, 2.0) == C(0.0));
  CHECK(front_factor(2, 3.0) == C(0.0));
  CHECK(rel_err(front_factor(2, 1.0), 2.0) < 1e-15);
  CHECK_THROWS_AS(inverse_front_factor(2, 2.0), PoleError);
  CHECK(rel_err(front_factor(2, s) * inverse_front_factor(2, s), 1.0) < 1e-14);
  CHECK_THROWS_AS(front_factor(0, s), RangeError);
}

TEST_CASE("front factor combination identity") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> re(0.05, 0.95), im(-30.0, 30.0);
  for (int i = 0; i < 10; ++i) {
    const C s(re(rng), im(rng));
    const C lhs = inverse_front_factor(2, s - 1.0) - 2.0 * inverse_front_factor(3, s - 1.0) +
                  inverse_front_factor(4, s - 1.0);
    const C rhs = s * (2.0 - s) / 6.0 * inverse_front_factor(2, s);
    CHECK(rel_err(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("completed zeta") {
  CHECK(rel_err(completed_zeta(2.0), 0.6106437294514793434) < 1e-14);
  CHECK(rel_err(completed_zeta(C(0.3, 5.0)), C(-0.001658895003373945715, 0.00072858575720638016875)) < 1e-12);
  // At s = -2 the Gamma pole meets a trivial zero.
  CHECK(rel_err(completed_zeta(-2.0), 0.30051422578989857135) < 1e-14);
  CHECK_THROWS_AS(completed_zeta(0.0), PoleError);
  CHECK_THROWS_AS(completed_zeta(1.0), PoleError);

  const C s(0.3, 5.0);
  CHECK(std::abs(completed_zeta(s) - completed_zeta(1.0 - s)) < 1e-15);
  const C line(0.5, 10.0);
  CHECK(std::abs(completed_zeta(line) - std::conj(completed_zeta(std::conj(line)))) < 1e-20);
  CHECK(std::abs(completed_zeta(line).imag()) <= 1e-12 * std::abs(completed_zeta(line)));

  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 4; ++j) {
      const C p(0.1 + 0.2 * i, 1.0 + 13.0 * j);
      const C xi = completed_zeta(p);
      worst = std::max(worst, std::abs(xi - completed_zeta(1.0 - p)) / (1.0 + std::abs(xi)));
    }
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("correction term") {
  const C s(0.4, 3.0);
  const C want(0.091682088977574932832, -0.40217076906843590936);
  CHECK(rel_err(correction_term(s), want) < 1e-13);
  CHECK(rel_err(correction_term_from_completed(s), correction_term(s)) < 1e-11);
  const C far(0.5, 70.0);
  CHECK(rel_err(correction_term(far), C(-1.5498546681400998165e-44, -1.0775010074688843621e-42)) < 1e-11);
  CHECK(std::abs(std::abs(correction_term(1.0 - far) / correction_term(far)) - 1.0) < 1e-12);
  CHECK(rel_err(correction_term(std::conj(s)), std::conj(correction_term(s))) < 1e-15);
  for (C p : {C(0.8, -6.0), C(1.7, 0.4), C(-0.6, 2.0), C(3.5, 0.0)}) {
    CHECK(rel_err(correction_term_from_completed(p), correction_term(p)) < 1e-11);
  }
  CHECK_THROWS_AS(correction_term(2.0), PoleError);
  CHECK_THROWS_AS(correction_term(-1.0), PoleError);
  CHECK_THROWS_AS(correction_term_from_completed(1.0), PoleError);
  CHECK(rel_err(correction_term(1.0), -pi / 3.0) < 1e-14);
}

TEST_CASE("critical line zeros") {
  const ZeroScan scan = find_critical_zeros(1.0, 20.0, 0.05);
  const double beta_zeros[] = {6.0209489046975966549, 10.243770304166554552, 12.988098012312422507,
                               16.342607104587222195, 18.291993196123534839};
  const double riemann_zero = 14.13472514173469379;
  REQUIRE(scan.zeros.size() == 6);
  CHECK(scan.warnings.empty());
  int beta_seen = 0;
  for (const ZeroRecord& z : scan.zeros) {
    CHECK(z.residual < 1e-8);
    CHECK(std::abs(epstein_zeta_2d(C(0.5, z.t))) < 1e-8);
    if (z.source == ZeroSource::RiemannFactor) {
      CHECK(std::abs(z.t - riemann_zero) < 1e-10);
    } else {
      CHECK(std::abs(z.t - beta_zeros[beta_seen++]) < 1e-10);
    }
  }
  CHECK(beta_seen == 5);
  for (std::size_t i = 1; i < scan.zeros.size(); ++i) CHECK(scan.zeros[i - 1].t < scan.zeros[i].t);

  const ZeroScan one_thread = find_critical_zeros(1.0, 20.0, 0.05, 1);
  REQUIRE(one_thread.zeros.size() == scan.zeros.size());
  for (std::size_t i = 0; i < scan.zeros.size(); ++i) CHECK(one_thread.zeros[i].t == scan.zeros[i].t);

  // With a step of 4 the zeros at 10.24 and 12.99 share a cell and cancel.
  const ZeroScan coarse = find_critical_zeros(1.0, 20.0, 4.0);
  CHECK(coarse.zeros.size() < 6);
  CHECK_THROWS_AS(find_critical_zeros(0.0, 5.0, 0.1), DomainError);
  CHECK_THROWS_AS(find_critical_zeros(5.0, 4.0, 0.1), DomainError);
}

TEST_CASE("hardy functions are real rotations") {
  for (double t : {3.0, 9.5, 17.25}) {
    const double phase_r = complex_log_gamma(C(0.25, 0.5 * t)).imag() - 0.5 * t * std::log(pi);
    const C rotated = std::polar(1.0, phase_r) * riemann_zeta(C(0.5, t));
    CHECK(std::abs(rotated.imag()) < 1e-13 * std::max(1.0, std::abs(rotated)));
    CHECK(std::abs(riemann_hardy_function(t)) == doctest::Approx(std::abs(riemann_zeta(C(0.5, t)))).epsilon(1e-13));
    CHECK(std::abs(beta_hardy_function(t)) == doctest::Approx(std::abs(dirichlet_beta(C(0.5, t)))).epsilon(1e-13));
  }
}
