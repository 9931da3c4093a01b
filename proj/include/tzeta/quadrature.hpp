#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "tzeta/errors.hpp"
#include "tzeta/summation.hpp"

namespace tzeta {

template <class T>
struct QuadResult {
  T value{};
  double error = 0.0;  // estimated absolute error
  int levels = 0;      // refinement levels (or grid doublings) used
};

namespace detail {

inline double magnitude(double x) { return std::fabs(x); }
inline double magnitude(const std::complex<double>& x) { return std::abs(x); }

inline bool finite_value(double x) { return std::isfinite(x); }
inline bool finite_value(const std::complex<double>& x) {
  return std::isfinite(x.real()) && std::isfinite(x.imag());
}

// One tanh-sinh node at parameter t on [a, b]. The distance to the nearer
// endpoint is formed directly, so abscissae close to a = 0 keep full
// relative precision; integrable endpoint singularities should therefore be
// placed at a = 0 whenever possible.
struct DENode {
  double x;
  double weight;
  bool valid;
};

inline DENode de_node(double t, double a, double b) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  const double half = 0.5 * (b - a);
  const double u = half_pi * std::sinh(t);
  const double e = std::exp(-2.0 * std::fabs(u));
  const double dist = 2.0 * half * e / (1.0 + e);
  // d/dt tanh(u) = (pi/2) cosh t / cosh^2 u, with 1/cosh^2 u = 4e/(1+e)^2.
  const double weight = half * half_pi * std::cosh(t) * 4.0 * e / ((1.0 + e) * (1.0 + e));
  const double x = (u < 0.0) ? a + dist : b - dist;
  const bool valid = dist > 0.0 && x > a && x < b;
  return {x, weight, valid};
}

}  // namespace detail

/// Tanh-sinh (double exponential) quadrature on a finite interval.
///
/// Each level halves the step and only evaluates the new odd nodes. The
/// difference between consecutive levels serves as the error estimate,
/// which is pessimistic once the rule is in its quadratic regime.
/// Stops when that difference is below tol, either absolutely or relative
/// to the current value. Throws ConvergenceError after max_level levels.
template <class F>
auto tanh_sinh(F&& f, double a, double b, double tol = 1e-12, int max_level = 12)
    -> QuadResult<std::decay_t<decltype(f(a))>> {
  using T = std::decay_t<decltype(f(a))>;
  if (!(a < b)) throw DomainError("tanh_sinh: need a < b");
  constexpr double window = 6.0;  // |t| beyond this has weights below 1e-270

  auto sum_nodes = [&](double h, bool odd_only) {
    CompensatedSum<T> acc;
    const long kmax = static_cast<long>(std::ceil(window / h));
    for (long k = -kmax; k <= kmax; ++k) {
      if (odd_only && (k % 2 == 0)) continue;
      const detail::DENode node = detail::de_node(k * h, a, b);
      if (!node.valid || node.weight == 0.0) continue;
      const T fx = f(node.x);
      if (!detail::finite_value(fx)) {
        // Overflow right at an endpoint is tolerated where the weight is
        // negligible (an integrable singularity evaluated at 1e-280, say).
        if (node.weight < 1e-200) continue;
        throw ConvergenceError("tanh_sinh: integrand is not finite at x = " + std::to_string(node.x));
      }
      acc.add(node.weight * fx);
    }
    return acc.value();
  };

  double h = 0.5;
  T raw = sum_nodes(h, false);
  T estimate = h * raw;
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    raw += sum_nodes(h, true);
    const T next = h * raw;
    const double diff = detail::magnitude(next - estimate);
    if (!detail::finite_value(next)) {
      throw ConvergenceError("tanh_sinh: integrand produced a non-finite value");
    }
    estimate = next;
    if (level >= 3 && (diff <= tol || diff <= tol * detail::magnitude(next))) {
      return {next, diff, level};
    }
  }
  throw ConvergenceError("tanh_sinh: no convergence on [" + std::to_string(a) + ", " +
                         std::to_string(b) + "] after " + std::to_string(max_level) + " levels");
}

/// Adaptive wrapper: tanh-sinh on the whole interval, and on failure a fixed
/// bisection into panels (left panel first, so the result is deterministic).
template <class F>
auto quad_finite(F&& f, double a, double b, double tol = 1e-12, int max_depth = 10)
    -> QuadResult<std::decay_t<decltype(f(a))>> {
  using T = std::decay_t<decltype(f(a))>;
  if (!(a < b)) throw DomainError("quad_finite: need a < b");
  if (!(tol > 0.0)) throw DomainError("quad_finite: tol must be positive");
  try {
    return tanh_sinh(f, a, b, tol, 10);
  } catch (const ConvergenceError&) {
    if (max_depth == 0) throw;
  }
  const double mid = 0.5 * (a + b);
  const QuadResult<T> left = quad_finite(f, a, mid, 0.5 * tol, max_depth - 1);
  const QuadResult<T> right = quad_finite(f, mid, b, 0.5 * tol, max_depth - 1);
  return {left.value + right.value, left.error + right.error, std::max(left.levels, right.levels)};
}

/// Integral over [a, inf) for a > 0 through x = a / t, which maps the tail
/// onto (0, 1].
template <class F>
auto quad_to_infinity(F&& f, double a, double tol = 1e-12)
    -> QuadResult<std::decay_t<decltype(f(a))>> {
  if (!(a > 0.0)) throw DomainError("quad_to_infinity: lower limit must be positive");
  using T = std::decay_t<decltype(f(a))>;
  auto g = [&](double t) -> T {
    const double x = a / t;
    const T v = f(x);
    if (v == T(0)) return v;
    return ((v * x) * x) / a;
  };
  return quad_finite(g, 0.0, 1.0, tol);
}

template <class T>
struct PeriodicQuadResult : QuadResult<T> {
  int grid = 0;                  // points per axis in the accepted rule
  std::vector<double> changes;   // |T_2N - T_N| for each doubling
};

/// Product trapezoidal rule for a function that is 1-periodic in both
/// arguments. The grid doubles from 8 points per axis until two consecutive
/// rules agree to tol (relative to max(1, |value|)).
template <class F>
auto quad_periodic_2d(F&& f, double tol = 1e-11, int max_grid = 2048)
    -> PeriodicQuadResult<std::decay_t<decltype(f(0.0, 0.0))>> {
  using T = std::decay_t<decltype(f(0.0, 0.0))>;
  auto rule = [&](int N) {
    const double h = 1.0 / N;
    auto term = [&](std::size_t idx) -> T {
      const std::size_t i = idx / N, j = idx % N;
      return f(i * h, j * h);
    };
    return T(deterministic_sum<T>(static_cast<std::size_t>(N) * N, term).value * (h * h));
  };
  PeriodicQuadResult<T> out;
  int N = 8;
  T prev = rule(N);
  for (int doublings = 1; 2 * N <= max_grid; ++doublings) {
    N *= 2;
    const T next = rule(N);
    const double change = detail::magnitude(next - prev);
    out.changes.push_back(change);
    prev = next;
    if (change <= tol * std::max(1.0, detail::magnitude(next))) {
      out.value = next;
      out.error = change;
      out.levels = doublings;
      out.grid = N;
      return out;
    }
  }
  throw ConvergenceError("quad_periodic_2d: not converged at grid " + std::to_string(N));
}

}  // namespace tzeta
