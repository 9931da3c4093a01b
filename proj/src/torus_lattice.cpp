#include "tzeta/torus_lattice.hpp"

#include <limits>
#include <vector>

#include "tzeta/summation.hpp"

namespace tzeta {

const char* to_string(Stencil v) { return v == Stencil::FivePoint ? "five" : "nine"; }

Stencil stencil_from_string(const std::string& name) {
  if (name == "five" || name == "5" || name == "five-point") return Stencil::FivePoint;
  if (name == "nine" || name == "9" || name == "nine-point") return Stencil::NinePoint;
  throw DomainError("unknown stencil '" + name + "' (expected five or nine)");
}

namespace {

constexpr double pi = std::numbers::pi;

// sin^2(pi k / n) for k = 0..n/2 together with how often each value occurs
// in 0..n-1. Everything downstream depends on k only through this, so the
// k <-> n-k symmetry cuts each axis in half.
struct HalfAxis {
  std::vector<double> sin2;
  std::vector<double> mult;
};

HalfAxis half_axis(int n) {
  HalfAxis h;
  const int H = n / 2 + 1;
  h.sin2.resize(H);
  h.mult.resize(H);
  for (int k = 0; k < H; ++k) {
    const double t = std::sin(pi * k / n);
    h.sin2[k] = t * t;
    h.mult[k] = (k == 0 || 2 * k == n) ? 1.0 : 2.0;
  }
  return h;
}

double symbol(Stencil v, double s1, double s2) {
  double out = s1 + s2;
  if (v == Stencil::NinePoint) out -= (2.0 / 3.0) * s1 * s2;
  return out;
}

}  // namespace

LatticeSum spectral_zeta(int n, Stencil v, Complex s) {
  LatticeSum out;
  if (n < 1) throw RangeError("spectral_zeta: n must be positive");
  if (n == 1) {
    out.empty = true;
    return out;
  }
  const HalfAxis axis = half_axis(n);
  const std::size_t H = axis.sin2.size();
  const double log_scale = 2.0 * std::log(static_cast<double>(n)) - 2.0 * std::log(pi);

  // Only the triangle k1 <= k2 is visited; off-diagonal cells count twice.
  auto term = [&](std::size_t idx) -> Complex {
    const std::size_t i = idx / H, j = idx % H;
    if (i > j || (i == 0 && j == 0)) return 0.0;
    const double weight = axis.mult[i] * axis.mult[j] * (i == j ? 1.0 : 2.0);
    const double log_lambda = log_scale + std::log(symbol(v, axis.sin2[i], axis.sin2[j]));
    return weight * std::exp(-s * log_lambda);
  };
  const auto sum = deterministic_sum<Complex>(H * H, term);
  out.value = sum.value;
  const double log_max = log_scale + std::log(2.0);
  out.error_estimate =
      std::numeric_limits<double>::epsilon() * sum.abs_sum * (8.0 + std::abs(s) * std::fabs(log_max));
  return out;
}

Complex spectral_zeta_checked(int n, Stencil v, Complex s) {
  const LatticeSum r = spectral_zeta(n, v, s);
  if (r.empty) throw DegenerateError("empty spectrum: a torus with n = 1 has only the zero mode");
  return r.value;
}

double resolvent_trace(int n, Stencil v, int alpha, double z, bool exclude_zero_mode) {
  if (n < 1) throw RangeError("resolvent_trace: n must be positive");
  if (alpha < 1) throw DomainError("resolvent_trace: alpha must be >= 1");
  if (z == 0.0 && !exclude_zero_mode) {
    throw DomainError("resolvent_trace: z = 0 makes the zero mode singular; exclude it explicitly");
  }
  if (z < 0.0) throw DomainError("resolvent_trace: z must be non-negative");
  const double z2 = z * z;
  const double zero_mode = exclude_zero_mode ? 0.0 : std::pow(z2, -alpha);
  if (n == 1) return zero_mode;

  const HalfAxis axis = half_axis(n);
  const std::size_t H = axis.sin2.size();
  const double scale = static_cast<double>(n) * n / (pi * pi);
  auto term = [&](std::size_t idx) -> double {
    const std::size_t i = idx / H, j = idx % H;
    if (i > j || (i == 0 && j == 0)) return 0.0;
    const double weight = axis.mult[i] * axis.mult[j] * (i == j ? 1.0 : 2.0);
    return weight * std::pow(scale * symbol(v, axis.sin2[i], axis.sin2[j]) + z2, -alpha);
  };
  return deterministic_sum<double>(H * H, term).value + zero_mode;
}

Complex spectral_zeta_1d(int n, Complex s) {
  if (n < 1) throw RangeError("spectral_zeta_1d: n must be positive");
  if (n == 1) throw DegenerateError("empty spectrum: the one-point circle has only the zero mode");
  const HalfAxis axis = half_axis(n);
  const double log_scale = 2.0 * std::log(static_cast<double>(n)) - 2.0 * std::log(pi);
  CompensatedSum<Complex> acc;
  for (std::size_t k = 1; k < axis.sin2.size(); ++k) {
    acc.add(axis.mult[k] * std::exp(-s * (log_scale + std::log(axis.sin2[k]))));
  }
  return acc.value();
}

}  // namespace tzeta
