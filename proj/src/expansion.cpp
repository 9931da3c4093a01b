#include "tzeta/expansion.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <sstream>
#include <tuple>

#include "tzeta/epstein.hpp"
#include "tzeta/errors.hpp"
#include "tzeta/summation.hpp"

namespace tzeta {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double eps = std::numeric_limits<double>::epsilon();

void require_strip(Complex s, const char* who) {
  if (!(s.real() > 0.0 && s.real() < 1.0)) {
    throw DomainError(std::string(who) + ": needs 0 < Re s < 1");
  }
}

// (sin(pi u) / (pi u))^2
double sinc_squared(double u) {
  if (u == 0.0) return 1.0;
  const double v = std::sin(pi * u) / (pi * u);
  return v * v;
}

// Symbol of the stencil at (x, x t) divided by (pi x)^2 / pi^2 = x^2, so
// that symbol / pi^2 = x^2 * reduced_symbol. Bounded away from zero on the
// integration triangle.
double reduced_symbol(Stencil v, double x, double t) {
  const double sx = sinc_squared(x);
  const double sy = sinc_squared(x * t);
  double g = sx + t * t * sy;
  if (v == Stencil::NinePoint) g -= (2.0 / 3.0) * pi * pi * x * x * t * t * sx * sy;
  return g;
}

// x^p for x >= 0; the x = 0 node of a quadrature rule gets the limit value
// instead of the NaN that exp(p * log 0) produces for complex p.
Complex power(double x, Complex p) {
  if (x == 0.0) return p.real() > 0.0 ? Complex(0.0) : Complex(std::numeric_limits<double>::infinity());
  return std::exp(p * std::log(x));
}

}  // namespace

QuadResult<Complex> leading_integral(Complex s, Stencil v, double tol) {
  if (!(tol > 0.0)) throw DomainError("leading_integral: tol must be positive");
  if (!(s.real() < 1.0)) throw DomainError("leading_integral: diverges for Re s >= 1");
  double inner_error = 0.0;
  auto over_t = [&](double x) -> Complex {
    auto integrand = [&](double t) -> Complex { return std::exp(-s * std::log(reduced_symbol(v, x, t))); };
    const QuadResult<Complex> r = quad_finite(integrand, 0.0, 1.0, 0.1 * tol);
    inner_error = std::max(inner_error, r.error);
    return power(x, 1.0 - 2.0 * s) * r.value;
  };
  QuadResult<Complex> outer = quad_finite(over_t, 0.0, 0.5, tol);
  // Eight copies of the triangle 0 < y < x < 1/2 make up the unit square.
  outer.value *= 8.0;
  outer.error = 8.0 * (outer.error + 0.5 * inner_error);
  return outer;
}

namespace {

using CacheKey = std::tuple<double, double, int, double>;

struct LeadingCache {
  std::shared_mutex mutex;
  std::map<CacheKey, QuadResult<Complex>> entries;
};

LeadingCache& leading_cache() {
  static LeadingCache cache;
  return cache;
}

// leading_integral through the cache. Two threads may compute the same entry
// concurrently; both get the same deterministic value and the first insert wins.
QuadResult<Complex> cached_leading_integral(Complex s, Stencil v, double tol) {
  LeadingCache& cache = leading_cache();
  const CacheKey key{s.real(), s.imag(), static_cast<int>(v), tol};
  {
    std::shared_lock lock(cache.mutex);
    const auto it = cache.entries.find(key);
    if (it != cache.entries.end()) return it->second;
  }
  const QuadResult<Complex> value = leading_integral(s, v, tol);
  std::unique_lock lock(cache.mutex);
  return cache.entries.emplace(key, value).first->second;
}

}  // namespace

Complex leading_coefficient(Complex s, Stencil v, double tol) {
  require_strip(s, "leading_coefficient");
  return cached_leading_integral(s, v, tol).value * inverse_front_factor(2, s);
}

void clear_leading_coefficient_cache() {
  LeadingCache& cache = leading_cache();
  std::unique_lock lock(cache.mutex);
  cache.entries.clear();
}

std::size_t leading_coefficient_cache_size() {
  LeadingCache& cache = leading_cache();
  std::shared_lock lock(cache.mutex);
  return cache.entries.size();
}

Complex leading_coefficient_by_resolvent(Complex s, Stencil v, double tol) {
  require_strip(s, "leading_coefficient_by_resolvent");
  // Integral over the unit square of (symbol/pi^2 + z^2)^{-2}, on the same
  // triangle as above: the Jacobian is x, the symbol x^2 * reduced_symbol.
  auto square_average = [&](double z) -> double {
    const double z2 = z * z;
    auto over_t = [&](double x) -> double {
      auto integrand = [&](double t) -> double {
        const double q = x * x * reduced_symbol(v, x, t) + z2;
        return 1.0 / (q * q);
      };
      return x * quad_finite(integrand, 0.0, 1.0, 0.01 * tol).value;
    };
    return 8.0 * quad_finite(over_t, 0.0, 0.5, 0.1 * tol).value;
  };
  auto integrand = [&](double z) -> Complex {
    // Below 1e-60 the integrand is O(z^{1-2s}) and contributes nothing
    // visible, while the inner integrand would overflow. The tail map
    // samples up to z = inf; past 1e50 the z^{-1-2s} decay leaves nothing.
    if (z < 1e-60 || z > 1e50) return 0.0;
    return power(z, 3.0 - 2.0 * s) * square_average(z);
  };
  const Complex head = quad_finite(integrand, 0.0, 1.0, tol).value;
  const Complex tail = quad_to_infinity(integrand, 1.0, tol).value;
  return head + tail;
}

Complex constant_coefficient(Complex s) { return epstein_zeta_2d(s) * inverse_front_factor(2, s); }

Complex second_coefficient(Complex s, Stencil v, double tol) {
  const Complex radial = (s * pi * pi / 3.0) * epstein_zeta_2d(s - 1.0) * inverse_front_factor(2, s);
  if (v == Stencil::NinePoint) return radial;
  return radial - (4.0 * pi * pi / (2.0 - s)) * angular_lattice_sum(s, tol);
}

namespace {

// Modified Bessel functions of half-integer order in closed form, without
// the common factor sqrt(pi / (2x)) e^{-x}.
double bessel_k52_reduced(double x) { return 1.0 + 3.0 / x + 3.0 / (x * x); }
double bessel_k72_reduced(double x) { return 1.0 + 6.0 / x + 15.0 / (x * x) + 15.0 / (x * x * x); }

// sum_{k2 in Z} k2^2 / (k2^2 + u)^4 minus its integral pi / (16 u^{5/2}),
// by Poisson summation. Each dual term is the Fourier transform of
// k^2 / (k^2 + c^2)^4 = (k^2 + c^2)^{-3} - c^2 (k^2 + c^2)^{-4} at a = 2 pi m.
double angular_row_correction(double u) {
  const double c = std::sqrt(u);
  double acc = 0.0;
  for (int m = 1; m < 64; ++m) {
    const double a = 2.0 * pi * m;
    const double x = a * c;
    const double common = std::sqrt(pi) * std::sqrt(pi / (2.0 * x)) * std::exp(-x);
    const double ratio = a / (2.0 * c);
    const double term = common * std::pow(ratio, 2.5) *
                        (bessel_k52_reduced(x) - (c * c / 3.0) * ratio * bessel_k72_reduced(x));
    acc += 2.0 * term;
    if (std::fabs(term) <= 1e-18 * std::fabs(acc)) break;
  }
  return acc;
}

// sum_{k >= 1} k^2 (k^2 + z^2)^{-5/2} minus 1/(3 z^2).
double radial_row_correction(double z) {
  if (z < 0.5) {
    // Binomial series in z^2; coefficients C(-5/2, j) zeta(3 + 2j), built once.
    static const std::vector<double> coefficients = [] {
      std::vector<double> c;
      double binom = 1.0;
      for (int j = 0; j < 60; ++j) {
        c.push_back(binom * riemann_zeta(3.0 + 2.0 * j).real());
        binom *= (-2.5 - j) / (j + 1.0);
      }
      return c;
    }();
    const double z2 = z * z;
    double acc = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * z2 + *it;
    return acc - 1.0 / (3.0 * z2);
  }
  double acc = 0.0;
  for (int m = 1; m < 400; ++m) {
    const double a = 2.0 * pi * m;
    const double x = a * z;
    if (x > 700.0) break;
    // (2a/z) K1 - (2/3) a^2 K2, with K2 = K0 + (2/x) K1.
    const double term = (2.0 * a / (3.0 * z)) * std::cyl_bessel_k(1.0, x) - (2.0 / 3.0) * a * a * std::cyl_bessel_k(0.0, x);
    acc += term;
    if (std::fabs(term) <= 1e-18 * std::fabs(acc)) break;
  }
  return acc;
}

}  // namespace

double angular_profile(double z) {
  if (!(z > 0.0)) throw DomainError("angular_profile: z must be positive");
  // sum over k1 != 0 of 2 k1^2 [row integral + row correction]; the row
  // integrals combine with pi/(24 z^2) into the radial correction.
  double rows = 0.0;
  for (int k1 = 1; k1 < 1000; ++k1) {
    const double k = static_cast<double>(k1);
    const double term = 2.0 * k * k * angular_row_correction(k * k + z * z);
    rows += term;
    if (term == 0.0 || std::fabs(term) <= 1e-18 * std::fabs(rows)) break;
  }
  return rows + (pi / 8.0) * radial_row_correction(z);
}

Complex angular_lattice_sum(Complex s, double tol) {
  if (!(s.real() > 0.0 && s.real() < 2.0)) throw DomainError("angular_lattice_sum: needs 0 < Re s < 2");
  auto integrand = [&](double z) -> Complex {
    // Near zero the profile is -pi/(24 z^2) to within a bounded term, and
    // forming it directly would overflow.
    if (z < 1e-30) return -(pi / 24.0) * power(z, 3.0 - 2.0 * s);
    return std::exp((5.0 - 2.0 * s) * std::log(z)) * angular_profile(z);
  };
  // The profile decays like exp(-2 pi z); beyond z = 12 it is below 1e-30.
  const Complex near = quad_finite(integrand, 0.0, 1.0, 0.5 * tol).value;
  const Complex far = quad_finite(integrand, 1.0, 12.0, 0.5 * tol).value;
  return near + far;
}

namespace {

// theta2(t) = sum_{k in Z} k^2 e^{-t k^2}, written as its small-t leading
// term sqrt(pi)/2 t^{-3/2} plus `excess`, computed without cancellation.
struct Theta2 {
  double leading;
  double excess;
};

Theta2 theta2(double t) {
  const double leading = 0.5 * std::sqrt(pi) * std::pow(t, -1.5);
  double excess = 0.0;
  if (t >= 1.0) {
    double full = 0.0;
    for (int k = 1; k < 100; ++k) {
      const double term = 2.0 * k * k * std::exp(-t * k * k);
      full += term;
      if (term < 1e-20 * full) break;
    }
    excess = full - leading;
  } else if (t > 0.01) {
    // Below t = 0.01 every dual term is under e^{-980} and the excess is zero.
    // Poisson: sum k^2 e^{-tk^2} = sqrt(pi/t) sum_m e^{-pi^2 m^2/t} (1/(2t) - pi^2 m^2/t^2).
    for (int m = 1; m < 100; ++m) {
      const double mm = static_cast<double>(m) * m;
      const double term = 2.0 * std::sqrt(pi / t) * std::exp(-pi * pi * mm / t) * (0.5 / t - pi * pi * mm / (t * t));
      excess += term;
      if (std::fabs(term) <= 1e-20 * std::fabs(leading)) break;
    }
  }
  return {leading, excess};
}

}  // namespace

Complex angular_lattice_sum_theta(Complex s, double tol) {
  if (!(s.real() > 0.0 && s.real() < 2.0)) throw DomainError("angular_lattice_sum_theta: needs 0 < Re s < 2");
  // Near zero theta2^2 = (pi/4) t^{-3} + excess (2 leading + excess); the
  // pure power contributes (pi/4)/(s-2) in the regularized sense.
  auto near = [&](double t) -> Complex {
    const Theta2 th = theta2(t);
    if (th.excess == 0.0) return Complex(0.0);
    const double rest = th.excess * (2.0 * th.leading + th.excess);
    return power(t, s) * rest;
  };
  auto far = [&](double t) -> Complex {
    const Theta2 th = theta2(t);
    const double full = th.leading + th.excess;
    return std::exp(s * std::log(t)) * full * full;
  };
  const Complex mellin = quad_finite(near, 0.0, 1.0, 0.5 * tol).value +
                         quad_finite(far, 1.0, 40.0, 0.5 * tol).value + (pi / 4.0) / (s - 2.0);
  return complex_gamma(3.0 - s) / 12.0 * mellin;
}

double continuous_resolvent_trace(double z, int alpha, int cutoff, TracePart part) {
  if (!(z > 0.0)) throw DomainError("continuous_resolvent_trace: z must be positive");
  if (alpha < 2) throw RangeError("continuous_resolvent_trace: alpha must be at least 2");
  if (cutoff < 8) throw RangeError("continuous_resolvent_trace: cutoff must be at least 8");
  const double z2 = z * z;
  const double zero_mode = std::pow(z2, -alpha);
  const double volume = pi * std::pow(z2, 1 - alpha) / (alpha - 1);

  if (z >= 1.0) {
    // Dual lattice: the Fourier transform of (|k|^2 + z^2)^{-alpha} at m is
    // (2 pi^alpha / Gamma(alpha)) (|m|/z)^{alpha-1} K_{alpha-1}(2 pi |m| z).
    const double prefactor = 2.0 * std::pow(pi, alpha) / std::tgamma(static_cast<double>(alpha));
    const int reach = static_cast<int>(std::ceil(8.0 / z)) + 1;
    double dual = 0.0;
    for (int m1 = 1; m1 <= reach; ++m1) {
      for (int m2 = 0; m2 <= reach; ++m2) {
        const double r = std::hypot(static_cast<double>(m1), static_cast<double>(m2));
        if (2.0 * pi * r * z > 700.0) continue;  // underflows to zero
        dual += std::pow(r / z, alpha - 1) * std::cyl_bessel_k(static_cast<double>(alpha - 1), 2.0 * pi * r * z);
      }
    }
    dual *= 4.0 * prefactor;  // the quarter m1 >= 1, m2 >= 0 and its rotations
    switch (part) {
      case TracePart::Full: return volume + dual;
      case TracePart::WithoutZeroMode: return volume + dual - zero_mode;
      case TracePart::WithoutVolumeTerm: return dual;
    }
  }

  const std::size_t side = static_cast<std::size_t>(cutoff);
  auto term = [&](std::size_t idx) -> double {
    const double k1 = static_cast<double>(idx / (side + 1) + 1);
    const double k2 = static_cast<double>(idx % (side + 1));
    return std::pow(k1 * k1 + k2 * k2 + z2, -alpha);
  };
  const double lattice = 4.0 * deterministic_sum<double>(side * (side + 1), term).value;

  // Outside the square of half-width L = cutoff + 1/2 the sum is replaced by
  // the integral, expanded in z^2/r^2:
  //   int_{max(|x|,|y|) > L} r^{-2b} = 8 I_b L^{2-2b} / (2b - 2),
  //   I_b = int_0^1 (1 + t^2)^{-b} dt, from I_{b+1} = 2^{-b}/(2b) + (2b-1)/(2b) I_b.
  const double L = cutoff + 0.5;
  double tail = 0.0;
  double reduction = pi / 4.0;  // I_1
  for (int b = 1; b < alpha; ++b) reduction = std::pow(2.0, -b) / (2.0 * b) + (2.0 * b - 1.0) / (2.0 * b) * reduction;
  double binom = 1.0;  // C(-alpha, j)
  for (int j = 0; j < 40; ++j) {
    const int b = alpha + j;
    const double piece = binom * std::pow(z2, j) * 8.0 * reduction * std::pow(L, 2.0 - 2.0 * b) / (2.0 * b - 2.0);
    tail += piece;
    if (std::fabs(piece) <= 1e-18 * std::fabs(tail)) break;
    binom *= (-alpha - j) / (j + 1.0);
    reduction = std::pow(2.0, -b) / (2.0 * b) + (2.0 * b - 1.0) / (2.0 * b) * reduction;
  }
  const double without_zero = lattice + tail;
  switch (part) {
    case TracePart::Full: return without_zero + zero_mode;
    case TracePart::WithoutZeroMode: return without_zero;
    case TracePart::WithoutVolumeTerm: return without_zero + zero_mode - volume;
  }
  return 0.0;
}

std::pair<double, double> quartic_partial_fractions(double k1, double k2, double z) {
  const double r2 = k1 * k1 + k2 * k2 + z * z;
  const double direct = (std::pow(k1, 4) + std::pow(k2, 4)) / std::pow(r2, 4);
  const double split = 1.0 / (r2 * r2) - 2.0 * z * z / std::pow(r2, 3) + std::pow(z, 4) / std::pow(r2, 4) -
                       2.0 * k1 * k1 * k2 * k2 / std::pow(r2, 4);
  return {direct, split};
}

std::pair<double, double> radial_partial_fractions(double k1, double k2, double z) {
  const double r2 = k1 * k1 + k2 * k2 + z * z;
  const double q = k1 * k1 + k2 * k2;
  const double direct = q * q / std::pow(r2, 4);
  const double split = 1.0 / (r2 * r2) - 2.0 * z * z / std::pow(r2, 3) + std::pow(z, 4) / std::pow(r2, 4);
  return {direct, split};
}

EulerMaclaurinCheck euler_maclaurin_check(int M, int n, const std::function<double(int, double)>& derivative,
                                          bool exclude_last) {
  if (M < 1) throw RangeError("euler_maclaurin_check: M must be at least 1");
  if (n < 1) throw RangeError("euler_maclaurin_check: n must be at least 1");
  if (2 * M + 1 > default_bernoulli_table().max_index()) throw RangeError("euler_maclaurin_check: M too large");
  EulerMaclaurinCheck out;
  CompensatedSum<double> lhs, integral, remainder;
  const int last = exclude_last ? n - 1 : n;
  for (int i = 0; i <= last; ++i) lhs.add(derivative(0, i));

  double factorial = 1.0;
  for (int k = 2; k <= 2 * M + 1; ++k) factorial *= k;
  for (int i = 0; i < n; ++i) {
    const double a = i, b = i + 1.0;
    integral.add(quad_finite([&](double x) { return derivative(0, x); }, a, b, 1e-15).value);
    auto kernel = [&](double x) { return bernoulli_polynomial(2 * M + 1, x - a) * derivative(2 * M + 1, x); };
    remainder.add(quad_finite(kernel, a, b, 1e-15).value);
  }
  out.lhs = lhs.value();
  out.integral = integral.value();
  out.remainder = remainder.value() / factorial;
  const double u0 = derivative(0, 0.0), un = derivative(0, n);
  out.boundary = exclude_last ? 0.5 * (u0 - un) : 0.5 * (u0 + un);
  double corr = 0.0;
  double even_factorial = 1.0;
  for (int j = 1; j <= M; ++j) {
    even_factorial *= (2.0 * j - 1.0) * (2.0 * j);
    corr += bernoulli_number(2 * j) / even_factorial * (derivative(2 * j - 1, n) - derivative(2 * j - 1, 0.0));
  }
  out.corrections = corr;
  out.rhs = out.integral + out.boundary + out.corrections + out.remainder;
  return out;
}

Complex completed_discrete_zeta(Complex s, int n, double tol) {
  require_strip(s, "completed_discrete_zeta");
  if (n < 2) throw RangeError("completed_discrete_zeta: n must be at least 2");
  const Complex lattice = spectral_zeta(n, Stencil::NinePoint, s).value;
  const Complex leading = cached_leading_integral(s, Stencil::NinePoint, tol).value;
  const Complex growth = std::exp((2.0 - 2.0 * s) * std::log(static_cast<double>(n)));
  return completion_factor(s) * (lattice - leading * growth);
}

Complex circle_leading_coefficient(Complex s) {
  return std::exp((2.0 * s - 0.5) * std::log(pi)) * complex_gamma(0.5 - s) * reciprocal_gamma(1.0 - s);
}

Complex circle_expansion_residual(Complex s, int n) {
  if (n < 2) throw RangeError("circle_expansion_residual: n must be at least 2");
  const double nn = static_cast<double>(n);
  const Complex growth = std::exp((1.0 - 2.0 * s) * std::log(nn));
  return spectral_zeta_1d(n, s) - circle_leading_coefficient(s) * growth - 2.0 * riemann_zeta(2.0 * s) -
         (2.0 * s / 3.0) * pi * pi * riemann_zeta(2.0 * s - 2.0) / (nn * nn);
}

double log_log_slope(const std::vector<std::pair<int, double>>& points) {
  if (points.size() < 2) throw RangeError("log_log_slope: need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(points.size());
  for (const auto& [n, value] : points) {
    if (!(value > 0.0)) throw DomainError("log_log_slope: values must be positive");
    const double lx = std::log(static_cast<double>(n)), ly = std::log(value);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

ExpansionResult residual_order(Complex s, Stencil v, const std::vector<int>& n_list, int orders_included,
                               double tol) {
  if (orders_included < 0 || orders_included > 1) {
    throw RangeError("residual_order: only the terms through n^{-2} are available (orders 0 or 1)");
  }
  if (!(s.real() > 0.0)) throw DomainError("residual_order: needs Re s > 0");
  if (n_list.size() < 3) throw DomainError("residual_order: need at least three values of n");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 2) throw RangeError("residual_order: n must be at least 2");
    if (i >= 1 && n_list[i] <= n_list[i - 1]) throw DomainError("residual_order: n must increase");
    if (i >= 2) {
      const double r0 = static_cast<double>(n_list[i - 1]) / n_list[i - 2];
      const double r1 = static_cast<double>(n_list[i]) / n_list[i - 1];
      if (std::fabs(r1 - r0) > 1e-12 * r0) throw DomainError("residual_order: n values must be geometric");
    }
  }

  ExpansionResult out;
  out.s = s;
  out.stencil = v;
  out.orders_included = orders_included;
  out.front = front_factor(2, s);
  out.constant = constant_coefficient(s);
  out.second = second_coefficient(s, v, tol);
  out.convention = v == Stencil::NinePoint
                       ? "b1 = (s pi^2/3) zeta(s-1) / V(s)"
                       : "b1 = (s pi^2/3) zeta(s-1) / V(s) - 4 pi^2/(2-s) A(s), A with exponent 4";
  const bool in_strip = s.real() < 1.0;
  QuadResult<Complex> leading_int;
  if (in_strip) {
    leading_int = cached_leading_integral(s, v, tol);
    out.leading = leading_int.value * inverse_front_factor(2, s);
  }
  const Complex vb0 = epstein_zeta_2d(s);
  const Complex vb1 = out.front * out.second;

  for (int n : n_list) {
    const double nn = static_cast<double>(n);
    const LatticeSum lattice = spectral_zeta(n, v, s);
    Complex model = vb0;
    double noise = lattice.error_estimate + 8.0 * eps * std::abs(vb0);
    if (in_strip) {
      const Complex growth = std::exp((2.0 - 2.0 * s) * std::log(nn));
      model += leading_int.value * growth;
      noise += (leading_int.error + 8.0 * eps * std::abs(leading_int.value)) * std::abs(growth);
    }
    if (orders_included >= 1) {
      model += vb1 / (nn * nn);
      noise += 8.0 * eps * std::abs(vb1) / (nn * nn);
    }
    const double residual = std::abs(lattice.value - model);
    if (!(residual > 10.0 * noise)) {
      std::ostringstream os;
      os << "residual_order: residual " << residual << " at n = " << n << " is within 10x of its noise estimate "
         << noise;
      throw SignalLostError(os.str());
    }
    out.residuals.emplace_back(n, residual);
    out.noise.push_back(noise);
  }
  out.slope = log_log_slope(out.residuals);
  return out;
}

}  // namespace tzeta
