#include "tzeta/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "tzeta/errors.hpp"

namespace tzeta {

namespace {

constexpr double pi = std::numbers::pi;

bool is_nonpositive_integer(Complex s) {
  return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real());
}

void require_not_gamma_pole(Complex s, const char* who) {
  if (is_nonpositive_integer(s)) {
    throw PoleError(std::string(who) + ": pole at s = " + std::to_string(s.real()));
  }
}

// sin(pi r) for r already reduced to [-1, 1].
double sin_pi_reduced(double r) {
  if (r > 0.5) r = 1.0 - r;
  if (r < -0.5) r = -1.0 - r;
  return std::sin(pi * r);
}

double sin_pi_real(double a) {
  const double r = a - 2.0 * std::nearbyint(0.5 * a);
  return sin_pi_reduced(r);
}

double cos_pi_real(double a) {
  const double r = std::fabs(a - 2.0 * std::nearbyint(0.5 * a));
  return sin_pi_reduced(0.5 - r);
}

// Lanczos approximation with g = 607/128 and fifteen terms (Godfrey's
// coefficient set, also the one in Numerical Recipes 3rd ed.). The shorter
// g = 7 set loses about a digit once |Im s| passes 10.
constexpr double lanczos_g = 607.0 / 128.0;
constexpr std::array<double, 15> lanczos_coeffs = {
    0.99999999999999709182,   57.156235665862923517,    -59.597960355475491248,
    14.136097974741747174,    -0.49191381609762019978,  .33994649984811888699e-4,
    .46523628927048575665e-4, -.98374475304879564677e-4, .15808870322491248884e-3,
    -.21026444172410488319e-3, .21743961811521264320e-3, -.16431810653676389022e-3,
    .84418223983852743293e-4, -.26190838401581408670e-4, .36899182659531622704e-5};

Complex lanczos_gamma(Complex s) {
  const Complex z = s - 1.0;
  Complex series = lanczos_coeffs[0];
  for (std::size_t i = 1; i < lanczos_coeffs.size(); ++i) {
    series += lanczos_coeffs[i] / (z + static_cast<double>(i));
  }
  const Complex t = z + lanczos_g + 0.5;
  return std::sqrt(2.0 * pi) * std::exp((z + 0.5) * std::log(t) - t) * series;
}

// B_{2k} / (2k (2k-1)) for k = 1..10, the Stirling series for log-gamma.
constexpr std::array<double, 10> stirling_coeffs = {
    1.0 / 12.0,         -1.0 / 360.0,       1.0 / 1260.0,         -1.0 / 1680.0,
    1.0 / 1188.0,       -691.0 / 360360.0,  1.0 / 156.0,          -3617.0 / 122400.0,
    43867.0 / 244188.0, -174611.0 / 125400.0};

// B_{2k} / (2k) for k = 1..10, the asymptotic series of the digamma function.
constexpr std::array<double, 10> digamma_coeffs = {
    1.0 / 12.0,        -1.0 / 120.0,       1.0 / 252.0,       -1.0 / 240.0,
    1.0 / 132.0,       -691.0 / 32760.0,   1.0 / 12.0,        -3617.0 / 8160.0,
    43867.0 / 14364.0, -174611.0 / 6600.0};

// Weights of the Chebyshev-based acceleration for alternating series
// sum (-1)^k a_k. Returns c_k = (d_n - d_k) / d_n for k < n, computed from
// suffix sums so no cancellation occurs near k = n.
std::vector<double> alternating_weights(int n) {
  std::vector<double> t(n + 1);
  t[0] = 1.0;
  for (int i = 0; i < n; ++i) {
    const double num = 4.0 * (n + i) * static_cast<double>(n - i);
    const double den = (2.0 * i + 1.0) * (2.0 * i + 2.0);
    t[i + 1] = t[i] * num / den;
  }
  std::vector<double> c(n);
  double suffix = 0.0;
  for (int k = n; k >= 1; --k) {
    suffix += t[k];
    c[k - 1] = suffix;
  }
  const double total = suffix + t[0];
  for (double& w : c) w /= total;
  return c;
}

// Number of accelerated terms needed for about 1e-16 relative accuracy.
// The error of the scheme grows like exp(pi |t| / 2) against a decay of
// (3 + sqrt 8)^-n, hence the linear dependence on |Im s|.
int alternating_terms(Complex s) {
  const double t = std::fabs(s.imag());
  const double rate = std::log(3.0 + std::sqrt(8.0));
  const double need = 0.5 * pi * t + std::log(3.0 * (1.0 + 2.0 * t)) + 40.0;
  return static_cast<int>(std::ceil(need / rate)) + 8;
}

// sum_{k>=0} (-1)^k (1 + step k)^(-s), accelerated.
Complex accelerated_alternating(Complex s, double step) {
  const int n = alternating_terms(s);
  const std::vector<double> c = alternating_weights(n);
  Complex sum = 0.0;
  Complex comp = 0.0;  // Kahan compensation
  for (int k = 0; k < n; ++k) {
    const double base = 1.0 + step * k;
    Complex term = c[k] * std::exp(-s * std::log(base));
    if (k & 1) term = -term;
    const Complex y = term - comp;
    const Complex next = sum + y;
    comp = (next - sum) - y;
    sum = next;
  }
  return sum;
}

// Plain Euler-Maclaurin evaluation of zeta. Used where the eta-function
// route divides by something close to zero.
Complex zeta_euler_maclaurin(Complex s) {
  const BernoulliTable& bern = default_bernoulli_table();
  const int N = 30 + static_cast<int>(std::ceil(std::abs(s)));
  Complex sum = 0.0;
  for (int k = N - 1; k >= 1; --k) sum += std::exp(-s * std::log(static_cast<double>(k)));
  const double logN = std::log(static_cast<double>(N));
  const Complex Ns = std::exp(-s * logN);
  sum += Ns * static_cast<double>(N) / (s - 1.0) + 0.5 * Ns;
  // Rising factorial s (s+1) ... (s+2j-2) divided by (2j)!, times N^{-s-2j+1}.
  Complex rising = s;
  Complex power = Ns / static_cast<double>(N);
  double factorial = 2.0;
  for (int j = 1; 2 * j <= bern.max_index(); ++j) {
    const Complex term = bern.number(2 * j) / factorial * rising * power;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    rising *= (s + (2.0 * j - 1.0)) * (s + 2.0 * j);
    power /= static_cast<double>(N) * N;
    factorial *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
  }
  return sum;
}

}  // namespace

Complex sin_pi(Complex s) {
  const double a = s.real();
  const double b = s.imag();
  return {sin_pi_real(a) * std::cosh(pi * b), cos_pi_real(a) * std::sinh(pi * b)};
}

Complex cos_pi(Complex s) {
  const double a = s.real();
  const double b = s.imag();
  return {cos_pi_real(a) * std::cosh(pi * b), -sin_pi_real(a) * std::sinh(pi * b)};
}

Complex complex_gamma(Complex s) {
  require_not_gamma_pole(s, "gamma");
  if (s.real() < 0.5) {
    // Reflection; the Lanczos sum is only trustworthy on the right.
    return pi / (sin_pi(s) * lanczos_gamma(1.0 - s));
  }
  return lanczos_gamma(s);
}

Complex reciprocal_gamma(Complex s) {
  if (is_nonpositive_integer(s)) return 0.0;
  if (s.real() < 0.5) return sin_pi(s) * lanczos_gamma(1.0 - s) / pi;
  return 1.0 / lanczos_gamma(s);
}

Complex complex_log_gamma(Complex s) {
  require_not_gamma_pole(s, "log_gamma");
  // Shift to the right with log Gamma(z) = log Gamma(z + N) - sum log(z + k).
  // Each principal log only has a cut on (-inf, -k], so the result is the
  // principal branch of log Gamma itself.
  const double target = std::fabs(s.imag()) >= 15.0 ? 1.0 : 15.0;
  Complex z = s;
  Complex shift = 0.0;
  while (z.real() < target) {
    shift += std::log(z);
    z += 1.0;
  }
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex series = 0.0;
  Complex power = inv;
  for (double c : stirling_coeffs) {
    series += c * power;
    power *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * pi) + series - shift;
}

Complex digamma(Complex s) {
  require_not_gamma_pole(s, "digamma");
  if (s.real() < 0.5) {
    Complex cot;
    if (std::fabs(s.imag()) > 20.0) {
      cot = Complex(0.0, s.imag() > 0 ? -1.0 : 1.0);
    } else {
      cot = cos_pi(s) / sin_pi(s);
    }
    return digamma(1.0 - s) - pi * cot;
  }
  Complex z = s;
  Complex acc = 0.0;
  while (z.real() < 10.0 || std::abs(z) < 15.0) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  const Complex inv2 = 1.0 / (z * z);
  Complex series = 0.0;
  Complex power = inv2;
  for (double c : digamma_coeffs) {
    series += c * power;
    power *= inv2;
  }
  return acc + std::log(z) - 0.5 / z - series;
}

Complex riemann_zeta(Complex s) {
  if (s == Complex(1.0, 0.0)) throw PoleError("riemann_zeta: pole at s = 1");
  if (s.real() < -1.0) {
    const Complex one_minus = 1.0 - s;
    return std::exp(s * std::log(2.0) + (s - 1.0) * std::log(pi)) * sin_pi(0.5 * s) *
           complex_gamma(one_minus) * riemann_zeta(one_minus);
  }
  const Complex denom = 1.0 - std::exp((1.0 - s) * std::log(2.0));
  if (std::abs(denom) < 0.1) return zeta_euler_maclaurin(s);
  return accelerated_alternating(s, 1.0) / denom;
}

Complex dirichlet_beta(Complex s) {
  if (s.real() < -1.0) {
    const Complex one_minus = 1.0 - s;
    return std::exp(one_minus * std::log(2.0 / pi)) * cos_pi(0.5 * s) *
           complex_gamma(one_minus) * dirichlet_beta(one_minus);
  }
  return accelerated_alternating(s, 2.0);
}

// -- Bernoulli numbers ------------------------------------------------------

BernoulliTable::BernoulliTable(int max_index) {
  if (max_index < 1) throw RangeError("BernoulliTable: max_index must be >= 1");
  numbers_.assign(max_index + 1, 0.0);
  numbers_[0] = 1.0;
  numbers_[1] = -0.5;
  // Small even indices as exact fractions; everything after uses
  // B_{2k} = (-1)^{k+1} 2 (2k)! zeta(2k) / (2 pi)^{2k}, where zeta(2k) is a
  // handful of terms of the defining series once 2k >= 22.
  constexpr std::array<double, 11> small = {1.0,          1.0 / 6.0,      -1.0 / 30.0,
                                            1.0 / 42.0,   -1.0 / 30.0,    5.0 / 66.0,
                                            -691.0 / 2730.0, 7.0 / 6.0,   -3617.0 / 510.0,
                                            43867.0 / 798.0, -174611.0 / 330.0};
  for (int k = 1; 2 * k <= max_index; ++k) {
    if (k < static_cast<int>(small.size())) {
      numbers_[2 * k] = small[k];
      continue;
    }
    const int m = 2 * k;
    double zeta_m = 0.0;
    for (int j = 40; j >= 1; --j) zeta_m += std::pow(static_cast<double>(j), -m);
    double ratio = 1.0;  // (2k)! / (2 pi)^{2k}, built up factor by factor
    for (int i = 1; i <= m; ++i) ratio *= i / (2.0 * pi);
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    numbers_[m] = sign * 2.0 * ratio * zeta_m;
  }
}

double BernoulliTable::number(int k) const {
  if (k < 0 || k > max_index()) {
    throw RangeError("bernoulli_number: index " + std::to_string(k) + " outside table");
  }
  return numbers_[k];
}

double BernoulliTable::polynomial(int k, double x) const {
  if (k < 0 || k > max_index()) {
    throw RangeError("bernoulli_polynomial: index " + std::to_string(k) + " outside table");
  }
  if (k <= 12) {
    // Direct binomial sum, evaluated Horner style in x.
    double binom = 1.0;
    double acc = 0.0;
    for (int j = 0; j <= k; ++j) {
      acc = acc * x + binom * numbers_[j];
      binom = binom * (k - j) / (j + 1);
    }
    return acc;
  }
  // For larger k the binomial sum cancels badly; the Fourier series on
  // [0, 1] is absolutely convergent and well conditioned.
  double scale = 2.0;
  for (int i = 1; i <= k; ++i) scale *= i / (2.0 * pi);
  double sum = 0.0;
  for (int j = 60; j >= 1; --j) {
    sum += cos_pi_real(2.0 * j * x - 0.5 * k) * std::pow(static_cast<double>(j), -k);
  }
  return -scale * sum;
}

const BernoulliTable& default_bernoulli_table() {
  static const BernoulliTable table(64);
  return table;
}

}  // namespace tzeta
