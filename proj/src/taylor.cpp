#include "tzeta/taylor.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "tzeta/errors.hpp"

namespace tzeta {

namespace {

using wide = __int128;

wide gcd_wide(wide a, wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational make_reduced(wide num, wide den) {
  if (den == 0) throw ZeroDenominatorError("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const wide g = gcd_wide(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  constexpr wide lo = std::numeric_limits<std::int64_t>::min();
  constexpr wide hi = std::numeric_limits<std::int64_t>::max();
  if (num < lo || num > hi || den > hi) throw RangeError("Rational: result does not fit in 64 bits");
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  if (den_ == 0) throw ZeroDenominatorError("Rational: zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  const std::int64_t g = std::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

std::string Rational::str() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator+(const Rational& o) const {
  return make_reduced(wide(num_) * o.den_ + wide(o.num_) * den_, wide(den_) * o.den_);
}
Rational Rational::operator-(const Rational& o) const {
  return make_reduced(wide(num_) * o.den_ - wide(o.num_) * den_, wide(den_) * o.den_);
}
Rational Rational::operator*(const Rational& o) const {
  return make_reduced(wide(num_) * o.num_, wide(den_) * o.den_);
}
Rational Rational::operator/(const Rational& o) const {
  return make_reduced(wide(num_) * o.den_, wide(den_) * o.num_);
}

double TaylorCoefficient::evaluate(double x, double y) const {
  double acc = 0.0;
  for (const auto& [deg, c] : polynomial) acc += c.to_double() * std::pow(x, deg.first) * std::pow(y, deg.second);
  return acc * std::pow(std::numbers::pi, 2 * m);
}

namespace {

void add_term(ExactPolynomial& p, std::pair<int, int> deg, const Rational& c) {
  if (c == Rational(0)) return;
  auto it = p.find(deg);
  if (it == p.end()) {
    p.emplace(deg, c);
    return;
  }
  it->second += c;
  if (it->second == Rational(0)) p.erase(it);
}

ExactPolynomial multiply(const ExactPolynomial& a, const ExactPolynomial& b) {
  ExactPolynomial out;
  for (const auto& [da, ca] : a)
    for (const auto& [db, cb] : b) add_term(out, {da.first + db.first, da.second + db.second}, ca * cb);
  return out;
}

// Rational part of the k-th sine coefficient: (n^2/pi^2) sin^2(pi x / n) is
// sum_k sine_coefficient(k) pi^{2k-2} x^{2k} n^{2-2k}, with
// sine_coefficient(k) = (-1)^{k-1} 2^{2k-1} / (2k)!.
Rational sine_coefficient(int k) {
  std::int64_t factorial = 1;
  for (int i = 2; i <= 2 * k; ++i) factorial *= i;
  const std::int64_t power = std::int64_t{1} << (2 * k - 1);
  return Rational(k % 2 == 1 ? power : -power, factorial);
}

// The perturbation d(x, y, n) = r^2 - f as a series in n^{-2}: entry p is
// the rational part of the n^{-2p} coefficient (its pi power is pi^{2p}).
std::vector<ExactPolynomial> perturbation_series(int order, Stencil v) {
  std::vector<ExactPolynomial> d(order + 1);
  for (int p = 1; p <= order; ++p) {
    const Rational c = sine_coefficient(p + 1);
    add_term(d[p], {2 * p + 2, 0}, Rational(0) - c);
    add_term(d[p], {0, 2 * p + 2}, Rational(0) - c);
  }
  if (v == Stencil::NinePoint) {
    // (2/3)(n^2/pi^2) sin^2 sin^2 contributes (2/3) c_k c_l x^{2k} y^{2l} at
    // order p = k + l - 1.
    for (int k = 1; k <= order; ++k) {
      for (int l = 1; k + l - 1 <= order; ++l) {
        const int p = k + l - 1;
        add_term(d[p], {2 * k, 2 * l}, Rational(2, 3) * sine_coefficient(k) * sine_coefficient(l));
      }
    }
  }
  return d;
}

// Truncated product of two series in n^{-2}.
std::vector<ExactPolynomial> series_product(const std::vector<ExactPolynomial>& a,
                                            const std::vector<ExactPolynomial>& b) {
  const std::size_t order = a.size() - 1;
  std::vector<ExactPolynomial> out(order + 1);
  for (std::size_t i = 0; i <= order; ++i) {
    if (a[i].empty()) continue;
    for (std::size_t k = 0; i + k <= order; ++k) {
      if (b[k].empty()) continue;
      for (const auto& [deg, c] : multiply(a[i], b[k])) add_term(out[i + k], deg, c);
    }
  }
  return out;
}

// C(alpha + j - 1, j), the coefficient of t^j in (1 - t)^{-alpha}.
Rational rising_binomial(int alpha, int j) {
  Rational out(1);
  for (int i = 1; i <= j; ++i) out = out * Rational(alpha + i - 1, i);
  return out;
}

}  // namespace

std::vector<TaylorCoefficient> taylor_coefficients(int m, Stencil v, int alpha) {
  if (m < 0 || m > max_taylor_order) {
    throw RangeError("taylor_coefficients: m must lie in [0, " + std::to_string(max_taylor_order) + "]");
  }
  if (alpha < 1) throw RangeError("taylor_coefficients: alpha must be positive");
  const std::vector<ExactPolynomial> d = perturbation_series(m, v);
  std::vector<ExactPolynomial> power(m + 1);
  add_term(power[0], {0, 0}, Rational(1));

  std::vector<TaylorCoefficient> out;
  for (int j = 0; j <= m; ++j) {
    if (j > 0) power = series_product(power, d);
    TaylorCoefficient t;
    t.m = m;
    t.j = j;
    t.stencil = v;
    const Rational binom = rising_binomial(alpha, j);
    for (const auto& [deg, c] : power[m]) add_term(t.polynomial, deg, binom * c);
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<std::pair<int, double>> series_truncation_check(Stencil v, int N, double x, double y, double z,
                                                            const std::vector<int>& n_list, int alpha) {
  if (N < 1 || N > max_taylor_order + 1) throw RangeError("series_truncation_check: N out of range");
  const double r2 = x * x + y * y + z * z;
  if (!(r2 > 0.0)) throw DomainError("series_truncation_check: sample point must be non-zero");
  std::vector<std::vector<TaylorCoefficient>> table;
  for (int m = 0; m < N; ++m) table.push_back(taylor_coefficients(m, v, alpha));

  constexpr double pi = std::numbers::pi;
  std::vector<std::pair<int, double>> out;
  for (int n : n_list) {
    if (n < 1) throw RangeError("series_truncation_check: n must be positive");
    const double scale = static_cast<double>(n) / pi;
    const double sx = std::sin(pi * x / n), sy = std::sin(pi * y / n);
    double f = scale * scale * (sx * sx + sy * sy) + z * z;
    if (v == Stencil::NinePoint) f -= (2.0 / 3.0) * scale * scale * sx * sx * sy * sy;
    double series = 0.0;
    for (int m = 0; m < N; ++m) {
      double inner = 0.0;
      for (const TaylorCoefficient& t : table[m]) inner += t.evaluate(x, y) / std::pow(r2, alpha + t.j);
      series += inner * std::pow(static_cast<double>(n), -2 * m);
    }
    out.emplace_back(n, std::fabs(std::pow(f, -alpha) - series));
  }
  return out;
}

}  // namespace tzeta
