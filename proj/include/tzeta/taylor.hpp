#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tzeta/torus_lattice.hpp"

namespace tzeta {

/// Reduced fraction with a positive denominator. Arithmetic is carried out
/// in 128 bits and throws RangeError if a reduced result no longer fits in
/// 64 bits, so a wrong answer is never returned silently.
class Rational {
 public:
  Rational(std::int64_t num = 0, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }

 private:
  std::int64_t num_;
  std::int64_t den_;
};

/// Polynomial in x and y with exact rational coefficients, keyed by the
/// exponent pair (deg_x, deg_y). Zero coefficients are never stored.
using ExactPolynomial = std::map<std::pair<int, int>, Rational>;

/// One coefficient polynomial of the expansion
///
///   f(x, y, n, z)^{-alpha} = sum_m n^{-2m} sum_j F_{m,j}(x, y) / (x^2 + y^2 + z^2)^{alpha + j},
///
/// where f = (n^2/pi^2)(sin^2(pi x/n) + sin^2(pi y/n)) + z^2 for the five
/// point stencil, with the extra term -(2/3)(n^2/pi^2) sin^2(pi x/n) sin^2(pi y/n)
/// for the nine point one. F_{m,j} is always pi^{2m} times a rational
/// polynomial; `polynomial` holds that rational part.
struct TaylorCoefficient {
  int m = 0;
  int j = 0;
  Stencil stencil = Stencil::FivePoint;
  ExactPolynomial polynomial;

  double evaluate(double x, double y) const;  // pi^{2m} included
  int total_degree() const { return 2 * m + 2 * j; }
};

/// Largest m accepted by taylor_coefficients. Beyond it the exact
/// coefficients stop fitting in 64-bit fractions.
inline constexpr int max_taylor_order = 6;

/// F_{m,0}, ..., F_{m,m} for exponent alpha (2 on the two-dimensional
/// torus). RangeError for m outside [0, max_taylor_order] or alpha < 1.
std::vector<TaylorCoefficient> taylor_coefficients(int m, Stencil v, int alpha = 2);

/// |f^{-alpha} - sum_{m<N} n^{-2m} sum_j F_{m,j} / r^{2 alpha + 2 j}| at one
/// sample point for each n, which should fall off like n^{-2N}.
std::vector<std::pair<int, double>> series_truncation_check(Stencil v, int N, double x, double y, double z,
                                                            const std::vector<int>& n_list, int alpha = 2);

}  // namespace tzeta
