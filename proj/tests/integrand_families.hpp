#pragma once

#include <cmath>
#include <random>

#include "tzeta/regularized.hpp"

namespace tzeta::testing {

inline IntegrandSpec pure_power(double a) {
  IntegrandSpec f;
  f.evaluator = [a](double x) { return Complex(std::pow(x, a)); };
  f.at_zero = AsymptoticDescriptor{Endpoint::Zero, {{a, 0, 1.0}}};
  f.at_infinity = AsymptoticDescriptor{Endpoint::Infinity, {{a, 0, 1.0}}};
  return f;
}

// Randomized family with x^-1 and x^-1 log x terms at both ends plus a
// complex power at zero. Every remainder is supplied in a stable form.
inline IntegrandSpec scaling_family(std::mt19937& rng) {
  std::uniform_real_distribution<double> coef(-1.5, 1.5);
  std::uniform_real_distribution<double> gre(-1.9, -1.1), gim(-2.0, 2.0);
  const Complex c1(coef(rng), coef(rng)), c2(coef(rng), coef(rng)), c3(coef(rng), coef(rng));
  const Complex c4(coef(rng), coef(rng)), c5(coef(rng), coef(rng));
  const Complex gamma_exp(gre(rng), gim(rng));
  auto xpow = [gamma_exp](double x) { return std::exp(gamma_exp * std::log(x)); };
  IntegrandSpec f;
  f.evaluator = [=](double x) {
    const double lx = std::log(x);
    return c1 / (1.0 + x) + c2 * std::exp(-x) / x + c3 * xpow(x) * std::exp(-x) +
           c4 * lx * std::exp(-x) / x + c5 * lx / (1.0 + x);
  };
  f.at_zero = AsymptoticDescriptor{Endpoint::Zero, {{gamma_exp, 0, c3}, {-1.0, 1, c4}, {-1.0, 0, c2}}};
  f.at_infinity = AsymptoticDescriptor{Endpoint::Infinity, {{-1.0, 1, c5}, {-1.0, 0, c1}}};
  f.remainder_at_zero = [=](double x) {
    const double lx = std::log(x);
    // (e^-x - 1)/x stays bounded, and x^(g+1) cannot overflow for Re g > -2.
    const double em1_over_x = std::expm1(-x) / x;
    return c1 / (1.0 + x) + c2 * em1_over_x + c3 * std::exp((gamma_exp + 1.0) * lx) * em1_over_x + c4 * lx * em1_over_x +
           c5 * lx / (1.0 + x);
  };
  f.remainder_at_infinity = [=](double x) {
    const double lx = std::log(x);
    const double tail = -1.0 / (x * (1.0 + x));
    return c1 * tail + c2 * std::exp(-x) / x + c3 * xpow(x) * std::exp(-x) + c4 * lx * std::exp(-x) / x +
           c5 * lx * tail;
  };
  return f;
}

}  // namespace tzeta::testing
