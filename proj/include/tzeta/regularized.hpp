#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "tzeta/quadrature.hpp"
#include "tzeta/special_functions.hpp"

namespace tzeta {

enum class Endpoint { Zero, Infinity };

/// coefficient * x^exponent * log(x)^log_power
struct AsymptoticTerm {
  Complex exponent;
  int log_power = 0;
  Complex coefficient{1.0, 0.0};

  Complex operator()(double x) const;
};

/// Finite asymptotic expansion of a function at 0 or at infinity, listed
/// from the most singular term onwards: increasing Re(exponent) at zero and
/// decreasing Re(exponent) at infinity.
struct AsymptoticDescriptor {
  Endpoint location = Endpoint::Infinity;
  std::vector<AsymptoticTerm> terms;

  Complex operator()(double x) const;
};

/// What the regularized integral needs to know about an integrand on (0, inf).
///
/// The descriptors must list every term that spoils integrability at that
/// end. The optional remainder callbacks return f minus the descriptor at
/// that end. When supplied they replace the naive subtraction, which loses
/// digits wherever the subtracted terms dominate.
struct IntegrandSpec {
  std::function<Complex(double)> evaluator;
  std::optional<AsymptoticDescriptor> at_zero;
  std::optional<AsymptoticDescriptor> at_infinity;
  std::function<Complex(double)> remainder_at_zero;
  std::function<Complex(double)> remainder_at_infinity;
};

/// Regularized integral of a single term over (0, 1] (Endpoint::Zero) or
/// [1, inf) (Endpoint::Infinity): the constant term of the primitive.
/// Over (0, 1] this is (-1)^k k! / (a+1)^{k+1}; over [1, inf) it is the
/// negative of that, and both vanish for a = -1.
Complex regularized_term_integral(const AsymptoticTerm& term, Endpoint side);

/// Regularized integral over (0, inf): split at 1, subtract the descriptor at
/// each end, integrate the remainders numerically (the tail through t = 1/x)
/// and add the regularized integrals of the subtracted terms back.
///
/// Throws DescriptorError when a descriptor is malformed, when a term has
/// Re(exponent) = -1 with a non-zero imaginary part (its primitive is a pure
/// oscillation without a constant term), or when probing the remainder shows
/// it is still not integrable.
QuadResult<Complex> regularized_integral(const IntegrandSpec& f, double tol = 1e-12);

/// f(x) -> f(lambda x), descriptors and remainders included.
IntegrandSpec rescale(const IntegrandSpec& f, double lambda);

/// Both sides of the scaling rule for regularized integrals,
///   reg-int f(lambda x) dx
///     = lambda^{-1} ( reg-int f + sum_k c^inf_k L^{k+1}/(k+1) - sum_k c^0_k L^{k+1}/(k+1) ),
/// with L = log(lambda) and c^inf_k, c^0_k the coefficients of x^{-1} log^k x
/// at infinity and at zero.
struct ScalingCheck {
  Complex lhs;
  Complex rhs;
};
ScalingCheck change_of_variables_check(const IntegrandSpec& f, double lambda, double tol = 1e-12);

/// Constant term of a function known only through samples (x, u(x)), fitted
/// by least squares against 1 and the descriptor's terms (their coefficients
/// are ignored, only exponents and log powers matter). Exponents that agree
/// to 1e-10 are merged first. Throws IllConditionedError when the scaled fit
/// matrix has condition number above 1e12.
Complex regularized_limit(const std::vector<std::pair<double, Complex>>& samples,
                          const AsymptoticDescriptor& descriptor);

}  // namespace tzeta
