#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tzeta/quadrature.hpp"
#include "tzeta/special_functions.hpp"
#include "tzeta/torus_lattice.hpp"

namespace tzeta {

// Large-n behaviour of the discrete spectral zeta in the critical strip:
//
//   zeta(Delta_n, s) = V(s) ( a(s) n^{2-2s} + b0(s) + b1(s) n^{-2} ) + O(n^{-4}),
//
// with V = front_factor(2, s). The functions below compute a, b0 and b1 for
// both stencils.

/// Integral of (sin^2(pi x) + sin^2(pi y))^{-s} pi^{2s} over the unit
/// square, with the extra -(2/3) sin^2 sin^2 term for the nine point stencil.
/// This equals V(s) a(s). It is evaluated in polar-like coordinates
/// y = x t on the triangle 0 < y < x < 1/2, where the origin singularity
/// reduces to the factor x^{1-2s} and nested tanh-sinh rules apply.
QuadResult<Complex> leading_integral(Complex s, Stencil v, double tol = 1e-12);

/// a(s) = leading_integral / V(s). Requires 0 < Re s < 1 (DomainError
/// otherwise). Results are cached per (s, stencil, tol); the cache may be
/// read from several threads at once.
Complex leading_coefficient(Complex s, Stencil v, double tol = 1e-12);
void clear_leading_coefficient_cache();
std::size_t leading_coefficient_cache_size();

/// a(s) straight from its definition as a threefold integral,
///   int_0^inf z^{3-2s} int int_{[0,1]^2} (symbol(x, y)/pi^2 + z^2)^{-2} dx dy dz,
/// with no change of order. Slow; kept as an independent check.
Complex leading_coefficient_by_resolvent(Complex s, Stencil v, double tol = 1e-9);

/// b0(s) = epstein_zeta_2d(s) / V(s), the same for both stencils.
Complex constant_coefficient(Complex s);

/// b1(s). For the nine point stencil (s pi^2/3) epstein_zeta_2d(s-1) / V(s).
/// The five point stencil subtracts 4 pi^2/(2-s) angular_lattice_sum(s).
Complex second_coefficient(Complex s, Stencil v, double tol = 1e-12);

/// Angular lattice sum
///
///   A(s) = reg-int_0^inf z^{5-2s} sum_{k in Z^2} k1^2 k2^2 / (k1^2 + k2^2 + z^2)^4 dz.
///
/// The lattice sum tends to pi/(24 z^2) at large z; that term integrates to
/// zero in the regularized sense, and what is left decays exponentially. The
/// lattice sum is evaluated by Poisson summation in k2 (modified Bessel
/// functions) so no lattice cutoff is involved. Defined for 0 < Re s < 2.
Complex angular_lattice_sum(Complex s, double tol = 1e-12);

/// The same A(s) through a Mellin transform of theta series,
/// A = Gamma(3-s)/12 * reg-int t^s theta2(t)^2 dt, theta2 = sum k^2 e^{-t k^2}.
/// Independent of angular_lattice_sum apart from the quadrature routine.
Complex angular_lattice_sum_theta(Complex s, double tol = 1e-12);

/// sum_{k in Z^2} k1^2 k2^2 / (k1^2 + k2^2 + z^2)^4 minus pi/(24 z^2), for z > 0.
double angular_profile(double z);

/// Tr(Delta + z^2)^{-alpha} = sum_{k in Z^2} (|k|^2 + z^2)^{-alpha} on the
/// continuous unit torus, for alpha >= 2 and z > 0.
///
/// Below z = 1 the lattice is summed over max(|k1|, |k2|) <= cutoff and the
/// part outside is replaced by its integral, which is accurate to about
/// cutoff^{-2 alpha}. From z = 1 on, the dual (Poisson) sum is used, which
/// converges exponentially. `part` selects whether the zero mode z^{-2 alpha}
/// or the large-z term pi z^{2 - 2 alpha}/(alpha - 1) is left out, so that
/// callers subtracting them do not lose digits.
enum class TracePart { Full, WithoutZeroMode, WithoutVolumeTerm };
double continuous_resolvent_trace(double z, int alpha, int cutoff = 64, TracePart part = TracePart::Full);

/// The partial fraction identity used to reduce the quartic weights to
/// resolvent powers: first the direct value of
/// (k1^4 + k2^4) / (k1^2 + k2^2 + z^2)^4, then the decomposition
/// r^{-4} - 2 z^2 r^{-6} + z^4 r^{-8} - 2 k1^2 k2^2 r^{-8} with r^2 = k1^2 + k2^2 + z^2.
std::pair<double, double> quartic_partial_fractions(double k1, double k2, double z);
/// The same for (k1^2 + k2^2)^2 / r^8 = r^{-4} - 2 z^2 r^{-6} + z^4 r^{-8}.
std::pair<double, double> radial_partial_fractions(double k1, double k2, double z);

/// Both sides of the Euler-Maclaurin formula for sum_{i=0}^{n} u(i)
/// (or sum_{i=0}^{n-1} when `exclude_last` is set). `derivative(k, x)` must
/// return the k-th derivative of u, k = 0 being u itself, for k up to 2M+1.
/// The remainder integral uses the periodic Bernoulli polynomial B_{2M+1}
/// and is integrated one unit interval at a time.
struct EulerMaclaurinCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double integral = 0.0;   // int_0^n u
  double boundary = 0.0;   // the u(0), u(n) term
  double corrections = 0.0;// Bernoulli number terms
  double remainder = 0.0;  // Bernoulli polynomial integral
};
EulerMaclaurinCheck euler_maclaurin_check(int M, int n, const std::function<double(int, double)>& derivative,
                                          bool exclude_last = false);

/// pi^{-s} Gamma(s) ( zeta(nine-point Delta_n, s) - V(s) a~(s) n^{2-2s} ). Tends to
/// completed_zeta(s) + correction_term(s) n^{-2} for 0 < Re s < 1.
Complex completed_discrete_zeta(Complex s, int n, double tol = 1e-12);

/// Circle analogue: the n-point discrete Laplacian on the circle satisfies
/// zeta(L_n, s) = c(s) n^{1-2s} + 2 zeta(2s) + (2s/3) pi^2 zeta(2s-2) n^{-2} + o(n^{-2})
/// with c(s) = pi^{2s-1/2} Gamma(1/2-s)/Gamma(1-s). Returns the difference.
Complex circle_leading_coefficient(Complex s);
Complex circle_expansion_residual(Complex s, int n);

/// Residual study of the expansion above.
struct ExpansionResult {
  Complex s;
  Stencil stencil = Stencil::NinePoint;
  int orders_included = 0;       // 0: through b0, 1: through b1 n^{-2}
  Complex leading;               // a(s); zero when Re s >= 1 (not subtracted)
  Complex constant;              // b0(s)
  Complex second;                // b1(s)
  Complex front;                 // V(s)
  std::vector<std::pair<int, double>> residuals;
  std::vector<double> noise;     // estimated rounding and quadrature error per n
  double slope = 0.0;            // least-squares slope of log residual vs log n
  std::string convention;        // how b1 enters, for the record
};

/// Subtract the expansion through `orders_included` (0 or 1) from the
/// discrete zeta for every n in `n_list` (at least three values, forming a
/// geometric sequence) and fit the decay rate. For Re s >= 1 the n^{2-2s}
/// term is not subtracted: its coefficient is only defined in the strip,
/// and there it decays on its own. SignalLostError when a residual is
/// within 10x of its noise estimate; fitting such points would only
/// measure rounding error.
ExpansionResult residual_order(Complex s, Stencil v, const std::vector<int>& n_list, int orders_included,
                               double tol = 1e-12);

/// Least-squares slope of log(value) against log(n).
double log_log_slope(const std::vector<std::pair<int, double>>& points);

}  // namespace tzeta
