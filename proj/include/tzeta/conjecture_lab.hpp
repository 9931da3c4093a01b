#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tzeta/special_functions.hpp"

namespace tzeta {

/// One computed value, in the shape the command line tool writes out.
/// `quantity` names what was computed (correction_ratio, rational_prefactor,
/// forward_shift, reflected_shift, discrete_ratio, xi_defect, ...).
struct ScanRecord {
  Complex s;
  std::string quantity;
  Complex value;
  std::optional<int> n;
  double error_estimate = 0.0;
  std::vector<std::pair<std::string, std::string>> meta;
};

/// Three algebraically equal ways of writing correction_term(1-s) / correction_term(s).
enum class RatioRoute {
  ShiftedZeta,     // (s(s-1)/pi^2) zeta(s+1) / zeta(s-1)
  ReflectedZeta,   // (pi^2/(s(s-1))) zeta(-s) / zeta(2-s)
  Direct,          // the quotient of the two correction terms
};

/// correction_term(1 - s) / correction_term(s), with zeta the torus Epstein
/// zeta. ZeroDenominatorError names the factor that vanished.
Complex correction_ratio(Complex s, RatioRoute route = RatioRoute::ShiftedZeta);

/// pi^2 / |s(s-1)|. PoleError at s = 0 and s = 1.
double rational_prefactor_modulus(Complex s);

/// d/da of rational_prefactor_modulus(a + ib)^2, up to the positive factor
/// pi^4 / |s(s-1)|^4: 2 (1 - 2a) (b^2 - a(1 - a)). For b^2 > 1/4 its sign is
/// that of 1/2 - a.
double rational_prefactor_slope_numerator(double a, double b);

/// |zeta(s+1) / zeta(s-1)|. ZeroDenominatorError when zeta(s-1) vanishes.
double forward_shift_modulus(Complex s);

/// |zeta(2-s) / zeta(-s)|, which equals forward_shift_modulus(1 - s).
/// ZeroDenominatorError when zeta(-s) vanishes.
double reflected_shift_modulus(Complex s);

/// |completed_zeta(s) - completed_zeta(1 - s)| / (1 + |completed_zeta(s)|).
double functional_equation_defect(Complex s);

struct MonotonicityScan {
  std::vector<ScanRecord> records;   // one correction_ratio record per grid point, grid order
  bool strictly_increasing = false;  // |ratio| rises by more than 1e-12 at every step
  std::optional<double> crossing;    // where |ratio| passes 1, linearly interpolated
  std::optional<std::size_t> crossing_cell;  // index i with |r_i| < 1 <= |r_{i+1}|
  bool exploratory = false;          // b <= 65, outside the range the argument covers
};

/// |correction_ratio(a + ib)| along the given increasing grid of a values.
/// Points are evaluated in parallel; records keep grid order.
MonotonicityScan monotonicity_scan(double b, const std::vector<double>& a_grid, int threads = 0);

/// |completed_discrete_zeta(1-s, n) / completed_discrete_zeta(s, n)| for
/// each n, with |ratio - 1| n^2 and |correction_ratio(s)| in the metadata.
/// Records for s within 0.05 of a zero of the Epstein zeta on the critical
/// line carry near_zero=<t>. Requires 0 < Re s < 1 and n increasing
/// geometrically.
std::vector<ScanRecord> discrete_ratio_study(Complex s, const std::vector<int>& n_list, double tol = 1e-12);

}  // namespace tzeta
