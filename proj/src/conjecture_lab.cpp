#include "tzeta/conjecture_lab.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "tzeta/epstein.hpp"
#include "tzeta/errors.hpp"
#include "tzeta/expansion.hpp"
#include "tzeta/summation.hpp"

namespace tzeta {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double monotonicity_slack = 1e-12;
constexpr double monotone_regime_height = 65.0;
constexpr double zero_tag_radius = 0.05;

bool is_nonpositive_integer(Complex s) {
  return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real());
}

std::string format_number(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::string format_point(Complex s) {
  return format_number(s.real()) + (s.imag() < 0 ? "" : "+") + format_number(s.imag()) + "i";
}

// The Epstein zeta as a denominator: its trivial zeros at the negative
// integers are exact, and a computed zero anywhere else is reported too.
Complex zeta_denominator(Complex w, const char* who, const char* factor) {
  const Complex value = is_nonpositive_integer(w) && w != Complex(0.0) ? Complex(0.0) : epstein_zeta_2d(w);
  if (value == Complex(0.0)) {
    throw ZeroDenominatorError(std::string(who) + ": " + factor + " vanishes at " + format_point(w));
  }
  return value;
}

void require_off_poles(Complex s, const char* who) {
  if (s == Complex(0.0) || s == Complex(1.0)) {
    throw ZeroDenominatorError(std::string(who) + ": s(s-1) vanishes at " + format_point(s));
  }
}

}  // namespace

Complex correction_ratio(Complex s, RatioRoute route) {
  constexpr const char* who = "correction_ratio";
  switch (route) {
    case RatioRoute::ShiftedZeta: {
      require_off_poles(s, who);
      const Complex below = zeta_denominator(s - 1.0, who, "zeta(s-1)");
      return (s * (s - 1.0) / (pi * pi)) * epstein_zeta_2d(s + 1.0) / below;
    }
    case RatioRoute::ReflectedZeta: {
      require_off_poles(s, who);
      const Complex below = zeta_denominator(2.0 - s, who, "zeta(2-s)");
      return (pi * pi / (s * (s - 1.0))) * epstein_zeta_2d(-s) / below;
    }
    case RatioRoute::Direct: {
      const Complex below = correction_term(s);
      if (below == Complex(0.0)) {
        throw ZeroDenominatorError(std::string(who) + ": correction term vanishes at " + format_point(s));
      }
      return correction_term(1.0 - s) / below;
    }
  }
  throw DomainError("correction_ratio: unknown route");
}

double rational_prefactor_modulus(Complex s) {
  if (s == Complex(0.0) || s == Complex(1.0)) {
    throw PoleError("rational_prefactor_modulus: pole at s = " + format_point(s));
  }
  return pi * pi / std::abs(s * (s - 1.0));
}

double rational_prefactor_slope_numerator(double a, double b) {
  return 2.0 * (1.0 - 2.0 * a) * (b * b - a * (1.0 - a));
}

double forward_shift_modulus(Complex s) {
  const Complex below = zeta_denominator(s - 1.0, "forward_shift_modulus", "zeta(s-1)");
  return std::abs(epstein_zeta_2d(s + 1.0) / below);
}

double reflected_shift_modulus(Complex s) {
  const Complex below = zeta_denominator(-s, "reflected_shift_modulus", "zeta(-s)");
  return std::abs(epstein_zeta_2d(2.0 - s) / below);
}

double functional_equation_defect(Complex s) {
  const Complex here = completed_zeta(s);
  return std::abs(here - completed_zeta(1.0 - s)) / (1.0 + std::abs(here));
}

MonotonicityScan monotonicity_scan(double b, const std::vector<double>& a_grid, int threads) {
  if (a_grid.size() < 2) throw DomainError("monotonicity_scan: need at least two grid points");
  for (std::size_t i = 1; i < a_grid.size(); ++i) {
    if (!(a_grid[i] > a_grid[i - 1])) throw DomainError("monotonicity_scan: grid must be strictly increasing");
  }
  MonotonicityScan out;
  out.exploratory = !(std::fabs(b) > monotone_regime_height);
  out.records.resize(a_grid.size());
  parallel_for(
      a_grid.size(),
      [&](std::size_t i) {
        const Complex s(a_grid[i], b);
        ScanRecord& r = out.records[i];
        r.s = s;
        r.quantity = "correction_ratio";
        r.value = correction_ratio(s);
        r.meta = {{"abs", format_number(std::abs(r.value))}};
        if (out.exploratory) r.meta.emplace_back("exploratory", "true");
      },
      threads);

  out.strictly_increasing = true;
  for (std::size_t i = 0; i + 1 < a_grid.size(); ++i) {
    const double here = std::abs(out.records[i].value);
    const double next = std::abs(out.records[i + 1].value);
    if (!(next > here + monotonicity_slack)) out.strictly_increasing = false;
    if (!out.crossing_cell && here < 1.0 && next >= 1.0) {
      out.crossing_cell = i;
      out.crossing = a_grid[i] + (1.0 - here) / (next - here) * (a_grid[i + 1] - a_grid[i]);
    }
  }
  return out;
}

namespace {

void require_geometric(const std::vector<int>& n_list, const char* who) {
  if (n_list.size() < 2) throw DomainError(std::string(who) + ": need at least two values of n");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 2) throw RangeError(std::string(who) + ": n must be at least 2");
    if (i >= 1 && n_list[i] <= n_list[i - 1]) throw DomainError(std::string(who) + ": n must increase");
    if (i >= 2) {
      const double r0 = static_cast<double>(n_list[i - 1]) / n_list[i - 2];
      const double r1 = static_cast<double>(n_list[i]) / n_list[i - 1];
      if (std::fabs(r1 - r0) > 1e-12 * r0) throw DomainError(std::string(who) + ": n values must be geometric");
    }
  }
}

// The critical-line zero of the Epstein zeta closest to s, if one lies within
// the tagging radius.
std::optional<double> nearby_critical_zero(Complex s) {
  const double height = std::fabs(s.imag());
  if (std::fabs(s.real() - 0.5) >= zero_tag_radius || height <= zero_tag_radius) return std::nullopt;
  const ZeroScan scan = find_critical_zeros(height - zero_tag_radius, height + zero_tag_radius, 0.005, 1);
  std::optional<double> best;
  double best_distance = zero_tag_radius;
  for (const ZeroRecord& z : scan.zeros) {
    const double distance = std::abs(Complex(s.real(), height) - Complex(0.5, z.t));
    if (distance < best_distance) {
      best_distance = distance;
      best = s.imag() < 0.0 ? -z.t : z.t;
    }
  }
  return best;
}

}  // namespace

std::vector<ScanRecord> discrete_ratio_study(Complex s, const std::vector<int>& n_list, double tol) {
  if (!(s.real() > 0.0 && s.real() < 1.0)) throw DomainError("discrete_ratio_study: needs 0 < Re s < 1");
  require_geometric(n_list, "discrete_ratio_study");
  const std::optional<double> zero = nearby_critical_zero(s);
  std::optional<double> limit;
  try {
    limit = std::abs(correction_ratio(s));
  } catch (const ZeroDenominatorError&) {
  }

  std::vector<ScanRecord> out;
  for (int n : n_list) {
    const Complex below = completed_discrete_zeta(s, n, tol);
    if (below == Complex(0.0)) {
      std::string message = "discrete_ratio_study: completed discrete zeta vanishes at " + format_point(s) +
                            ", n = " + std::to_string(n);
      if (zero) message += "; critical zero at t = " + format_number(*zero);
      throw ZeroDenominatorError(message);
    }
    const Complex ratio = completed_discrete_zeta(1.0 - s, n, tol) / below;
    ScanRecord r;
    r.s = s;
    r.quantity = "discrete_ratio";
    r.n = n;
    r.value = std::abs(ratio);
    const double defect = std::fabs(std::abs(ratio) - 1.0);
    r.meta = {{"defect_n2", format_number(defect * n * n)}};
    if (limit) r.meta.emplace_back("correction_ratio_abs", format_number(*limit));
    if (zero) r.meta.emplace_back("near_zero", format_number(*zero));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace tzeta
