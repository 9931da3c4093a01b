#include "tzeta/epstein.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tzeta/errors.hpp"
#include "tzeta/summation.hpp"

namespace tzeta {

namespace {

constexpr double pi = std::numbers::pi;
const double log_pi = std::log(pi);

bool is_nonpositive_integer(Complex s) {
  return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real());
}

// Above this height Gamma itself is within a few hundred orders of
// magnitude of under- or overflow, so products are formed in log space.
constexpr double log_space_height = 20.0;

std::string format_point(Complex s) {
  std::ostringstream os;
  os.precision(17);
  os << s.real() << (s.imag() < 0 ? "" : "+") << s.imag() << "i";
  return os.str();
}

}  // namespace

Complex completion_factor(Complex s) {
  if (std::fabs(s.imag()) <= log_space_height) return std::exp(-s * log_pi) * complex_gamma(s);
  return std::exp(-s * log_pi + complex_log_gamma(s));
}

Complex epstein_zeta_2d(Complex s) {
  if (s == Complex(1.0, 0.0)) throw PoleError("epstein_zeta_2d: pole at s = 1");
  return 4.0 * riemann_zeta(s) * dirichlet_beta(s);
}

DirectSum epstein_direct_sum(Complex s, int cutoff) {
  const double sigma = s.real();
  if (!(sigma > 1.0)) throw DomainError("epstein_direct_sum: the lattice sum needs Re s > 1");
  if (cutoff < 1) throw RangeError("epstein_direct_sum: cutoff must be at least 1");
  // The quarter lattice k1 >= 1, k2 >= 0 and its three rotations by 90
  // degrees tile Z^2 minus the origin.
  const std::size_t side = static_cast<std::size_t>(cutoff);
  const std::size_t count = side * (side + 1);
  auto term = [&](std::size_t idx) -> Complex {
    const double k1 = static_cast<double>(idx / (side + 1) + 1);
    const double k2 = static_cast<double>(idx % (side + 1));
    return std::exp(-s * std::log(k1 * k1 + k2 * k2));
  };
  const SumResult<Complex> quarter = deterministic_sum<Complex>(count, term);
  DirectSum out;
  out.value = 4.0 * quarter.value;
  const double K = static_cast<double>(cutoff);
  out.tail_bound = 8.0 * std::pow(K, 2.0 - 2.0 * sigma) / (2.0 * sigma - 2.0);
  return out;
}

Complex front_factor(int alpha, Complex s) {
  if (alpha < 1) throw RangeError("front_factor: alpha must be a positive integer");
  const Complex rest = static_cast<double>(alpha) - s;
  if (is_nonpositive_integer(s) || is_nonpositive_integer(rest)) return 0.0;
  const double gamma_alpha = std::tgamma(static_cast<double>(alpha));
  if (std::fabs(s.imag()) <= log_space_height) {
    return 2.0 * gamma_alpha * reciprocal_gamma(s) * reciprocal_gamma(rest);
  }
  return 2.0 * gamma_alpha * std::exp(-complex_log_gamma(s) - complex_log_gamma(rest));
}

Complex inverse_front_factor(int alpha, Complex s) {
  if (alpha < 1) throw RangeError("inverse_front_factor: alpha must be a positive integer");
  const Complex rest = static_cast<double>(alpha) - s;
  if (is_nonpositive_integer(s) || is_nonpositive_integer(rest)) {
    throw PoleError("inverse_front_factor: front factor vanishes at s = " + format_point(s));
  }
  const double gamma_alpha = std::tgamma(static_cast<double>(alpha));
  if (std::fabs(s.imag()) <= log_space_height) {
    return complex_gamma(s) * complex_gamma(rest) / (2.0 * gamma_alpha);
  }
  return std::exp(complex_log_gamma(s) + complex_log_gamma(rest)) / (2.0 * gamma_alpha);
}

Complex completed_zeta(Complex s) {
  if (s == Complex(0.0) || s == Complex(1.0)) {
    throw PoleError("completed_zeta: pole at s = " + format_point(s));
  }
  // Gamma has a pole where epstein_zeta_2d has a trivial zero; the
  // functional equation gives the finite value.
  if (is_nonpositive_integer(s)) return completed_zeta(1.0 - s);
  return completion_factor(s) * epstein_zeta_2d(s);
}

Complex correction_term(Complex s) {
  if (s == Complex(2.0)) throw PoleError("correction_term: pole at s = 2");
  if (is_nonpositive_integer(s)) throw PoleError("correction_term: Gamma pole at s = " + format_point(s));
  return (s / 3.0) * pi * pi * completion_factor(s) * epstein_zeta_2d(s - 1.0);
}

Complex correction_term_from_completed(Complex s) {
  return (s * (s - 1.0) * pi / 3.0) * completed_zeta(s - 1.0);
}

double riemann_hardy_function(double t) {
  const Complex s(0.5, t);
  const double phase = complex_log_gamma(Complex(0.25, 0.5 * t)).imag() - 0.5 * t * log_pi;
  return (std::polar(1.0, phase) * riemann_zeta(s)).real();
}

double beta_hardy_function(double t) {
  const Complex s(0.5, t);
  const double phase = complex_log_gamma(Complex(0.75, 0.5 * t)).imag() + 0.5 * t * std::log(4.0 / pi);
  return (std::polar(1.0, phase) * dirichlet_beta(s)).real();
}

const char* to_string(ZeroSource source) {
  return source == ZeroSource::RiemannFactor ? "riemann" : "beta";
}

namespace {

template <class F>
double bisect_sign_change(F&& f, double lo, double hi, double f_lo) {
  for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

ZeroScan find_critical_zeros(double t_min, double t_max, double step, int threads) {
  if (!(t_min > 0.0) || !(t_max > t_min)) {
    throw DomainError("find_critical_zeros: need 0 < t_min < t_max");
  }
  if (!(step > 0.0)) throw DomainError("find_critical_zeros: step must be positive");
  const double cells = std::ceil((t_max - t_min) / step);
  if (cells > 1e7) throw RangeError("find_critical_zeros: too many samples for this step");
  const std::size_t points = static_cast<std::size_t>(cells) + 1;

  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) grid[i] = std::min(t_max, t_min + static_cast<double>(i) * step);
  std::vector<double> riemann(points), beta(points);
  parallel_for(
      points,
      [&](std::size_t i) {
        riemann[i] = riemann_hardy_function(grid[i]);
        beta[i] = beta_hardy_function(grid[i]);
      },
      threads);

  ZeroScan out;
  auto collect = [&](const std::vector<double>& values, double (*fn)(double), ZeroSource source) {
    std::ptrdiff_t last_cell = -2;
    for (std::size_t i = 0; i + 1 < points; ++i) {
      const double a = values[i], b = values[i + 1];
      double t;
      if (a == 0.0) {
        t = grid[i];
      } else if ((a < 0.0) != (b < 0.0) && b != 0.0) {
        t = bisect_sign_change(fn, grid[i], grid[i + 1], a);
      } else {
        continue;
      }
      if (static_cast<std::ptrdiff_t>(i) == last_cell + 1) {
        std::ostringstream os;
        os << "step too coarse: " << to_string(source) << " factor changes sign in adjacent cells near t = "
           << grid[i];
        out.warnings.push_back(os.str());
      }
      last_cell = static_cast<std::ptrdiff_t>(i);
      out.zeros.push_back({t, source, std::abs(epstein_zeta_2d(Complex(0.5, t)))});
    }
    if (points > 1 && values[points - 1] == 0.0) {
      const double t = grid[points - 1];
      out.zeros.push_back({t, source, std::abs(epstein_zeta_2d(Complex(0.5, t)))});
    }
  };
  collect(riemann, &riemann_hardy_function, ZeroSource::RiemannFactor);
  collect(beta, &beta_hardy_function, ZeroSource::BetaFactor);
  std::stable_sort(out.zeros.begin(), out.zeros.end(),
                   [](const ZeroRecord& x, const ZeroRecord& y) { return x.t < y.t; });
  return out;
}

}  // namespace tzeta
