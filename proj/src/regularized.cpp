#include "tzeta/regularized.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <sstream>

#include "tzeta/errors.hpp"

namespace tzeta {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

std::string describe(const AsymptoticTerm& t) {
  std::ostringstream os;
  os << "x^(" << t.exponent.real() << (t.exponent.imag() < 0 ? "" : "+") << t.exponent.imag()
     << "i) log^" << t.log_power;
  return os.str();
}

void validate(const AsymptoticDescriptor& d, Endpoint expected) {
  if (d.location != expected) {
    throw DescriptorError("descriptor attached to the wrong endpoint");
  }
  for (std::size_t i = 0; i < d.terms.size(); ++i) {
    const AsymptoticTerm& t = d.terms[i];
    if (t.log_power < 0) throw DescriptorError("negative log power in " + describe(t));
    if (std::fabs(t.exponent.real() + 1.0) < 1e-12 && t.exponent.imag() != 0.0) {
      // The primitive x^{i b} / (i b) only oscillates; there is no constant
      // term to keep, so we refuse rather than pick one.
      throw DescriptorError("term " + describe(t) + " integrates to a pure oscillation");
    }
    if (i == 0) continue;
    const double prev = d.terms[i - 1].exponent.real();
    const double cur = t.exponent.real();
    const bool ordered = expected == Endpoint::Zero ? cur >= prev : cur <= prev;
    if (!ordered) {
      throw DescriptorError("descriptor terms are not ordered from the most singular one");
    }
  }
}

// f minus the descriptor, with results at the rounding level of the
// subtraction snapped to zero. Without the snap, noise of size
// eps * |x^a| near a strong singularity would itself be non-integrable.
std::function<Complex(double)> remainder_of(const IntegrandSpec& spec,
                                            const std::optional<AsymptoticDescriptor>& desc,
                                            const std::function<Complex(double)>& exact) {
  if (!desc || desc->terms.empty()) return spec.evaluator;
  if (exact) return exact;
  return [evaluator = spec.evaluator, terms = desc->terms](double x) -> Complex {
    const Complex fx = evaluator(x);
    const double lx = std::fabs(std::log(x));
    Complex sub = 0.0;
    double scale = std::abs(fx);
    for (const AsymptoticTerm& t : terms) {
      const Complex v = t(x);
      sub += v;
      // x^a = exp(a log x) carries a relative error of about |a log x| eps.
      scale += std::abs(v) * (2.0 + std::abs(t.exponent) * lx + t.log_power);
    }
    // Where f or its terms overflow (only at the extreme quadrature nodes,
    // whose weights are below 1e-250) the remainder of an integrable
    // function contributes nothing, so it is dropped as well.
    if (!std::isfinite(scale)) return 0.0;
    const Complex r = fx - sub;
    if (std::abs(r) <= 64.0 * eps * scale) return 0.0;
    return r;
  };
}

// Estimate the local power of the remainder from two probes and make sure it
// is integrable at that end.
void probe_integrability(const std::function<Complex(double)>& r, Endpoint side) {
  const double x1 = side == Endpoint::Zero ? 1e-6 : 1e6;
  const double x2 = side == Endpoint::Zero ? 1e-8 : 1e8;
  const double r1 = std::abs(r(x1));
  const double r2 = std::abs(r(x2));
  if (!std::isfinite(r1) || !std::isfinite(r2)) {
    throw DescriptorError("remainder is not finite near the endpoint");
  }
  if (r1 == 0.0 || r2 == 0.0) return;
  const double power = std::log(r2 / r1) / std::log(x2 / x1);
  const bool ok = side == Endpoint::Zero ? power > -0.98 : power < -1.02;
  if (!ok) {
    std::ostringstream os;
    os << "remainder near " << (side == Endpoint::Zero ? "zero" : "infinity")
       << " behaves like x^" << power << ", which is not integrable; the descriptor is missing terms";
    throw DescriptorError(os.str());
  }
}

}  // namespace

Complex AsymptoticTerm::operator()(double x) const {
  const double lx = std::log(x);
  Complex v = coefficient * std::exp(exponent * lx);
  for (int k = 0; k < log_power; ++k) v *= lx;
  return v;
}

Complex AsymptoticDescriptor::operator()(double x) const {
  Complex acc = 0.0;
  for (const AsymptoticTerm& t : terms) acc += t(x);
  return acc;
}

Complex regularized_term_integral(const AsymptoticTerm& term, Endpoint side) {
  const Complex a1 = term.exponent + 1.0;
  if (std::abs(a1) == 0.0) return 0.0;
  double factorial = 1.0;
  for (int i = 2; i <= term.log_power; ++i) factorial *= i;
  const double sign = (term.log_power % 2 == 0) ? 1.0 : -1.0;
  const Complex on_unit = sign * factorial / std::pow(a1, term.log_power + 1);
  return term.coefficient * (side == Endpoint::Zero ? on_unit : -on_unit);
}

QuadResult<Complex> regularized_integral(const IntegrandSpec& spec, double tol) {
  if (!spec.evaluator) throw DescriptorError("integrand has no evaluator");
  if (spec.at_zero) validate(*spec.at_zero, Endpoint::Zero);
  if (spec.at_infinity) validate(*spec.at_infinity, Endpoint::Infinity);

  const auto near = remainder_of(spec, spec.at_zero, spec.remainder_at_zero);
  const auto far = remainder_of(spec, spec.at_infinity, spec.remainder_at_infinity);
  probe_integrability(near, Endpoint::Zero);
  probe_integrability(far, Endpoint::Infinity);

  const QuadResult<Complex> inner = quad_finite(near, 0.0, 1.0, 0.5 * tol);
  // dx = dt / t^2 with x = 1/t. Multiplying by x twice, instead of dividing
  // by t^2, keeps the product finite at the tiny t the rule samples.
  auto tail = [&far](double t) -> Complex {
    const double x = 1.0 / t;
    const Complex v = far(x);
    if (v == Complex(0.0)) return v;
    return (v * x) * x;
  };
  const QuadResult<Complex> outer = quad_finite(tail, 0.0, 1.0, 0.5 * tol);

  Complex constants = 0.0;
  if (spec.at_zero)
    for (const AsymptoticTerm& t : spec.at_zero->terms) constants += regularized_term_integral(t, Endpoint::Zero);
  if (spec.at_infinity)
    for (const AsymptoticTerm& t : spec.at_infinity->terms)
      constants += regularized_term_integral(t, Endpoint::Infinity);

  return {inner.value + outer.value + constants, inner.error + outer.error,
          std::max(inner.levels, outer.levels)};
}

namespace {

// c x^a log^k x at lambda x, rewritten as a sum of c' x^a log^j x.
AsymptoticDescriptor rescale_descriptor(const AsymptoticDescriptor& d, double lambda) {
  AsymptoticDescriptor out;
  out.location = d.location;
  const double L = std::log(lambda);
  for (const AsymptoticTerm& t : d.terms) {
    const Complex base = t.coefficient * std::exp(t.exponent * L);
    // Highest log power first keeps the list ordered within equal exponents.
    double binom = 1.0;  // C(k, j) for j = k, k-1, ...
    for (int j = t.log_power; j >= 0; --j) {
      const int missing = t.log_power - j;
      AsymptoticTerm piece{t.exponent, j, base * binom * std::pow(L, missing)};
      if (j == t.log_power || piece.coefficient != Complex(0.0)) out.terms.push_back(piece);
      binom = binom * j / (missing + 1);
    }
  }
  return out;
}

Complex inverse_x_log_sum(const std::optional<AsymptoticDescriptor>& d, double L) {
  Complex acc = 0.0;
  if (!d) return acc;
  for (const AsymptoticTerm& t : d->terms) {
    if (std::abs(t.exponent + 1.0) != 0.0) continue;
    const int k = t.log_power;
    acc += t.coefficient * std::pow(L, k + 1) / static_cast<double>(k + 1);
  }
  return acc;
}

}  // namespace

IntegrandSpec rescale(const IntegrandSpec& f, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("rescale: lambda must be positive");
  IntegrandSpec g;
  g.evaluator = [inner = f.evaluator, lambda](double x) { return inner(lambda * x); };
  if (f.at_zero) g.at_zero = rescale_descriptor(*f.at_zero, lambda);
  if (f.at_infinity) g.at_infinity = rescale_descriptor(*f.at_infinity, lambda);
  if (f.remainder_at_zero)
    g.remainder_at_zero = [inner = f.remainder_at_zero, lambda](double x) { return inner(lambda * x); };
  if (f.remainder_at_infinity)
    g.remainder_at_infinity = [inner = f.remainder_at_infinity, lambda](double x) {
      return inner(lambda * x);
    };
  return g;
}

ScalingCheck change_of_variables_check(const IntegrandSpec& f, double lambda, double tol) {
  if (!(lambda > 0.0)) throw DomainError("change_of_variables_check: lambda must be positive");
  const Complex base = regularized_integral(f, tol).value;
  const double L = std::log(lambda);
  ScalingCheck out;
  out.lhs = regularized_integral(rescale(f, lambda), tol).value;
  out.rhs = (base + inverse_x_log_sum(f.at_infinity, L) - inverse_x_log_sum(f.at_zero, L)) / lambda;
  return out;
}

Complex regularized_limit(const std::vector<std::pair<double, Complex>>& samples,
                          const AsymptoticDescriptor& descriptor) {
  // Merge near-duplicate exponents; they would make the fit singular.
  std::vector<AsymptoticTerm> basis;
  for (const AsymptoticTerm& t : descriptor.terms) {
    if (t.exponent.real() == 0.0 && t.exponent.imag() != 0.0) {
      throw DescriptorError("term " + describe(t) + " oscillates without decay; no constant term to extract");
    }
    if (t.exponent == Complex(0.0) && t.log_power == 0) continue;  // the constant itself
    bool merged = false;
    for (const AsymptoticTerm& b : basis) {
      if (b.log_power == t.log_power && std::abs(b.exponent - t.exponent) < 1e-10) merged = true;
    }
    if (!merged) basis.push_back({t.exponent, t.log_power, 1.0});
  }
  const Eigen::Index m = static_cast<Eigen::Index>(samples.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(basis.size()) + 1;
  if (m < cols) {
    throw DomainError("regularized_limit: need at least " + std::to_string(cols) + " samples");
  }
  Eigen::MatrixXcd A(m, cols);
  Eigen::VectorXcd rhs(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double x = samples[i].first;
    if (!(x > 0.0)) throw DomainError("regularized_limit: sample abscissae must be positive");
    A(i, 0) = 1.0;
    for (std::size_t j = 0; j < basis.size(); ++j) A(i, j + 1) = basis[j](x);
    rhs(i) = samples[i].second;
  }
  const Eigen::VectorXd norms = A.colwise().norm().transpose();
  for (Eigen::Index j = 0; j < cols; ++j) A.col(j) /= norms(j);

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd sv = svd.singularValues();
  const double cond = sv(0) / sv(sv.size() - 1);
  if (!(cond < 1e12)) {
    throw IllConditionedError("regularized_limit: fit matrix condition number " + std::to_string(cond));
  }
  const Eigen::VectorXcd coef = svd.solve(rhs);
  return coef(0) / norms(0);
}

}  // namespace tzeta
