#pragma once

#include <complex>
#include <vector>

namespace tzeta {

using Complex = std::complex<double>;

// Gamma family. All of these throw PoleError on s = 0, -1, -2, ...
Complex complex_gamma(Complex s);
// Principal branch: continuous on C minus (-inf, 0] and real on the
// positive axis. Use this whenever |Im s| is large enough for Gamma itself
// to under- or overflow.
Complex complex_log_gamma(Complex s);
Complex digamma(Complex s);

/// 1/Gamma(s). Entire, so it returns an exact zero at the non-positive
/// integers instead of throwing.
Complex reciprocal_gamma(Complex s);

/// sin(pi s) and cos(pi s) with the real part reduced exactly, so integer
/// and half-integer arguments give exact zeros.
Complex sin_pi(Complex s);
Complex cos_pi(Complex s);

/// Riemann zeta with full analytic continuation. PoleError at s = 1.
Complex riemann_zeta(Complex s);

/// Dirichlet beta, the L-function of the non-trivial character mod 4.
/// Entire.
Complex dirichlet_beta(Complex s);

constexpr double euler_gamma = 0.57721566490153286061;
constexpr double catalan_constant = 0.91596559417721901505;

/// Bernoulli numbers with B_1 = -1/2 and the polynomials built from them.
/// The table is filled once in the constructor and never mutated, which
/// makes a shared instance safe to read from any thread.
class BernoulliTable {
 public:
  explicit BernoulliTable(int max_index = 64);

  int max_index() const { return static_cast<int>(numbers_.size()) - 1; }
  double number(int k) const;
  double polynomial(int k, double x) const;

 private:
  std::vector<double> numbers_;
};

const BernoulliTable& default_bernoulli_table();

inline double bernoulli_number(int k) { return default_bernoulli_table().number(k); }
inline double bernoulli_polynomial(int k, double x) {
  return default_bernoulli_table().polynomial(k, x);
}

}  // namespace tzeta
