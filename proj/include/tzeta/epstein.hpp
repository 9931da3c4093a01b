#pragma once

#include <string>
#include <vector>

#include "tzeta/special_functions.hpp"

namespace tzeta {

/// Spectral zeta of the flat unit torus, sum over k != 0 of |k|^{-2s},
/// evaluated as 4 zeta(s) beta(s). PoleError at s = 1.
Complex epstein_zeta_2d(Complex s);

struct DirectSum {
  Complex value;
  double tail_bound = 0.0;  // bound on |full sum - value|
};

/// Partial Epstein sum over the square max(|k1|, |k2|) <= cutoff. The tail
/// bound compares shell m (8m points, each of modulus at most m^{-2 Re s})
/// with an integral. Requires Re s > 1.
DirectSum epstein_direct_sum(Complex s, int cutoff);

/// 2 Gamma(alpha) / (Gamma(s) Gamma(alpha - s)), which equals
/// (2/pi) sin(pi s) Gamma(1 - s) Gamma(alpha) / Gamma(alpha - s) and is
/// entire in s for integer alpha >= 1.
Complex front_factor(int alpha, Complex s);

/// 1 / front_factor. PoleError where the front factor vanishes, that is at
/// s = 0, -1, ... and s = alpha, alpha + 1, ...
Complex inverse_front_factor(int alpha, Complex s);

/// pi^{-s} Gamma(s), formed in log space at large |Im s| where Gamma alone
/// would underflow. PoleError at s = 0, -1, ...
Complex completion_factor(Complex s);

/// pi^{-s} Gamma(s) epstein_zeta_2d(s), symmetric under s -> 1 - s.
/// PoleError at s = 0 and s = 1. At s = -1, -2, ... the Gamma pole meets a
/// trivial zero and the finite value is returned.
Complex completed_zeta(Complex s);

/// (1/3) s pi^{2-s} Gamma(s) epstein_zeta_2d(s - 1). PoleError at s = 2 and
/// at s = 0, -1, -2, ...
Complex correction_term(Complex s);

/// The same quantity written as (1/3) s (s - 1) pi completed_zeta(s - 1).
/// Undefined (PoleError) at s = 1 as well, where completed_zeta has a pole.
Complex correction_term_from_completed(Complex s);

/// Real-valued versions of zeta and beta on the line 1/2 + it, obtained by
/// removing the phase of the Gamma factors in their completed forms. Their
/// sign changes are exactly the zeros of the two factors.
double riemann_hardy_function(double t);
double beta_hardy_function(double t);

enum class ZeroSource { RiemannFactor, BetaFactor };
const char* to_string(ZeroSource source);

struct ZeroRecord {
  double t = 0.0;
  ZeroSource source = ZeroSource::RiemannFactor;
  double residual = 0.0;  // |epstein_zeta_2d(1/2 + i t)| at the located t
};

struct ZeroScan {
  std::vector<ZeroRecord> zeros;         // sorted by t
  std::vector<std::string> warnings;     // "step too coarse" diagnostics
};

/// Zeros of epstein_zeta_2d on the line 1/2 + it for t in [t_min, t_max].
///
/// Both real functions above are sampled with the given step, every sign
/// change is bisected down to 1e-12 in t, and each zero is labelled by the
/// factor that vanishes. Two zeros closer than one step cancel each other's
/// sign change and are missed; as a hint that this may be happening, a
/// warning is added whenever sign changes of one factor occur in adjacent
/// cells. Sampling is spread over threads but the output does not depend on
/// the thread count.
ZeroScan find_critical_zeros(double t_min, double t_max, double step, int threads = 0);

}  // namespace tzeta
