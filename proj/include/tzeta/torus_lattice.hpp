#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <string>

#include "tzeta/errors.hpp"
#include "tzeta/special_functions.hpp"

namespace tzeta {

/// The two periodic stencils. FivePoint is the usual second difference in
/// each axis; NinePoint is the compact fourth-order star whose symbol carries
/// an extra product term.
enum class Stencil { FivePoint, NinePoint };

const char* to_string(Stencil v);
Stencil stencil_from_string(const std::string& name);  // "five" / "nine"

namespace detail {

inline void check_mode(int n, int k1, int k2) {
  if (n < 1 || k1 < 0 || k2 < 0 || k1 >= n || k2 >= n) {
    throw RangeError("mode (" + std::to_string(k1) + ", " + std::to_string(k2) +
                     ") outside a torus of size " + std::to_string(n));
  }
}

}  // namespace detail

/// Eigenvalue belonging to the Fourier mode exp(2 pi i (k1 j1 + k2 j2) / n).
///
///   five:  (n^2/pi^2) (s1 + s2),           s_i = sin^2(pi k_i / n)
///   nine:  (n^2/pi^2) (s1 + s2 - 2/3 s1 s2)
///
/// Both are non-negative since s1, s2 lie in [0, 1].
template <class Real = double>
Real eigenvalue(int n, Stencil v, int k1, int k2) {
  detail::check_mode(n, k1, k2);
  using std::sin;
  const Real pi = std::numbers::pi_v<Real>;
  const Real a = sin(pi * Real(k1) / Real(n));
  const Real b = sin(pi * Real(k2) / Real(n));
  const Real s1 = a * a, s2 = b * b;
  Real symbol = s1 + s2;
  if (v == Stencil::NinePoint) symbol -= Real(2) / Real(3) * s1 * s2;
  return Real(n) * Real(n) / (pi * pi) * symbol;
}

/// Apply the scaled periodic stencil to a grid function stored as an n x n
/// matrix, u(j1, j2) = u.coeff(j1, j2). Works for any scalar type, so a
/// complex Fourier mode goes through unchanged.
///
/// Weights before the n^2 / (4 pi^2) scaling:
///   five:  4 at the centre, -1 on the four edge neighbours
///   nine:  10/3 at the centre, -2/3 on edges, -1/6 on corners
template <class Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> apply_stencil(
    int n, Stencil v, const Eigen::MatrixBase<Derived>& u) {
  using Scalar = typename Derived::Scalar;
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  if (u.rows() != n || u.cols() != n || n < 1) {
    throw ShapeError("apply_stencil: expected " + std::to_string(n) + "x" + std::to_string(n) +
                     " grid, got " + std::to_string(u.rows()) + "x" + std::to_string(u.cols()));
  }
  const Real pi = std::numbers::pi_v<Real>;
  const Real scale = Real(n) * Real(n) / (Real(4) * pi * pi);
  Real centre, edge, corner;
  if (v == Stencil::FivePoint) {
    centre = Real(4);
    edge = Real(-1);
    corner = Real(0);
  } else {
    centre = Real(10) / Real(3);
    edge = Real(-2) / Real(3);
    corner = Real(-1) / Real(6);
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(n, n);
  for (int i = 0; i < n; ++i) {
    const int ip = (i + 1) % n, im = (i + n - 1) % n;
    for (int j = 0; j < n; ++j) {
      const int jp = (j + 1) % n, jm = (j + n - 1) % n;
      Scalar acc = centre * u(i, j);
      acc += edge * (u(ip, j) + u(im, j) + u(i, jp) + u(i, jm));
      if (corner != Real(0)) acc += corner * (u(ip, jp) + u(ip, jm) + u(im, jp) + u(im, jm));
      out(i, j) = scale * acc;
    }
  }
  return out;
}

/// Dense n^2 x n^2 matrix of the stencil, row index j1 * n + j2. Meant for
/// small n only; it exists so spectra can be checked against a generic
/// eigensolver.
template <class Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> assemble_operator(int n, Stencil v) {
  const int N = n * n;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> op(N, N);
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> unit =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
  for (int c = 0; c < N; ++c) {
    unit.setZero();
    unit(c / n, c % n) = Scalar(1);
    const auto col = apply_stencil(n, v, unit);
    for (int r = 0; r < N; ++r) op(r, c) = col(r / n, r % n);
  }
  return op;
}

/// A lattice sum together with a rough bound on its rounding error.
struct LatticeSum {
  Complex value{0.0, 0.0};
  double error_estimate = 0.0;
  bool empty = false;  // true for n = 1, where the spectrum has no non-zero mode
};

/// Sum of lambda^{-s} over all modes except (0, 0).
///
/// For n = 1 nothing is left after removing the zero mode; the result is
/// zero with `empty` set instead of a silent zero. Callers that regard this
/// as an error use spectral_zeta_checked.
LatticeSum spectral_zeta(int n, Stencil v, Complex s);
Complex spectral_zeta_checked(int n, Stencil v, Complex s);  // DegenerateError on n = 1

/// Sum of (lambda + z^2)^{-alpha} over *all* modes, the zero mode included.
/// With z = 0 the zero mode would be infinite, so it must be excluded
/// explicitly via `exclude_zero_mode`.
double resolvent_trace(int n, Stencil v, int alpha, double z, bool exclude_zero_mode = false);

/// Spectral zeta of the n-point circle, sum_{k=1}^{n-1} ((n^2/pi^2) sin^2(pi k/n))^{-s}.
Complex spectral_zeta_1d(int n, Complex s);

}  // namespace tzeta
