#pragma once

// Closed-form kernels of the massless chiral field in two dimensions, in null
// coordinates u = t - x, v = t + x. Cylinder points are identified under
// (u, v) ~ (u + 2 pi, v - 2 pi).

#include <complex>
#include <cstdint>

#include "cylqft/fields.hpp"
#include "cylqft/scalars.hpp"

namespace cylqft {

struct NullPoint {
  double u = 0.0;
  double v = 0.0;

  /// Representative of the cylinder class with u in [0, 2 pi).
  NullPoint canonical() const;
};

/// Pauli-Jordan function on Minkowski space: -(1/4)[sgn(du) + sgn(dv)],
/// sgn(0) = 0.
double eval_E_mink(const NullPoint& x, const NullPoint& y);

/// Cylinder Pauli-Jordan function -(1/2)(floor(du/2pi) + floor(dv/2pi) + 1).
double eval_E_cyl(const NullPoint& x, const NullPoint& y);

/// sum_{|k| <= N} eval_E_mink(x; y translated by the k-th deck transformation).
double images_partial_sum(const NullPoint& x, const NullPoint& y, int N);

/// Image count past which images_partial_sum is stationary:
/// ceil((|du| + |dv|) / 2pi) + 1.
int image_stabilization_bound(const NullPoint& x, const NullPoint& y);

/// Mode sum (1/4pi) sum_{k=1}^{N} k q^k with q = exp(-i(u - u') - eps).
Complex eval_dW_cyl(double u, double uprime, double eps, std::int64_t N);

/// Closed form (1/4pi) q / (1 - q)^2 of the full mode sum.
Complex eval_dW_cyl_closed(double u, double uprime, double eps);

/// Bound on |closed - partial| for N modes:
/// (1/4pi) sum_{k>N} k e^{-k eps}.
double dW_tail_bound(double eps, std::int64_t N);

/// Coincidence limit of diag_difference: -1/(48 pi).
double diag_difference_limit();

/// (1/4pi) [1/s^2 - 1/(4 sin^2(s/2))], the smooth part of the chiral vacuum
/// two-point function at separation s. Throws std::domain_error for
/// |s| >= 2 pi.
double diag_difference(double u_sep);

/// Below this separation diag_difference returns the analytic limit.
inline constexpr double kDiagSwitch = 1e-4;

/// sum_{l=0}^{k} l (k - l) = (k^3 - k)/6.
Rational squared_coeff(std::uint64_t k);

/// (1/2) squared_coeff(n) [n > 0] [n + m = 0]. Throws std::invalid_argument
/// when K < |n|.
Rational central_term_pairing(int n, int m, int K);

/// Local Hadamard parametrix W_sing = -(1/4pi) log|du dv / lambda^2|.
class ParametrixKernel {
 public:
  /// Throws std::invalid_argument unless lambda > 0.
  explicit ParametrixKernel(double lambda = 1.0);

  double lambda() const { return lambda_; }
  double w_sing(double du, double dv) const;
  /// d_u d_u' W_sing = -1 / (4 pi du^2).
  static double chiral_derivative(double du);

 private:
  double lambda_;
};

}  // namespace cylqft
