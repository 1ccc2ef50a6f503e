#include "cylqft/kernels.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace cylqft {

namespace {

int sgn(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

NullPoint NullPoint::canonical() const {
  const double k = std::floor(u / kTwoPi);
  NullPoint r{u - k * kTwoPi, v + k * kTwoPi};
  // guard the upper end against rounding
  if (r.u >= kTwoPi) {
    r.u -= kTwoPi;
    r.v += kTwoPi;
  }
  return r;
}

double eval_E_mink(const NullPoint& x, const NullPoint& y) {
  return -0.25 * (sgn(x.u - y.u) + sgn(x.v - y.v));
}

double eval_E_cyl(const NullPoint& x, const NullPoint& y) {
  const double fu = std::floor((x.u - y.u) / kTwoPi);
  const double fv = std::floor((x.v - y.v) / kTwoPi);
  return -0.5 * (fu + fv + 1.0);
}

double images_partial_sum(const NullPoint& x, const NullPoint& y, int N) {
  // Each term is a multiple of 1/4, so accumulate the integer numerator.
  long quarters = 0;
  for (int k = -N; k <= N; ++k) {
    const NullPoint yk{y.u + kTwoPi * k, y.v - kTwoPi * k};
    quarters -= sgn(x.u - yk.u) + sgn(x.v - yk.v);
  }
  return 0.25 * static_cast<double>(quarters);
}

int image_stabilization_bound(const NullPoint& x, const NullPoint& y) {
  const double span = std::abs(x.u - y.u) + std::abs(x.v - y.v);
  return static_cast<int>(std::ceil(span / kTwoPi)) + 1;
}

Complex eval_dW_cyl(double u, double uprime, double eps, std::int64_t N) {
  if (!(eps > 0.0)) throw std::invalid_argument("eval_dW_cyl: eps must be positive");
  const Complex q = std::exp(Complex(-eps, -(u - uprime)));
  Complex qk = 1.0;
  Complex acc = 0.0;
  for (std::int64_t k = 1; k <= N; ++k) {
    qk *= q;
    // refresh the running power now and then to stop phase drift
    if (k % 4096 == 0) qk = std::exp(static_cast<double>(k) * Complex(-eps, -(u - uprime)));
    acc += static_cast<double>(k) * qk;
  }
  return acc / (4.0 * kPi);
}

Complex eval_dW_cyl_closed(double u, double uprime, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eval_dW_cyl_closed: eps must be positive");
  const Complex q = std::exp(Complex(-eps, -(u - uprime)));
  const Complex d = 1.0 - q;
  return q / (d * d) / (4.0 * kPi);
}

double dW_tail_bound(double eps, std::int64_t N) {
  const double r = std::exp(-eps);
  const double n = static_cast<double>(N);
  const double one_minus = -std::expm1(-eps);
  return std::exp(-(n + 1.0) * eps) * ((n + 1.0) - n * r) / (one_minus * one_minus) / (4.0 * kPi);
}

double diag_difference_limit() { return -1.0 / (48.0 * kPi); }

namespace {

// (-1)^n (2n-1) B_{2n} / (2n)!, n = 1..kTerms, the Taylor coefficients of
// 1/s^2 - 1/(4 sin^2(s/2)) in s^{2n-2}.
constexpr int kTerms = 24;

const std::array<double, kTerms>& diag_series() {
  static const std::array<double, kTerms> c = [] {
    std::array<double, kTerms> out{};
    for (int n = 1; n <= kTerms; ++n) {
      Rational x = bernoulli(2 * n) * (2 * n - 1) / factorial(2 * n);
      if (n % 2 == 1) x = -x;
      out[n - 1] = x.get_d();
    }
    return out;
  }();
  return c;
}

}  // namespace

double diag_difference(double u_sep) {
  const double s = std::abs(u_sep);
  if (!(s < kTwoPi)) {
    throw std::domain_error("diag_difference: |u_sep| = " + std::to_string(s) + " outside (-2pi, 2pi)");
  }
  if (s < kDiagSwitch) return diag_difference_limit();
  if (s < 1.0) {
    const auto& c = diag_series();
    const double s2 = s * s;
    double acc = 0.0;
    for (int n = kTerms; n-- > 0;) acc = acc * s2 + c[n];
    return acc / (4.0 * kPi);
  }
  const double h = std::sin(0.5 * s);
  return (1.0 / (s * s) - 1.0 / (4.0 * h * h)) / (4.0 * kPi);
}

Rational squared_coeff(std::uint64_t k) {
  mpz_class z(std::to_string(k));
  return Rational((z * z * z - z) / 6);
}

Rational central_term_pairing(int n, int m, int K) {
  if (K < std::abs(n)) {
    throw std::invalid_argument("central_term_pairing: K=" + std::to_string(K) + " below |n|=" +
                                std::to_string(std::abs(n)));
  }
  if (n <= 0 || n + m != 0) return 0;
  Rational r = squared_coeff(static_cast<std::uint64_t>(n)) / 2;
  r.canonicalize();
  return r;
}

ParametrixKernel::ParametrixKernel(double lambda) : lambda_(lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("ParametrixKernel: lambda must be positive");
}

double ParametrixKernel::w_sing(double du, double dv) const {
  return -std::log(std::abs(du * dv) / (lambda_ * lambda_)) / (4.0 * kPi);
}

double ParametrixKernel::chiral_derivative(double du) { return -1.0 / (4.0 * kPi * du * du); }

}  // namespace cylqft
