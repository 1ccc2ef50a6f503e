#pragma once

/**
 * @file scalars.hpp
 * @brief Exact coefficient arithmetic: complex rationals, truncated formal
 * power series in hbar, Bernoulli numbers and zeta at non-positive integers.
 *
 * Rationals are GMP `mpq_class` values; every arithmetic result is kept in
 * canonical form (positive denominator, lowest terms), so equality is plain
 * structural equality.
 */

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace cylqft {

using Rational = mpq_class;

/// Builds num/den in canonical form. Throws std::domain_error on den == 0.
Rational make_rational(long num, long den = 1);

std::string to_string(const Rational& q);

/// re + i*im with exact rational parts.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re, Rational im = 0);

  static GaussianRational i() { return {0, 1}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  /// |z|^2, always a non-negative rational.
  Rational norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  /// Throws std::domain_error on division by zero.
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  GaussianRational operator-() const { return {-re_, -im_}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

 private:
  Rational re_{0};
  Rational im_{0};
};

std::string to_string(const GaussianRational& z);

/// Truncated formal power series c_0 + c_1 h + ... + c_N h^N.
///
/// Every product is truncated back to the common order N; mixing series of
/// different orders is a usage error (std::invalid_argument).
class HbarSeries {
 public:
  explicit HbarSeries(std::size_t trunc_order = 4);
  HbarSeries(std::size_t trunc_order, std::initializer_list<GaussianRational> coeffs);

  /// c * h^power, or the zero series if power exceeds the truncation order.
  static HbarSeries monomial(std::size_t trunc_order, std::size_t power, GaussianRational c = 1);
  static HbarSeries constant(std::size_t trunc_order, GaussianRational c) {
    return monomial(trunc_order, 0, std::move(c));
  }

  std::size_t trunc_order() const { return coeffs_.size() - 1; }
  const std::vector<GaussianRational>& coeffs() const { return coeffs_; }
  const GaussianRational& operator[](std::size_t k) const { return coeffs_.at(k); }
  GaussianRational& operator[](std::size_t k) { return coeffs_.at(k); }

  bool is_zero() const;
  /// Lowest power with a nonzero coefficient; trunc_order()+1 for zero.
  std::size_t valuation() const;

  HbarSeries& operator+=(const HbarSeries& o);
  HbarSeries& operator-=(const HbarSeries& o);
  HbarSeries& operator*=(const GaussianRational& c);
  HbarSeries operator-() const;

  friend HbarSeries operator+(HbarSeries a, const HbarSeries& b) { return a += b; }
  friend HbarSeries operator-(HbarSeries a, const HbarSeries& b) { return a -= b; }
  friend HbarSeries operator*(HbarSeries a, const GaussianRational& c) { return a *= c; }
  friend HbarSeries operator*(const GaussianRational& c, HbarSeries a) { return a *= c; }
  friend bool operator==(const HbarSeries& a, const HbarSeries& b) { return a.coeffs_ == b.coeffs_; }

  /// Multiplication by h^power (coefficients shifted up, overflow dropped).
  HbarSeries shifted(std::size_t power) const;

  /// Numerical value at a given h.
  std::complex<double> evaluate(double hbar) const;

 private:
  std::vector<GaussianRational> coeffs_;
};

/// Cauchy product truncated at the shared order.
HbarSeries series_mul(const HbarSeries& a, const HbarSeries& b);
inline HbarSeries operator*(const HbarSeries& a, const HbarSeries& b) { return series_mul(a, b); }

/// exp(x) for a series with zero constant term (std::invalid_argument otherwise).
HbarSeries series_exp(const HbarSeries& x);

std::string to_string(const HbarSeries& s, const std::string& var = "hbar");

/// Bernoulli number B_k with the convention z/(e^z - 1) = sum B_k z^k / k!,
/// so B_1 = -1/2.
Rational bernoulli(unsigned k);

/// zeta(-n) = (-1)^n B_{n+1} / (n+1).
Rational zeta_neg(unsigned n);

Rational binomial(unsigned n, unsigned k);
Rational factorial(unsigned n);

}  // namespace cylqft
