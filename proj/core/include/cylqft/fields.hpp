#pragma once

/**
 * @file fields.hpp
 * @brief Band-limited functions on the circle: trigonometric polynomials,
 * chiral field configurations psi = d_u phi restricted to the t = 0 circle,
 * and smearing functions.
 *
 * A TrigPoly stores coefficients c_k for |k| <= band so that
 * f(u) = sum_k c_k e^{iku}. All circle integrals in this library are taken
 * spectrally from these coefficients: int_0^{2pi} f(u) du = 2 pi c_0.
 */

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace cylqft {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

class TrigPoly {
 public:
  TrigPoly() : TrigPoly(0) {}
  explicit TrigPoly(int band);

  /// e^{iku}
  static TrigPoly exponential(int k, Complex amplitude = 1.0);

  int band() const { return band_; }
  Complex coeff(int k) const;
  void set(int k, Complex value);

  Complex operator()(double u) const;
  TrigPoly derivative() const;
  /// Coefficients of f(u)^*: c_k -> conj(c_{-k}).
  TrigPoly conjugate() const;
  /// int_0^{2pi} f(u) du.
  Complex integral() const { return kTwoPi * coeff(0); }

  TrigPoly& operator+=(const TrigPoly& o);
  TrigPoly& operator*=(Complex s);
  friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
  friend TrigPoly operator*(TrigPoly a, Complex s) { return a *= s; }
  friend TrigPoly operator*(Complex s, TrigPoly a) { return a *= s; }
  /// Pointwise product (spectral convolution); band adds.
  friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);

 private:
  int band_;
  std::vector<Complex> c_;
};

/// int_0^{2pi} f(u) g(u) du.
Complex circle_pairing(const TrigPoly& f, const TrigPoly& g);

/// Real band-limited configuration psi on the circle (reality is enforced
/// exactly: c_{-k} == conj(c_k) bit for bit).
class ChiralConfig {
 public:
  ChiralConfig() : ChiralConfig(TrigPoly(0)) {}
  /// Throws std::invalid_argument if the coefficients are not those of a
  /// real function.
  explicit ChiralConfig(TrigPoly coeffs);

  /// amplitude * cos(k u)
  static ChiralConfig cosine(int k, double amplitude = 1.0);
  static ChiralConfig constant(double value);
  /// Coefficients uniform in [-1, 1] (real and imaginary parts) for
  /// 1 <= k <= band, real c_0.
  static ChiralConfig random(int band, std::mt19937_64& rng);

  int band() const { return psi_.band(); }
  Complex coeff(int k) const { return psi_.coeff(k); }
  const TrigPoly& trig() const { return psi_; }
  double operator()(double u) const { return psi_(u).real(); }

  ChiralConfig operator+(const ChiralConfig& o) const { return ChiralConfig(psi_ + o.psi_); }

 private:
  TrigPoly psi_;
};

/// Smearing function on the circle with finitely supported spectrum.
class TestFnCircle {
 public:
  TestFnCircle() = default;
  explicit TestFnCircle(TrigPoly f) : f_(std::move(f)) {}

  static TestFnCircle constant(double value);
  /// Real trig polynomial with coefficients uniform in [-1, 1] up to band.
  static TestFnCircle random_real(int band, std::mt19937_64& rng);

  const TrigPoly& trig() const { return f_; }
  Complex operator()(double u) const { return f_(u); }

 private:
  TrigPoly f_;
};

}  // namespace cylqft
