#pragma once

/**
 * @file conformal.hpp
 * @brief Conformal maps of null coordinates, Schwarzian derivatives, the
 * diagonal limit of the transformed parametrix, weighted pushforwards and
 * pullbacks on the (u, v) torus chart, and framed-morphism records.
 *
 * A conformal embedding of the cylinder chart acts as (u, v) -> (mu(u), nu(v)).
 * Coframes are e^l = a(u) du, e^r = b(v) dv with positive scale functions.
 */

#include <functional>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cylqft/fields.hpp"

namespace cylqft {

/// Value and first three derivatives of a real function at a point.
struct Jet3 {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;

  static Jet3 variable(double x) { return {x, 1.0, 0.0, 0.0}; }
  static Jet3 constant(double c) { return {c, 0.0, 0.0, 0.0}; }
};

Jet3 operator+(const Jet3& a, const Jet3& b);
Jet3 operator*(const Jet3& a, const Jet3& b);
/// Jet of outer(inner(x)) from the jet of inner at x and the jet of outer at
/// inner.value.
Jet3 compose(const Jet3& outer_at_inner, const Jet3& inner);

/// d3/d1 - (3/2)(d2/d1)^2. Throws std::domain_error when d1 == 0.
double schwarzian(const Jet3& j);

/// Smooth real map of one null coordinate.
class SmoothMap {
 public:
  virtual ~SmoothMap() = default;

  virtual Jet3 jet(double u) const = 0;
  virtual std::string name() const = 0;

  double value(double u) const { return jet(u).value; }
  double derivative(double u) const { return jet(u).d1; }

  /// value(u + h) - value(u - h), evaluated without cancellation where the
  /// map allows it.
  virtual double chord(double u, double h) const { return value(u + h) - value(u - h); }

  /// Preimage of x. The default is a Newton iteration started at x; throws
  /// std::domain_error if it does not converge.
  virtual double inverse(double x) const;

  /// True when mu(u + 2pi) = mu(u) + 2pi and mu' > 0.
  virtual bool is_circle_diffeo() const { return false; }
};

using MapPtr = std::shared_ptr<const SmoothMap>;

class IdentityMap final : public SmoothMap {
 public:
  Jet3 jet(double u) const override { return Jet3::variable(u); }
  std::string name() const override { return "identity"; }
  double chord(double, double h) const override { return 2.0 * h; }
  double inverse(double x) const override { return x; }
  bool is_circle_diffeo() const override { return true; }
};

/// u -> scale * u + shift. Rotations (scale 1) are circle diffeos.
class AffineMap final : public SmoothMap {
 public:
  AffineMap(double scale, double shift);
  Jet3 jet(double u) const override { return {scale_ * u + shift_, scale_, 0.0, 0.0}; }
  std::string name() const override;
  double chord(double, double h) const override { return 2.0 * scale_ * h; }
  double inverse(double x) const override { return (x - shift_) / scale_; }
  bool is_circle_diffeo() const override { return scale_ == 1.0; }

 private:
  double scale_;
  double shift_;
};

/// u -> e^u, the map from the flat chart to the Minkowski half-line frame.
class ExpMap final : public SmoothMap {
 public:
  Jet3 jet(double u) const override;
  std::string name() const override { return "exp"; }
  double chord(double u, double h) const override;
  double inverse(double x) const override;
};

/// u -> (a u + b) / (c u + d) with ad - bc != 0, away from the pole.
class MobiusMap final : public SmoothMap {
 public:
  MobiusMap(double a, double b, double c, double d);
  Jet3 jet(double u) const override;
  std::string name() const override;
  double chord(double u, double h) const override;
  double inverse(double x) const override;

 private:
  double a_, b_, c_, d_;
};

struct FourierTerm {
  int k;
  double a;  // cos coefficient
  double b;  // sin coefficient
};

/// mu(u) = u + sum_k (a_k cos ku + b_k sin ku), checked to satisfy mu' > 0
/// on a 2048-point grid.
class CircleDiffeo final : public SmoothMap {
 public:
  /// Throws std::invalid_argument for k < 1 or if mu' fails the positivity
  /// check.
  explicit CircleDiffeo(std::vector<FourierTerm> terms);

  /// Terms up to max_k with sum_k k (|a_k| + |b_k|) = strength < 1, which
  /// guarantees mu' > 0.
  static CircleDiffeo random(std::mt19937_64& rng, int max_k, double strength);

  const std::vector<FourierTerm>& terms() const { return terms_; }

  Jet3 jet(double u) const override;
  std::string name() const override;
  double chord(double u, double h) const override;
  double inverse(double x) const override;
  bool is_circle_diffeo() const override { return true; }

 private:
  std::vector<FourierTerm> terms_;
};

/// JSON array of [k, a_k, b_k] triples.
std::string to_json(const CircleDiffeo& mu);
/// Throws std::invalid_argument on malformed input.
CircleDiffeo circle_diffeo_from_json(const std::string& text);

/// outer o inner.
class ComposedMap final : public SmoothMap {
 public:
  ComposedMap(MapPtr outer, MapPtr inner);
  Jet3 jet(double u) const override;
  std::string name() const override;
  double chord(double u, double h) const override;
  double inverse(double x) const override;
  bool is_circle_diffeo() const override;

 private:
  MapPtr outer_;
  MapPtr inner_;
};

template <class M, class... Args>
MapPtr make_map(Args&&... args) {
  return std::make_shared<const M>(std::forward<Args>(args)...);
}

double schwarzian(const SmoothMap& mu, double u);

/// Centered Hadamard difference
///   mu'(u - s/2) mu'(u + s/2) / (mu(u + s/2) - mu(u - s/2))^2 - 1/s^2,
/// which tends to S(mu)(u)/6 with an O(s^2) error. Throws
/// std::invalid_argument for s == 0.
double hadamard_diag_limit(const SmoothMap& mu, double u, double s);

/// (4 D(s/2) - D(s)) / 3 with D = hadamard_diag_limit.
double hadamard_diag_richardson(const SmoothMap& mu, double u, double s = 1e-2);

struct AnomalyPair {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// lhs = (hbar/2)(-1/4pi) int f(u) D_rich(u) du,
/// rhs = -(1/4pi)(hbar/12) int f(u) S(mu)(u) du,
/// both by the trapezoid rule on n_quad points of the circle. Requires a
/// circle diffeo (std::invalid_argument otherwise).
AnomalyPair stress_anomaly(const SmoothMap& mu, const TestFnCircle& f, double hbar_value, int n_quad = 256);

/// lhs of stress_anomaly recomputed with the cylinder vacuum as the
/// reference state: the diagonal limit of the pulled-back vacuum kernel
/// mu'(u-) mu'(u+) dW_vac(chord) minus the vacuum's own smooth part
/// mu'(u)^2 w_cyl(0).
double stress_anomaly_vacuum_route(const SmoothMap& mu, const TestFnCircle& f, double hbar_value,
                                   int n_quad = 256);

// --- weighted maps on the (u, v) torus chart ------------------------------

using ScalarField = std::function<double(double, double)>;

/// Real trigonometric polynomial on the torus:
/// sum_j (a_j cos(p_j u + q_j v) + b_j sin(p_j u + q_j v)).
struct TorusMode {
  int p;
  int q;
  double a;
  double b;
};

class TorusTrig {
 public:
  TorusTrig() = default;
  explicit TorusTrig(std::vector<TorusMode> modes) : modes_(std::move(modes)) {}

  /// All modes with |p|, |q| <= band, coefficients uniform in [-1, 1].
  static TorusTrig random(int band, std::mt19937_64& rng);

  double operator()(double u, double v) const;
  double d_u(double u, double v) const;
  ScalarField field() const;
  const std::vector<TorusMode>& modes() const { return modes_; }

 private:
  std::vector<TorusMode> modes_;
};

/// Midpoint rule with n x n nodes over [0, 2pi)^2.
double torus_integral(const ScalarField& g, int n);

/// Omega = sqrt(mu'(u) nu'(v)).
double conformal_factor(const SmoothMap& mu, const SmoothMap& nu, double u, double v);

/// chi_*(Omega^{-Delta} f), read at preimages.
ScalarField weighted_pushforward(ScalarField f, MapPtr mu, MapPtr nu, double delta);

/// phi o chi.
ScalarField pullback(ScalarField phi, MapPtr mu, MapPtr nu);

/// Omega^{Delta} (phi o chi); Delta == 0 returns pullback() itself.
ScalarField weighted_pullback(ScalarField phi, MapPtr mu, MapPtr nu, double delta);

// --- framed spacetimes -------------------------------------------------------

using FrameFn = std::function<double(double)>;

struct FramedSpacetime {
  std::string tag;
  FrameFn frame_l = [](double) { return 1.0; };  // e^l = frame_l(u) du
  FrameFn frame_r = [](double) { return 1.0; };  // e^r = frame_r(v) dv
};

struct FramedMorphism {
  FramedSpacetime src;
  FramedSpacetime tgt;
  MapPtr mu;
  MapPtr nu;

  /// chi^* e~^l = omega_l e^l.
  double omega_l(double u) const;
  double omega_r(double v) const;
};

/// omega_l, omega_r > 0 on an n_grid sample of the circle.
bool is_conformally_admissible(const FramedMorphism& m, int n_grid = 2048);

/// Identity embedding into frames (e^l / alpha, alpha e^r).
FramedMorphism boost(const FramedSpacetime& M, double alpha);
/// Identity embedding into frames (alpha e^l, alpha e^r).
FramedMorphism dilation(const FramedSpacetime& M, double alpha);

struct WeightPair {
  double h = 0.0;
  double h_tilde = 0.0;

  double delta() const { return h + h_tilde; }
  double spin() const { return h - h_tilde; }
};

/// chi_*(omega_l^{-lambda} omega_r^{-lambda_tilde} f).
ScalarField two_weight_pushforward(ScalarField f, const FramedMorphism& m, double lambda,
                                   double lambda_tilde);

/// D^{(h, h~)} chi = chi_*^{(1 - h, 1 - h~)}.
ScalarField primary_pushforward(ScalarField f, const FramedMorphism& m, WeightPair w);

struct PrimaryCheck {
  double pushed = 0.0;   // int_N (D^{(1,0)} chi f) d_u phi
  double pulled = 0.0;   // int_M f d_u (phi o chi)
};

/// Both sides of the weight-(1,0) covariance of the derivative field for
/// unit frames, on an n_grid^2 midpoint rule.
PrimaryCheck primary_check_dphi(MapPtr mu, MapPtr nu, const TorusTrig& f, const TorusTrig& phi,
                                int n_grid = 128);

}  // namespace cylqft
