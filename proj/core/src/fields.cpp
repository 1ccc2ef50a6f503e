#include "cylqft/fields.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace cylqft {

TrigPoly::TrigPoly(int band) : band_(band), c_(2 * static_cast<std::size_t>(band) + 1) {
  if (band < 0) throw std::invalid_argument("TrigPoly: negative band");
}

TrigPoly TrigPoly::exponential(int k, Complex amplitude) {
  TrigPoly p(std::abs(k));
  p.set(k, amplitude);
  return p;
}

Complex TrigPoly::coeff(int k) const {
  if (k < -band_ || k > band_) return 0.0;
  return c_[static_cast<std::size_t>(k + band_)];
}

void TrigPoly::set(int k, Complex value) {
  if (k < -band_ || k > band_) {
    throw std::out_of_range("TrigPoly::set: index " + std::to_string(k) + " outside band " +
                            std::to_string(band_));
  }
  c_[static_cast<std::size_t>(k + band_)] = value;
}

Complex TrigPoly::operator()(double u) const {
  Complex acc = 0.0;
  for (int k = -band_; k <= band_; ++k) {
    const Complex c = coeff(k);
    if (c == 0.0) continue;
    acc += c * std::polar(1.0, k * u);
  }
  return acc;
}

TrigPoly TrigPoly::derivative() const {
  TrigPoly d(band_);
  for (int k = -band_; k <= band_; ++k) d.set(k, Complex(0.0, k) * coeff(k));
  return d;
}

TrigPoly TrigPoly::conjugate() const {
  TrigPoly r(band_);
  for (int k = -band_; k <= band_; ++k) r.set(k, std::conj(coeff(-k)));
  return r;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o) {
  if (o.band_ > band_) {
    TrigPoly wider(o.band_);
    for (int k = -band_; k <= band_; ++k) wider.set(k, coeff(k));
    *this = std::move(wider);
  }
  for (int k = -o.band_; k <= o.band_; ++k) c_[static_cast<std::size_t>(k + band_)] += o.coeff(k);
  return *this;
}

TrigPoly& TrigPoly::operator*=(Complex s) {
  for (auto& c : c_) c *= s;
  return *this;
}

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
  TrigPoly r(a.band_ + b.band_);
  for (int j = -a.band_; j <= a.band_; ++j) {
    const Complex x = a.coeff(j);
    if (x == 0.0) continue;
    for (int k = -b.band_; k <= b.band_; ++k) {
      r.c_[static_cast<std::size_t>(j + k + r.band_)] += x * b.coeff(k);
    }
  }
  return r;
}

Complex circle_pairing(const TrigPoly& f, const TrigPoly& g) {
  Complex acc = 0.0;
  const int band = std::min(f.band(), g.band());
  for (int k = -band; k <= band; ++k) acc += f.coeff(k) * g.coeff(-k);
  return kTwoPi * acc;
}

ChiralConfig::ChiralConfig(TrigPoly coeffs) : psi_(std::move(coeffs)) {
  for (int k = 0; k <= psi_.band(); ++k) {
    if (psi_.coeff(-k) != std::conj(psi_.coeff(k))) {
      throw std::invalid_argument("ChiralConfig: coefficients at k=" + std::to_string(k) +
                                  " violate reality");
    }
  }
}

ChiralConfig ChiralConfig::cosine(int k, double amplitude) {
  TrigPoly p(std::abs(k));
  if (k == 0) {
    p.set(0, amplitude);
  } else {
    p.set(k, 0.5 * amplitude);
    p.set(-k, 0.5 * amplitude);
  }
  return ChiralConfig(std::move(p));
}

ChiralConfig ChiralConfig::constant(double value) { return cosine(0, value); }

ChiralConfig ChiralConfig::random(int band, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  TrigPoly p(band);
  p.set(0, dist(rng));
  for (int k = 1; k <= band; ++k) {
    const double re = dist(rng);
    const double im = dist(rng);
    p.set(k, {re, im});
    p.set(-k, {re, -im});
  }
  return ChiralConfig(std::move(p));
}

TestFnCircle TestFnCircle::constant(double value) {
  TrigPoly p(0);
  p.set(0, value);
  return TestFnCircle(std::move(p));
}

TestFnCircle TestFnCircle::random_real(int band, std::mt19937_64& rng) {
  return TestFnCircle(ChiralConfig::random(band, rng).trig());
}

}  // namespace cylqft
