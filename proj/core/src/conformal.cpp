#include "cylqft/conformal.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "cylqft/kernels.hpp"

namespace cylqft {

Jet3 operator+(const Jet3& a, const Jet3& b) {
  return {a.value + b.value, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
}

Jet3 operator*(const Jet3& a, const Jet3& b) {
  return {a.value * b.value, a.d1 * b.value + a.value * b.d1,
          a.d2 * b.value + 2.0 * a.d1 * b.d1 + a.value * b.d2,
          a.d3 * b.value + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.value * b.d3};
}

Jet3 compose(const Jet3& f, const Jet3& g) {
  const double g1 = g.d1;
  return {f.value, f.d1 * g1, f.d2 * g1 * g1 + f.d1 * g.d2,
          f.d3 * g1 * g1 * g1 + 3.0 * f.d2 * g1 * g.d2 + f.d1 * g.d3};
}

double schwarzian(const Jet3& j) {
  if (j.d1 == 0.0) throw std::domain_error("schwarzian: critical point (mu' = 0)");
  const double r = j.d2 / j.d1;
  return j.d3 / j.d1 - 1.5 * r * r;
}

double schwarzian(const SmoothMap& mu, double u) { return schwarzian(mu.jet(u)); }

double SmoothMap::inverse(double x) const {
  double u = x;
  for (int it = 0; it < 100; ++it) {
    const Jet3 j = jet(u);
    if (j.d1 == 0.0) break;
    const double step = (j.value - x) / j.d1;
    u -= step;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(u))) return u;
  }
  throw std::domain_error("inverse of " + name() + " did not converge at x=" + std::to_string(x));
}

AffineMap::AffineMap(double scale, double shift) : scale_(scale), shift_(shift) {
  if (scale == 0.0) throw std::invalid_argument("AffineMap: zero scale");
}

std::string AffineMap::name() const {
  std::ostringstream os;
  os << "affine(" << scale_ << "," << shift_ << ")";
  return os.str();
}

Jet3 ExpMap::jet(double u) const {
  const double e = std::exp(u);
  return {e, e, e, e};
}

double ExpMap::chord(double u, double h) const { return 2.0 * std::exp(u) * std::sinh(h); }

double ExpMap::inverse(double x) const {
  if (!(x > 0.0)) throw std::domain_error("exp: no preimage for x <= 0");
  return std::log(x);
}

MobiusMap::MobiusMap(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {
  if (a * d - b * c == 0.0) throw std::invalid_argument("MobiusMap: degenerate (ad - bc = 0)");
}

Jet3 MobiusMap::jet(double u) const {
  const double w = c_ * u + d_;
  if (w == 0.0) throw std::domain_error("MobiusMap: pole at u=" + std::to_string(u));
  const double det = a_ * d_ - b_ * c_;
  const double w2 = w * w;
  return {(a_ * u + b_) / w, det / w2, -2.0 * c_ * det / (w2 * w), 6.0 * c_ * c_ * det / (w2 * w2)};
}

std::string MobiusMap::name() const {
  std::ostringstream os;
  os << "mobius(" << a_ << "," << b_ << "," << c_ << "," << d_ << ")";
  return os.str();
}

double MobiusMap::chord(double u, double h) const {
  const double det = a_ * d_ - b_ * c_;
  return det * 2.0 * h / ((c_ * (u + h) + d_) * (c_ * (u - h) + d_));
}

double MobiusMap::inverse(double x) const {
  const double w = a_ - c_ * x;
  if (w == 0.0) throw std::domain_error("MobiusMap: x outside the image");
  return (d_ * x - b_) / w;
}

CircleDiffeo::CircleDiffeo(std::vector<FourierTerm> terms) : terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.k < 1) throw std::invalid_argument("CircleDiffeo: mode index must be >= 1, got " + std::to_string(t.k));
  }
  constexpr int kGrid = 2048;
  for (int i = 0; i < kGrid; ++i) {
    const double u = kTwoPi * i / kGrid;
    if (!(jet(u).d1 > 0.0)) {
      throw std::invalid_argument("CircleDiffeo: mu' <= 0 at u=" + std::to_string(u));
    }
  }
}

CircleDiffeo CircleDiffeo::random(std::mt19937_64& rng, int max_k, double strength) {
  if (!(strength >= 0.0 && strength < 1.0)) throw std::invalid_argument("CircleDiffeo::random: strength must be in [0, 1)");
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<FourierTerm> terms;
  double norm = 0.0;
  for (int k = 1; k <= max_k; ++k) {
    const double a = dist(rng);
    const double b = dist(rng);
    terms.push_back({k, a, b});
    norm += k * (std::abs(a) + std::abs(b));
  }
  if (norm > 0.0) {
    for (auto& t : terms) {
      t.a *= strength / norm;
      t.b *= strength / norm;
    }
  }
  return CircleDiffeo(std::move(terms));
}

Jet3 CircleDiffeo::jet(double u) const {
  Jet3 j = Jet3::variable(u);
  for (const auto& t : terms_) {
    const double k = t.k;
    const double c = std::cos(k * u);
    const double s = std::sin(k * u);
    j.value += t.a * c + t.b * s;
    j.d1 += k * (-t.a * s + t.b * c);
    j.d2 += k * k * (-t.a * c - t.b * s);
    j.d3 += k * k * k * (t.a * s - t.b * c);
  }
  return j;
}

std::string CircleDiffeo::name() const { return "circle-diffeo" + to_json(*this); }

double CircleDiffeo::chord(double u, double h) const {
  double acc = 2.0 * h;
  for (const auto& t : terms_) {
    acc += 2.0 * std::sin(t.k * h) * (-t.a * std::sin(t.k * u) + t.b * std::cos(t.k * u));
  }
  return acc;
}

double CircleDiffeo::inverse(double x) const {
  // mu(u) - u is bounded by B, so the root lies in [x - B, x + B].
  double bound = 0.0;
  for (const auto& t : terms_) bound += std::abs(t.a) + std::abs(t.b);
  double lo = x - bound - 1e-12;
  double hi = x + bound + 1e-12;
  double u = x;
  for (int it = 0; it < 200; ++it) {
    const Jet3 j = jet(u);
    const double r = j.value - x;
    if (r > 0.0) hi = u; else lo = u;
    double next = u - r / j.d1;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - u) <= 1e-15 * std::max(1.0, std::abs(u))) return next;
    u = next;
  }
  return u;
}

std::string to_json(const CircleDiffeo& mu) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& t : mu.terms()) arr.push_back({t.k, t.a, t.b});
  return arr.dump();
}

CircleDiffeo circle_diffeo_from_json(const std::string& text) {
  std::vector<FourierTerm> terms;
  try {
    const auto arr = nlohmann::json::parse(text);
    if (!arr.is_array()) throw std::invalid_argument("circle diffeo JSON: expected an array");
    for (const auto& e : arr) {
      if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer()) {
        throw std::invalid_argument("circle diffeo JSON: entries must be [k, a_k, b_k]");
      }
      terms.push_back({e[0].get<int>(), e[1].get<double>(), e[2].get<double>()});
    }
  } catch (const nlohmann::json::exception& ex) {
    throw std::invalid_argument(std::string("circle diffeo JSON: ") + ex.what());
  }
  return CircleDiffeo(std::move(terms));
}

ComposedMap::ComposedMap(MapPtr outer, MapPtr inner) : outer_(std::move(outer)), inner_(std::move(inner)) {
  if (!outer_ || !inner_) throw std::invalid_argument("ComposedMap: null map");
}

Jet3 ComposedMap::jet(double u) const {
  const Jet3 g = inner_->jet(u);
  return compose(outer_->jet(g.value), g);
}

std::string ComposedMap::name() const { return outer_->name() + " o " + inner_->name(); }

double ComposedMap::chord(double u, double h) const {
  const double centre = 0.5 * (inner_->value(u + h) + inner_->value(u - h));
  return outer_->chord(centre, 0.5 * inner_->chord(u, h));
}

double ComposedMap::inverse(double x) const { return inner_->inverse(outer_->inverse(x)); }

bool ComposedMap::is_circle_diffeo() const {
  return outer_->is_circle_diffeo() && inner_->is_circle_diffeo();
}

double hadamard_diag_limit(const SmoothMap& mu, double u, double s) {
  if (s == 0.0) throw std::invalid_argument("hadamard_diag_limit: s = 0 (use the Schwarzian limit)");
  const double h = 0.5 * s;
  const double ch = mu.chord(u, h);
  return mu.derivative(u - h) * mu.derivative(u + h) / (ch * ch) - 1.0 / (s * s);
}

double hadamard_diag_richardson(const SmoothMap& mu, double u, double s) {
  return (4.0 * hadamard_diag_limit(mu, u, 0.5 * s) - hadamard_diag_limit(mu, u, s)) / 3.0;
}

namespace {

void require_circle(const SmoothMap& mu, const char* who) {
  if (!mu.is_circle_diffeo()) throw std::invalid_argument(std::string(who) + ": " + mu.name() + " is not a circle diffeomorphism");
}

}  // namespace

AnomalyPair stress_anomaly(const SmoothMap& mu, const TestFnCircle& f, double hbar_value, int n_quad) {
  require_circle(mu, "stress_anomaly");
  const double h = kTwoPi / n_quad;
  double sum_d = 0.0;
  double sum_s = 0.0;
  for (int i = 0; i < n_quad; ++i) {
    const double u = h * i;
    const double fu = f(u).real();
    sum_d += fu * hadamard_diag_richardson(mu, u);
    sum_s += fu * schwarzian(mu, u);
  }
  const double c = -1.0 / (4.0 * kPi);
  return {0.5 * hbar_value * c * h * sum_d, c * (hbar_value / 12.0) * h * sum_s};
}

double stress_anomaly_vacuum_route(const SmoothMap& mu, const TestFnCircle& f, double hbar_value, int n_quad) {
  require_circle(mu, "stress_anomaly_vacuum_route");
  auto pulled_vacuum = [&](double u, double s) {
    const double h = 0.5 * s;
    const double sc = std::sin(0.5 * mu.chord(u, h));
    const double dw = -1.0 / (16.0 * kPi * sc * sc);
    return mu.derivative(u - h) * mu.derivative(u + h) * dw + 1.0 / (4.0 * kPi * s * s);
  };
  constexpr double s = 1e-2;
  const double w0 = diag_difference(0.0);
  const double h = kTwoPi / n_quad;
  double acc = 0.0;
  for (int i = 0; i < n_quad; ++i) {
    const double u = h * i;
    const double rich = (4.0 * pulled_vacuum(u, 0.5 * s) - pulled_vacuum(u, s)) / 3.0;
    const double d1 = mu.derivative(u);
    acc += f(u).real() * (rich - d1 * d1 * w0);
  }
  return 0.5 * hbar_value * h * acc;
}

TorusTrig TorusTrig::random(int band, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<TorusMode> modes;
  for (int p = 0; p <= band; ++p) {
    for (int q = -band; q <= band; ++q) {
      if (p == 0 && q < 0) continue;
      const double a = dist(rng);
      const double b = dist(rng);
      modes.push_back({p, q, a, b});
    }
  }
  return TorusTrig(std::move(modes));
}

double TorusTrig::operator()(double u, double v) const {
  double acc = 0.0;
  for (const auto& m : modes_) {
    const double th = m.p * u + m.q * v;
    acc += m.a * std::cos(th) + m.b * std::sin(th);
  }
  return acc;
}

double TorusTrig::d_u(double u, double v) const {
  double acc = 0.0;
  for (const auto& m : modes_) {
    const double th = m.p * u + m.q * v;
    acc += m.p * (-m.a * std::sin(th) + m.b * std::cos(th));
  }
  return acc;
}

ScalarField TorusTrig::field() const {
  return [self = *this](double u, double v) { return self(u, v); };
}

double torus_integral(const ScalarField& g, int n) {
  const double h = kTwoPi / n;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = (i + 0.5) * h;
    for (int j = 0; j < n; ++j) acc += g(u, (j + 0.5) * h);
  }
  return acc * h * h;
}

double conformal_factor(const SmoothMap& mu, const SmoothMap& nu, double u, double v) {
  return std::sqrt(mu.derivative(u) * nu.derivative(v));
}

ScalarField weighted_pushforward(ScalarField f, MapPtr mu, MapPtr nu, double delta) {
  return [f = std::move(f), mu = std::move(mu), nu = std::move(nu), delta](double x, double y) {
    const double u = mu->inverse(x);
    const double v = nu->inverse(y);
    return std::pow(conformal_factor(*mu, *nu, u, v), -delta) * f(u, v);
  };
}

ScalarField pullback(ScalarField phi, MapPtr mu, MapPtr nu) {
  return [phi = std::move(phi), mu = std::move(mu), nu = std::move(nu)](double u, double v) {
    return phi(mu->value(u), nu->value(v));
  };
}

ScalarField weighted_pullback(ScalarField phi, MapPtr mu, MapPtr nu, double delta) {
  if (delta == 0.0) return pullback(std::move(phi), std::move(mu), std::move(nu));
  return [phi = std::move(phi), mu = std::move(mu), nu = std::move(nu), delta](double u, double v) {
    return std::pow(conformal_factor(*mu, *nu, u, v), delta) * phi(mu->value(u), nu->value(v));
  };
}

double FramedMorphism::omega_l(double u) const {
  return tgt.frame_l(mu->value(u)) * mu->derivative(u) / src.frame_l(u);
}

double FramedMorphism::omega_r(double v) const {
  return tgt.frame_r(nu->value(v)) * nu->derivative(v) / src.frame_r(v);
}

bool is_conformally_admissible(const FramedMorphism& m, int n_grid) {
  for (int i = 0; i < n_grid; ++i) {
    const double x = kTwoPi * i / n_grid;
    if (!(m.omega_l(x) > 0.0) || !(m.omega_r(x) > 0.0)) return false;
  }
  return true;
}

FramedMorphism boost(const FramedSpacetime& M, double alpha) {
  if (alpha == 0.0) throw std::invalid_argument("boost: alpha = 0");
  FramedSpacetime tgt{M.tag, [fl = M.frame_l, alpha](double u) { return fl(u) / alpha; },
                      [fr = M.frame_r, alpha](double v) { return alpha * fr(v); }};
  auto id = make_map<IdentityMap>();
  return {M, std::move(tgt), id, id};
}

FramedMorphism dilation(const FramedSpacetime& M, double alpha) {
  if (alpha == 0.0) throw std::invalid_argument("dilation: alpha = 0");
  FramedSpacetime tgt{M.tag, [fl = M.frame_l, alpha](double u) { return alpha * fl(u); },
                      [fr = M.frame_r, alpha](double v) { return alpha * fr(v); }};
  auto id = make_map<IdentityMap>();
  return {M, std::move(tgt), id, id};
}

ScalarField two_weight_pushforward(ScalarField f, const FramedMorphism& m, double lambda, double lambda_tilde) {
  return [f = std::move(f), m, lambda, lambda_tilde](double x, double y) {
    const double u = m.mu->inverse(x);
    const double v = m.nu->inverse(y);
    return std::pow(m.omega_l(u), -lambda) * std::pow(m.omega_r(v), -lambda_tilde) * f(u, v);
  };
}

ScalarField primary_pushforward(ScalarField f, const FramedMorphism& m, WeightPair w) {
  return two_weight_pushforward(std::move(f), m, 1.0 - w.h, 1.0 - w.h_tilde);
}

PrimaryCheck primary_check_dphi(MapPtr mu, MapPtr nu, const TorusTrig& f, const TorusTrig& phi, int n_grid) {
  const FramedSpacetime M{"M"};
  const FramedSpacetime N{"N"};
  const FramedMorphism chi{M, N, mu, nu};
  const ScalarField pushed_f = primary_pushforward(f.field(), chi, {1.0, 0.0});
  PrimaryCheck r;
  r.pushed = torus_integral([&](double x, double y) { return pushed_f(x, y) * phi.d_u(x, y); }, n_grid);
  r.pulled = torus_integral(
      [&](double u, double v) { return f(u, v) * mu->derivative(u) * phi.d_u(mu->value(u), nu->value(v)); },
      n_grid);
  return r;
}

}  // namespace cylqft
