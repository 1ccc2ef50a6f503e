#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>
#include <random>
#include <stdexcept>

#include "cylqft/conformal.hpp"

using namespace cylqft;
using boost::multiprecision::cpp_dec_float_50;

namespace {

// 1/(4 sinh^2(s/2)) - 1/s^2: the centered difference for mu = exp.
double exp_diag_oracle(double s) {
  const cpp_dec_float_50 x(s);
  const cpp_dec_float_50 sh = sinh(x / 2);
  return (1 / (4 * sh * sh) - 1 / (x * x)).convert_to<double>();
}

// Closed-form Schwarzian of u + eps sin u.
double sine_schwarzian(double eps, double u) {
  const double d1 = 1 + eps * std::cos(u);
  const double d2 = -eps * std::sin(u);
  const double d3 = -eps * std::cos(u);
  return d3 / d1 - 1.5 * (d2 / d1) * (d2 / d1);
}

std::vector<MapPtr> random_diffeos(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<MapPtr> out;
  for (int i = 0; i < count; ++i) out.push_back(make_map<CircleDiffeo>(CircleDiffeo::random(rng, 3, 0.6)));
  return out;
}

}  // namespace

TEST(Jet3Test, ArithmeticMatchesAnalyticDerivatives) {
  // f(x) = x^2 sin x + x at x = 0.8
  const double x = 0.8;
  const Jet3 X = Jet3::variable(x);
  const Jet3 sinj{std::sin(x), std::cos(x), -std::sin(x), -std::cos(x)};
  const Jet3 sinx = compose(sinj, X);
  const Jet3 f = X * X * sinx + X;
  const double s = std::sin(x), c = std::cos(x);
  EXPECT_NEAR(f.value, x * x * s + x, 1e-15);
  EXPECT_NEAR(f.d1, 2 * x * s + x * x * c + 1, 1e-14);
  EXPECT_NEAR(f.d2, 2 * s + 4 * x * c - x * x * s, 1e-14);
  EXPECT_NEAR(f.d3, 6 * c - 6 * x * s - x * x * c, 1e-14);
}

TEST(Jet3Test, ComposeChainRule) {
  // exp(sin x) to third order.
  const double x = 0.4;
  const Jet3 inner{std::sin(x), std::cos(x), -std::sin(x), -std::cos(x)};
  const double e = std::exp(inner.value);
  const Jet3 outer{e, e, e, e};
  const Jet3 j = compose(outer, inner);
  const double c = std::cos(x), s = std::sin(x);
  EXPECT_NEAR(j.d1, e * c, 1e-15);
  EXPECT_NEAR(j.d2, e * (c * c - s), 1e-15);
  EXPECT_NEAR(j.d3, e * (c * c * c - 3 * s * c - c), 1e-14);
}

TEST(Schwarzian, Examples) {
  const IdentityMap id;
  const ExpMap ex;
  const MobiusMap mob(2, 1, 1, 3);
  for (double u = -2.0; u <= 2.0; u += 0.25) {
    EXPECT_EQ(schwarzian(id, u), 0.0);
    EXPECT_NEAR(schwarzian(ex, u), -0.5, 1e-14);
    EXPECT_NEAR(schwarzian(mob, u + 2.5), 0.0, 1e-12);
  }
  EXPECT_THROW(schwarzian(Jet3::constant(1.0)), std::domain_error);
}

TEST(Schwarzian, MatchesClosedFormForSine) {
  const CircleDiffeo mu({{1, 0.0, 0.3}});
  for (double u = 0.0; u < kTwoPi; u += 0.1) EXPECT_NEAR(schwarzian(mu, u), sine_schwarzian(0.3, u), 1e-14);
}

TEST(Schwarzian, Cocycle) {
  const auto ds = random_diffeos(51, 6);
  for (std::size_t i = 0; i + 1 < ds.size(); ++i) {
    const ComposedMap comp(ds[i], ds[i + 1]);
    for (double u = 0.0; u < kTwoPi; u += 0.05) {
      const Jet3 nj = ds[i + 1]->jet(u);
      const double rhs = schwarzian(*ds[i], nj.value) * nj.d1 * nj.d1 + schwarzian(nj);
      EXPECT_NEAR(schwarzian(comp, u), rhs, 1e-9 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST(Hadamard, TrivialMaps) {
  const IdentityMap id;
  const AffineMap dil(2.0, 0.0);
  for (double s : {0.5, 1e-1, 1e-3}) {
    EXPECT_EQ(hadamard_diag_limit(id, 0.3, s), 0.0);
    EXPECT_EQ(hadamard_diag_limit(dil, 0.3, s), 0.0);
  }
  EXPECT_THROW(hadamard_diag_limit(id, 0.3, 0.0), std::invalid_argument);
}

TEST(Hadamard, ExpMatchesHighPrecisionOracle) {
  const ExpMap ex;
  for (double s : {0.5, 1e-1, 1e-2}) {
    for (double u : {-1.0, 0.0, 0.7}) EXPECT_NEAR(hadamard_diag_limit(ex, u, s), exp_diag_oracle(s), 1e-10);
  }
  EXPECT_NEAR(hadamard_diag_richardson(ex, 0.3), -1.0 / 12.0, 1e-9);
}

TEST(Hadamard, SecondOrderConvergence) {
  const auto ds = random_diffeos(52, 3);
  std::vector<MapPtr> maps = ds;
  maps.push_back(make_map<ExpMap>());
  for (const auto& mu : maps) {
    for (double u : {0.2, 1.9, 4.4}) {
      const double target = schwarzian(*mu, u) / 6.0;
      const double e1 = std::abs(hadamard_diag_limit(*mu, u, 1e-1) - target);
      const double e3 = std::abs(hadamard_diag_limit(*mu, u, 1e-3) - target);
      if (e1 < 1e-13) continue;  // locally flat to this order
      const double slope = std::log10(e1 / e3) / 2.0;
      EXPECT_GE(slope, 1.9) << mu->name() << " u=" << u;
    }
  }
}

TEST(Anomaly, IdentityAndRotationVanish) {
  std::mt19937_64 rng(53);
  const auto f = TestFnCircle::random_real(3, rng);
  for (const auto& r : {stress_anomaly(IdentityMap{}, f, 1.0), stress_anomaly(AffineMap(1.0, 0.7), f, 1.0)}) {
    EXPECT_EQ(r.lhs, 0.0);
    EXPECT_EQ(r.rhs, 0.0);
  }
  EXPECT_THROW(stress_anomaly(ExpMap{}, f, 1.0), std::invalid_argument);
}

TEST(Anomaly, SineExampleAgainstQuadratureOracle) {
  const CircleDiffeo mu({{1, 0.0, 0.1}});
  double integral = 0.0;
  const int n = 8192;
  for (int i = 0; i < n; ++i) integral += sine_schwarzian(0.1, kTwoPi * i / n);
  integral *= kTwoPi / n;
  const double hbar = 0.8;
  const double want = -hbar / (48 * kPi) * integral;
  const auto r = stress_anomaly(mu, TestFnCircle::constant(1.0), hbar);
  EXPECT_NEAR(r.rhs, want, 1e-12 * std::abs(want));
  EXPECT_NEAR(r.lhs, want, 1e-6 * (1 + std::abs(want)));
}

TEST(Anomaly, RandomDiffeosAndTestFunctions) {
  const auto ds = random_diffeos(54, 5);
  std::mt19937_64 rng(55);
  for (const auto& mu : ds) {
    for (int j = 0; j < 5; ++j) {
      const auto f = TestFnCircle::random_real(3, rng);
      const auto r = stress_anomaly(*mu, f, 1.0);
      EXPECT_LE(std::abs(r.lhs - r.rhs), 1e-6 * std::max(1.0, std::abs(r.rhs)));
      const double vac = stress_anomaly_vacuum_route(*mu, f, 1.0);
      EXPECT_LE(std::abs(vac - r.lhs), 1e-6 * std::max(1.0, std::abs(r.lhs)));
    }
  }
}

TEST(CircleDiffeoTest, RejectsInvalidInput) {
  EXPECT_THROW(CircleDiffeo({{1, 0.0, 1.5}}), std::invalid_argument);
  EXPECT_THROW(CircleDiffeo({{0, 0.1, 0.0}}), std::invalid_argument);
  std::mt19937_64 rng(56);
  EXPECT_THROW(CircleDiffeo::random(rng, 2, 1.0), std::invalid_argument);
}

TEST(CircleDiffeoTest, PeriodicityAndInverse) {
  for (const auto& mu : random_diffeos(57, 4)) {
    EXPECT_TRUE(mu->is_circle_diffeo());
    for (double u = -3.0; u < 9.0; u += 0.37) {
      EXPECT_NEAR(mu->value(u + kTwoPi), mu->value(u) + kTwoPi, 1e-12);
      EXPECT_NEAR(mu->inverse(mu->value(u)), u, 1e-12);
      EXPECT_NEAR(mu->chord(u, 0.3), mu->value(u + 0.3) - mu->value(u - 0.3), 1e-14);
    }
  }
}

TEST(CircleDiffeoTest, JsonRoundTrip) {
  std::mt19937_64 rng(58);
  const auto mu = CircleDiffeo::random(rng, 4, 0.5);
  const auto back = circle_diffeo_from_json(to_json(mu));
  ASSERT_EQ(back.terms().size(), mu.terms().size());
  for (std::size_t i = 0; i < mu.terms().size(); ++i) {
    EXPECT_EQ(back.terms()[i].k, mu.terms()[i].k);
    EXPECT_EQ(back.terms()[i].a, mu.terms()[i].a);
    EXPECT_EQ(back.terms()[i].b, mu.terms()[i].b);
  }
  EXPECT_EQ(to_json(CircleDiffeo({{2, 0.25, -0.125}})), "[[2,0.25,-0.125]]");
  for (const char* bad : {"not json", "{}", "[[1, 0.1]]", "[[1.5, 0.1, 0.0]]", "[[1, 2.0, 0.0]]"}) {
    EXPECT_THROW(circle_diffeo_from_json(bad), std::invalid_argument) << bad;
  }
}

TEST(Weighted, TrivialCases) {
  std::mt19937_64 rng(59);
  const auto f = TorusTrig::random(2, rng);
  const auto id = make_map<IdentityMap>();
  const auto pushed = weighted_pushforward(f.field(), id, id, 0.0);
  for (double u = 0.1; u < 6.0; u += 0.7) EXPECT_EQ(pushed(u, 2.0 - u), f(u, 2.0 - u));

  const auto ds = random_diffeos(60, 2);
  const auto a = weighted_pullback(f.field(), ds[0], ds[1], 0.0);
  const auto b = pullback(f.field(), ds[0], ds[1]);
  for (double u = 0.1; u < 6.0; u += 0.7) EXPECT_EQ(a(u, u + 0.3), b(u, u + 0.3));
}

TEST(Weighted, DualityAndComposition) {
  const auto ds = random_diffeos(61, 4);
  std::mt19937_64 rng(62);
  const auto f = TorusTrig::random(2, rng);
  const auto phi = TorusTrig::random(2, rng);
  for (double delta : {0.0, 0.5, 1.0, 1.7}) {
    const auto pushed = weighted_pushforward(f.field(), ds[0], ds[1], delta);
    const auto pulled = weighted_pullback(phi.field(), ds[0], ds[1], 2.0 - delta);
    const double lhs = torus_integral([&](double x, double y) { return phi(x, y) * pushed(x, y); }, 96);
    const double rhs = torus_integral([&](double u, double v) { return pulled(u, v) * f(u, v); }, 96);
    EXPECT_NEAR(lhs, rhs, 1e-8 * std::max(1.0, std::abs(rhs))) << "delta=" << delta;

    const auto direct = weighted_pushforward(f.field(), make_map<ComposedMap>(ds[2], ds[0]),
                                             make_map<ComposedMap>(ds[3], ds[1]), delta);
    const auto staged = weighted_pushforward(pushed, ds[2], ds[3], delta);
    for (double x = 0.05; x < kTwoPi; x += 0.61) {
      const double y = std::fmod(3.1 * x, kTwoPi);
      EXPECT_NEAR(direct(x, y), staged(x, y), 1e-8 * std::max(1.0, std::abs(direct(x, y))));
    }
  }
}

TEST(Frames, AdmissibilityAndFactors) {
  const FramedSpacetime M{"M"};
  EXPECT_TRUE(is_conformally_admissible(cylqft::boost(M, 2.0)));
  EXPECT_TRUE(is_conformally_admissible(dilation(M, 0.5)));
  EXPECT_FALSE(is_conformally_admissible(cylqft::boost(M, -1.0)));
  EXPECT_THROW(cylqft::boost(M, 0.0), std::invalid_argument);

  const auto b = cylqft::boost(M, 3.0);
  EXPECT_DOUBLE_EQ(b.omega_l(0.4) * b.omega_r(1.1), 1.0);
  const auto d = dilation(M, 3.0);
  EXPECT_DOUBLE_EQ(d.omega_l(0.4) * d.omega_r(1.1), 9.0);

  const auto ds = random_diffeos(63, 2);
  const FramedMorphism chi{M, {"N"}, ds[0], ds[1]};
  EXPECT_TRUE(is_conformally_admissible(chi));
  for (double u = 0.0; u < kTwoPi; u += 0.5) {
    EXPECT_NEAR(chi.omega_l(u) * chi.omega_r(u + 1.0), ds[0]->derivative(u) * ds[1]->derivative(u + 1.0), 1e-15);
  }
}

TEST(Frames, WeightPair) {
  const WeightPair w{1.0, 0.0};
  EXPECT_EQ(w.delta(), 1.0);
  EXPECT_EQ(w.spin(), 1.0);
  const WeightPair z{0.3, 0.3};
  EXPECT_EQ(z.spin(), 0.0);
}

TEST(Primary, DerivativeFieldCovariance) {
  std::mt19937_64 rng(64);
  const auto f = TorusTrig::random(3, rng);
  const auto phi = TorusTrig::random(3, rng);
  const auto id = make_map<IdentityMap>();
  const auto ds = random_diffeos(65, 2);
  const std::vector<std::pair<MapPtr, MapPtr>> charts = {
      {id, id},
      {make_map<AffineMap>(1.0, 0.9), id},
      {make_map<CircleDiffeo>(std::vector<FourierTerm>{{1, 0.0, 0.3}}), id},
      {ds[0], ds[1]},
  };
  for (const auto& [mu, nu] : charts) {
    const auto r = primary_check_dphi(mu, nu, f, phi);
    EXPECT_NEAR(r.pushed, r.pulled, 1e-8 * std::max(1.0, std::abs(r.pulled))) << mu->name();
  }
  const auto r = primary_check_dphi(id, id, f, phi);
  EXPECT_EQ(r.pushed, r.pulled);
}
