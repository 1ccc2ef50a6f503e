#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cylqft/functionals.hpp"
#include "cylqft/mode_algebra.hpp"

using namespace cylqft;

namespace {

const double kSqrtPi = std::sqrt(kPi);

// Periodic rectangle rule; exact for trig polynomials of degree < grid.
template <class F>
Complex circle_quadrature(F&& integrand, int grid = 128) {
  Complex acc = 0;
  for (int j = 0; j < grid; ++j) acc += integrand(kTwoPi * j / grid);
  return acc * (kTwoPi / grid);
}

ChiralConfig cos_sum() { return ChiralConfig::cosine(1) + ChiralConfig::cosine(2); }

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

}  // namespace

TEST(EvalA, Examples) {
  EXPECT_NEAR(std::abs(eval_A(1, ChiralConfig::cosine(1)) - kSqrtPi), 0.0, 1e-14);
  EXPECT_EQ(eval_A(3, ChiralConfig::constant(0.0)), Complex(0.0));
  EXPECT_NEAR(std::abs(eval_A(0, ChiralConfig::constant(1.0)) - 2 * kSqrtPi), 0.0, 1e-14);
}

TEST(EvalB, Examples) {
  const auto c = ChiralConfig::cosine(1);
  EXPECT_NEAR(std::abs(eval_B(0, c) - kPi), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(eval_B(2, c) - kPi / 2), 0.0, 1e-14);
  EXPECT_EQ(eval_B(2, ChiralConfig::constant(0.0)), Complex(0.0));
}

TEST(Functionals, MatchQuadratureOracle) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const auto psi = ChiralConfig::random(8, rng);
    const auto f = TestFnCircle::random_real(5, rng);
    for (int n = -10; n <= 10; ++n) {
      const Complex qa = circle_quadrature([&](double u) { return std::exp(Complex(0, n * u)) * psi(u); }) / kSqrtPi;
      const Complex qb =
          circle_quadrature([&](double u) { return std::exp(Complex(0, n * u)) * psi(u) * psi(u); });
      EXPECT_LT(rel(eval_A(n, psi), qa), 1e-12);
      EXPECT_LT(rel(eval_B(n, psi), qb), 1e-12);
      EXPECT_LT(rel(eval_B(n, psi), eval_T(TestFnCircle(TrigPoly::exponential(n, 2.0)), psi)), 1e-13);
    }
    const Complex qt = circle_quadrature([&](double u) { return 0.5 * f(u) * psi(u) * psi(u); });
    EXPECT_LT(rel(eval_T(f, psi), qt), 1e-12);
  }
}

TEST(Functionals, Hermiticity) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    const auto psi = ChiralConfig::random(6, rng);
    for (int n = 0; n <= 12; ++n) {
      EXPECT_EQ(eval_A(-n, psi), std::conj(eval_A(n, psi)));
      EXPECT_LT(std::abs(eval_B(-n, psi) - std::conj(eval_B(n, psi))), 1e-12);
    }
  }
}

TEST(ChiralBracketNumeric, Examples) {
  std::mt19937_64 rng(43);
  const auto psi = ChiralConfig::random(4, rng);
  EXPECT_LT(std::abs(chiral_bracket_numeric(FnA{1}, FnA{-1}, psi) - Complex(0, -1)), 1e-14);
  EXPECT_LT(std::abs(chiral_bracket_numeric(FnB{2}, FnB{1}, cos_sum()) - Complex(0, -kPi)), 1e-13);
}

TEST(ChiralBracketNumeric, WittRelation) {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 10; ++trial) {
    const auto psi = ChiralConfig::random(8, rng);
    for (int n = -6; n <= 6; ++n) {
      for (int m = -6; m <= 6; ++m) {
        const Complex want = Complex(0, -(n - m)) * eval_B(n + m, psi);
        EXPECT_LT(rel(chiral_bracket_numeric(FnB{n}, FnB{m}, psi), want), 1e-12) << n << "," << m;
      }
    }
  }
}

TEST(StarNumeric, Examples) {
  const auto zero = ChiralConfig::constant(0.0);
  EXPECT_NEAR(std::abs(star_numeric(FnB{2}, FnB{-2}, zero, 1.0) - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(star_numeric(FnA{1}, FnA{-1}, zero, 1.0) - 1.0), 0.0, 1e-15);
  std::mt19937_64 rng(45);
  const auto psi = ChiralConfig::random(5, rng);
  const Functional F = FnB{3};
  const Functional G = FnT{TestFnCircle::random_real(3, rng)};
  EXPECT_EQ(star_numeric(F, G, psi, 0.0), eval(F, psi) * eval(G, psi));
}

TEST(StarNumeric, AntisymmetricPartIsBracket) {
  std::mt19937_64 rng(46);
  for (int trial = 0; trial < 10; ++trial) {
    const auto psi = ChiralConfig::random(6, rng);
    const std::vector<Functional> fs = {FnA{2}, FnA{-3}, FnB{1}, FnB{-2}, FnT{TestFnCircle::random_real(3, rng)}};
    for (const auto& F : fs) {
      for (const auto& G : fs) {
        const Complex diff = star_hbar1(F, G, psi) - star_hbar1(G, F, psi);
        EXPECT_LT(rel(diff, Complex(0, 1) * chiral_bracket_numeric(F, G, psi)), 1e-12)
            << describe(F) << " " << describe(G);
      }
    }
  }
}

TEST(StarNumeric, SecondOrderForQuadratics) {
  for (int n = -6; n <= 6; ++n) {
    for (int m = -6; m <= 6; ++m) {
      const double want = n > 0 && n + m == 0 ? n * (n * n - 1) / 12.0 : 0.0;
      EXPECT_NEAR(star_hbar2(FnB{n}, FnB{m}).real(), want, 1e-14);
    }
  }
  // The T route with f = 2 e^{inu} reproduces the B route.
  for (int n = 1; n <= 6; ++n) {
    const Functional t1 = FnT{TestFnCircle(TrigPoly::exponential(n, 2.0))};
    const Functional t2 = FnT{TestFnCircle(TrigPoly::exponential(-n, 2.0))};
    EXPECT_NEAR(std::abs(star_hbar2(t1, t2) - star_hbar2(FnB{n}, FnB{-n})), 0.0, 1e-12);
  }
  EXPECT_EQ(star_hbar2(FnA{1}, FnB{-1}), Complex(0.0));
}

TEST(ModeSeries, TruncatesAndMatchesWitt) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    const auto psi = ChiralConfig::random(8, rng);
    for (int n = -6; n <= 6; ++n) {
      for (int m = -6; m <= 6; ++m) {
        // Brute-force sum over a window much wider than the band.
        Complex brute = 0;
        for (int k = -60; k <= 60; ++k) brute += static_cast<double>(k) * eval_A(n - k, psi) * eval_A(m + k, psi);
        const Complex got = mode_series_hbar1(n, m, psi);
        EXPECT_LT(rel(got, brute), 1e-12);
        EXPECT_LT(rel(got, static_cast<double>(n - m) * eval_B(n + m, psi)), 1e-12);
      }
    }
  }
}

TEST(Vertex, NumericExamples) {
  for (unsigned k = 1; k <= 4; ++k) EXPECT_EQ(vertex_alpha_coeff(0.0, 1.3, k), 0.0);
  EXPECT_EQ(vertex_alpha_coeff(1.7, 0.0, 0), 1.0);
  EXPECT_EQ(vertex_alpha_coeff(1.7, 0.0, 2), 0.0);
  const double x = 1.0 / (4 * kPi);
  EXPECT_NEAR(vertex_alpha_coeff(1.0, 1.0, 2), x * x / 2, 1e-17);
  EXPECT_NEAR(vertex_alpha_coeff(1.0, 1.0, 3), x * x * x / 6, 1e-18);
}

TEST(Vertex, ExactSeries) {
  const auto s = vertex_alpha_series(Rational(1), 4);
  EXPECT_EQ(s, HbarSeries(4, {1, make_rational(1, 4), make_rational(1, 32), make_rational(1, 384),
                              make_rational(1, 6144)}));
  const auto s2 = vertex_alpha_series(make_rational(2, 3), 4);
  // (a^2/4)^n / n! with a^2 = 2/3
  EXPECT_EQ(s2[3], GaussianRational(make_rational(1, 6 * 216)));
  for (double log_omega : {0.5, 1.0, -2.0}) {
    for (unsigned n = 0; n <= 4; ++n) {
      const double exact = s[n].re().get_d() * std::pow(log_omega / kPi, n);
      EXPECT_NEAR(vertex_alpha_coeff(1.0, log_omega, n), exact, 1e-15);
    }
  }
}
