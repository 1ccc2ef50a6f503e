#include "cylqft/functionals.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "cylqft/kernels.hpp"

namespace cylqft {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const double kSqrtPi = std::sqrt(kPi);

}  // namespace

std::string describe(const Functional& F) {
  return std::visit(overloaded{[](const FnA& a) { return "A_" + std::to_string(a.n); },
                               [](const FnB& b) { return "B_" + std::to_string(b.n); },
                               [](const FnT& t) { return "T(f;band=" + std::to_string(t.f.trig().band()) + ")"; }},
                    F);
}

Complex eval_A(int n, const ChiralConfig& psi) { return 2.0 * kSqrtPi * psi.coeff(-n); }

Complex eval_B(int n, const ChiralConfig& psi) {
  Complex acc = 0.0;
  const int band = psi.band();
  for (int k = -band; k <= band; ++k) acc += psi.coeff(k) * psi.coeff(-n - k);
  return kTwoPi * acc;
}

Complex eval_T(const TestFnCircle& f, const ChiralConfig& psi) {
  return 0.5 * circle_pairing(f.trig(), psi.trig() * psi.trig());
}

Complex eval(const Functional& F, const ChiralConfig& psi) {
  return std::visit(overloaded{[&](const FnA& a) { return eval_A(a.n, psi); },
                               [&](const FnB& b) { return eval_B(b.n, psi); },
                               [&](const FnT& t) { return eval_T(t.f, psi); }},
                    F);
}

TrigPoly first_derivative(const Functional& F, const ChiralConfig& psi) {
  return std::visit(
      overloaded{[&](const FnA& a) { return TrigPoly::exponential(a.n, 1.0 / kSqrtPi); },
                 [&](const FnB& b) { return TrigPoly::exponential(b.n, 2.0) * psi.trig(); },
                 [&](const FnT& t) { return t.f.trig() * psi.trig(); }},
      F);
}

TrigPoly second_derivative_density(const Functional& F) {
  return std::visit(overloaded{[](const FnA&) { return TrigPoly(0); },
                               [](const FnB& b) { return TrigPoly::exponential(b.n, 2.0); },
                               [](const FnT& t) { return t.f.trig(); }},
                    F);
}

Complex chiral_bracket_numeric(const Functional& F, const Functional& G, const ChiralConfig& psi) {
  return 0.5 * circle_pairing(first_derivative(F, psi), first_derivative(G, psi).derivative());
}

Complex star_hbar1(const Functional& F, const Functional& G, const ChiralConfig& psi) {
  const TrigPoly f1 = first_derivative(F, psi);
  const TrigPoly g1 = first_derivative(G, psi);
  const int band = std::min(f1.band(), g1.band());
  Complex acc = 0.0;
  for (int k = 1; k <= band; ++k) acc += static_cast<double>(k) * f1.coeff(k) * g1.coeff(-k);
  return kPi * acc;
}

Complex star_hbar2(const Functional& F, const Functional& G) {
  if (const auto* b1 = std::get_if<FnB>(&F)) {
    if (const auto* b2 = std::get_if<FnB>(&G)) {
      const int K = std::max(std::abs(b1->n), std::abs(b2->n));
      return central_term_pairing(b1->n, b2->n, K).get_d();
    }
  }
  const TrigPoly g1 = second_derivative_density(F);
  const TrigPoly g2 = second_derivative_density(G);
  const int band = std::min(g1.band(), g2.band());
  Complex acc = 0.0;
  for (int k = 2; k <= band; ++k) {
    acc += squared_coeff(static_cast<std::uint64_t>(k)).get_d() * g1.coeff(k) * g2.coeff(-k);
  }
  return acc / 8.0;
}

std::array<Complex, 3> star_numeric_terms(const Functional& F, const Functional& G, const ChiralConfig& psi) {
  return {eval(F, psi) * eval(G, psi), star_hbar1(F, G, psi), star_hbar2(F, G)};
}

Complex star_numeric(const Functional& F, const Functional& G, const ChiralConfig& psi, double hbar_value) {
  const auto t = star_numeric_terms(F, G, psi);
  return t[0] + hbar_value * (t[1] + hbar_value * t[2]);
}

Complex mode_series_hbar1(int n, int m, const ChiralConfig& psi) {
  // A_j vanishes for |j| > band, so both n-k and m+k must sit in the band.
  const int band = psi.band();
  Complex acc = 0.0;
  for (int k = std::max(n - band, -m - band); k <= std::min(n + band, band - m); ++k) {
    acc += static_cast<double>(k) * eval_A(n - k, psi) * eval_A(m + k, psi);
  }
  return acc;
}

double vertex_alpha_coeff(double a, double log_omega, unsigned order) {
  const double x = a * a * log_omega / (4.0 * kPi);
  return std::pow(x, order) / std::tgamma(order + 1.0);
}

HbarSeries vertex_alpha_series(const Rational& a_squared, std::size_t trunc_order) {
  Rational c = a_squared / 4;
  c.canonicalize();
  return series_exp(HbarSeries::monomial(trunc_order, 1, GaussianRational(c)));
}

}  // namespace cylqft
