#pragma once

/**
 * @file functionals.hpp
 * @brief Concrete functionals of a band-limited chiral configuration psi and
 * their brackets and star products, evaluated spectrally.
 *
 * Families:
 *   A_n[psi]  = (1/sqrt(pi)) int e^{inu} psi du      = 2 sqrt(pi) psi_{-n}
 *   B_n[psi]  = int e^{inu} psi^2 du                  = 2 pi sum_k psi_k psi_{-n-k}
 *   T(f)[psi] = (1/2) int f psi^2 du,  so B_n = T(2 e^{inu}).
 *
 * Every integrand is a trigonometric polynomial, so all circle integrals are
 * exact sums over Fourier coefficients.
 */

#include <array>
#include <string>
#include <variant>

#include "cylqft/fields.hpp"
#include "cylqft/scalars.hpp"

namespace cylqft {

struct FnA {
  int n;
};
struct FnB {
  int n;
};
struct FnT {
  TestFnCircle f;
};

using Functional = std::variant<FnA, FnB, FnT>;

std::string describe(const Functional& F);

Complex eval_A(int n, const ChiralConfig& psi);
Complex eval_B(int n, const ChiralConfig& psi);
Complex eval_T(const TestFnCircle& f, const ChiralConfig& psi);
Complex eval(const Functional& F, const ChiralConfig& psi);

/// Density F^{(1)}(u) of the first functional derivative at psi.
TrigPoly first_derivative(const Functional& F, const ChiralConfig& psi);

/// g with F^{(2)}(u, u') = g(u) delta(u - u'); zero for linear functionals.
TrigPoly second_derivative_density(const Functional& F);

/// (1/2) int F^{(1)}(u) d_u G^{(1)}(u) du, the pairing through the kernel
/// (1/2) delta'(u - u').
Complex chiral_bracket_numeric(const Functional& F, const Functional& G, const ChiralConfig& psi);

/// <(d x d) W_cyl, F^{(1)} x G^{(1)}> = pi sum_{k>=1} k F1_k G1_{-k}.
Complex star_hbar1(const Functional& F, const Functional& G, const ChiralConfig& psi);

/// (1/2) <((d x d) W_cyl)^2, F^{(2)} x G^{(2)}>
///   = (1/8) sum_k squared_coeff(k) g1_k g2_{-k}.
/// For two B's this is central_term_pairing(n, m, .).
Complex star_hbar2(const Functional& F, const Functional& G);

/// Coefficients of hbar^0, hbar^1, hbar^2 of F star G at psi. Terms beyond
/// hbar^2 vanish for functionals of degree <= 2.
std::array<Complex, 3> star_numeric_terms(const Functional& F, const Functional& G, const ChiralConfig& psi);

Complex star_numeric(const Functional& F, const Functional& G, const ChiralConfig& psi, double hbar_value);

/// sum_{k in Z} k A_{n-k}[psi] A_{m+k}[psi]; finite for band-limited psi.
Complex mode_series_hbar1(int n, int m, const ChiralConfig& psi);

/// hbar^n coefficient of the vertex transformation factor under a constant
/// conformal factor: ((a^2 / 4pi) log Omega)^n / n!.
double vertex_alpha_coeff(double a, double log_omega, unsigned order);

/// Exact route: exp((a^2/4) hbar L) with L = log(Omega)/pi, as a series in
/// hbar whose coefficients are rational multiples of L^n.
HbarSeries vertex_alpha_series(const Rational& a_squared, std::size_t trunc_order);

}  // namespace cylqft
