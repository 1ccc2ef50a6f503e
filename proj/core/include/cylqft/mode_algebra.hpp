#pragma once

/**
 * @file mode_algebra.hpp
 * @brief Polynomials in abstract chiral mode generators a_n with exact
 * coefficients in Q(i)[[hbar]].
 *
 * The generators stand for the Fourier-mode functionals of the chiral field
 * on the cylinder; their normalization enters only in evaluate(). On this
 * algebra we implement
 *   - the commutative classical product,
 *   - the chiral Poisson bracket {a_n, a_m} = -i n delta_{n+m,0}, extended as
 *     a biderivation,
 *   - Wick-type star products defined by a two-point pairing <a_m a_n>,
 *   - the quadratic generators B_n and the Virasoro commutator split,
 *   - the reordering shift for local quadratic densities.
 */

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "cylqft/fields.hpp"
#include "cylqft/scalars.hpp"

namespace cylqft {

inline constexpr std::size_t kDefaultTruncOrder = 4;

/// Multiset of generator indices, kept sorted.
class ModeMonomial {
 public:
  ModeMonomial() = default;
  explicit ModeMonomial(std::vector<int> indices);
  ModeMonomial(std::initializer_list<int> indices) : ModeMonomial(std::vector<int>(indices)) {}

  const std::vector<int>& indices() const { return idx_; }
  std::size_t degree() const { return idx_.size(); }
  bool empty() const { return idx_.empty(); }
  int max_abs_index() const;

  /// Multiset union.
  ModeMonomial operator*(const ModeMonomial& o) const;

  auto operator<=>(const ModeMonomial&) const = default;
  bool operator==(const ModeMonomial&) const = default;

 private:
  std::vector<int> idx_;
};

std::string to_string(const ModeMonomial& m);

class ModePolynomial {
 public:
  using TermMap = std::map<ModeMonomial, HbarSeries>;

  explicit ModePolynomial(std::size_t trunc_order = kDefaultTruncOrder) : order_(trunc_order) {}

  static ModePolynomial generator(int n, std::size_t trunc_order = kDefaultTruncOrder);
  static ModePolynomial scalar(const HbarSeries& c);
  static ModePolynomial scalar(const GaussianRational& c, std::size_t trunc_order = kDefaultTruncOrder);
  static ModePolynomial monomial(const ModeMonomial& m, const GaussianRational& c = 1,
                                 std::size_t trunc_order = kDefaultTruncOrder);

  std::size_t trunc_order() const { return order_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// Maximal monomial degree (0 for scalars and for the zero polynomial).
  std::size_t degree() const;

  /// Zero series if the monomial is absent.
  HbarSeries coefficient(const ModeMonomial& m) const;
  HbarSeries scalar_part() const { return coefficient(ModeMonomial{}); }

  /// Accumulates c into the coefficient of m; zero coefficients are erased.
  void add_term(const ModeMonomial& m, const HbarSeries& c);

  /// The polynomial formed by the h^j coefficients, placed at order h^0.
  ModePolynomial hbar_coefficient(std::size_t j) const;

  ModePolynomial& operator+=(const ModePolynomial& o);
  ModePolynomial& operator-=(const ModePolynomial& o);
  ModePolynomial& operator*=(const HbarSeries& c);
  ModePolynomial& operator*=(const GaussianRational& c);

  friend ModePolynomial operator+(ModePolynomial a, const ModePolynomial& b) { return a += b; }
  friend ModePolynomial operator-(ModePolynomial a, const ModePolynomial& b) { return a -= b; }
  friend ModePolynomial operator*(ModePolynomial a, const HbarSeries& c) { return a *= c; }
  friend ModePolynomial operator*(const GaussianRational& c, ModePolynomial a) { return a *= c; }
  ModePolynomial operator-() const;

  friend bool operator==(const ModePolynomial& a, const ModePolynomial& b) {
    return a.order_ == b.order_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t order_;
  TermMap terms_;
};

std::string to_string(const ModePolynomial& p);

/// Two-point pairing <a_m a_n> used as the h-coefficient of a single
/// contraction. Total: pairs the kernel does not support map to zero.
class ContractionKernel {
 public:
  using Pairing = std::function<GaussianRational(int, int)>;

  ContractionKernel(std::string label, Pairing pairing)
      : label_(std::move(label)), pairing_(std::move(pairing)) {}

  /// Cylinder vacuum: <a_m a_n> = m theta(m) delta_{m+n,0}.
  static ContractionKernel cylinder_vacuum();

  GaussianRational operator()(int m, int n) const { return pairing_(m, n); }
  const std::string& label() const { return label_; }

 private:
  std::string label_;
  Pairing pairing_;
};

ModePolynomial classical_mul(const ModePolynomial& p, const ModePolynomial& q);

/// Biderivation extending {a_n, a_m} = -i n delta_{n+m,0}.
ModePolynomial chiral_bracket(const ModePolynomial& p, const ModePolynomial& q);

/// Wick expansion: the sum over all partial matchings between generators of
/// p and generators of q, each contracted pair (a_m from p, a_n from q)
/// contributing hbar * pairing(m, n). Throws std::invalid_argument when
/// min(deg p, deg q) exceeds the truncation order.
ModePolynomial star_product(const ModePolynomial& p, const ModePolynomial& q,
                            const ContractionKernel& c);

/// star_product(p, q) - star_product(q, p). The uncontracted terms cancel
/// identically, so only matchings with at least one pair are generated.
ModePolynomial commutator(const ModePolynomial& p, const ModePolynomial& q,
                          const ContractionKernel& c);

/// Truncated quadratic generator (1/2) sum_k a_k a_{n-k} over |k| <= K,
/// |n-k| <= K. Throws std::invalid_argument when the window is empty.
ModePolynomial build_B(int n, int K, std::size_t trunc_order = kDefaultTruncOrder);

/// Reordering by a translation-invariant smooth difference kernel, applied to
/// a polynomial of degree <= 2 whose quadratic part is a truncated local
/// density (sum_{k,l} M_{k,l} a_k a_l with M_{k,-k} independent of k).
/// Adds 2 M_{0,0} d0 hbar to the scalar part; nonzero total-momentum terms
/// are untouched. Throws std::invalid_argument for degree > 2 or for a
/// non-local zero-momentum profile.
ModePolynomial alpha_shift_quadratic(const ModePolynomial& p, const GaussianRational& d0);

/// Diagonal value d0 of the vacuum-minus-parametrix kernel on the cylinder.
GaussianRational vacuum_zero_mode_shift();  // -1/24

enum class Ordering { kVacuum, kCovariant };

struct VirasoroSplit {
  ModePolynomial witt;       // hbar (n - m) X_{n+m}
  HbarSeries central;        // scalar remainder
  ModePolynomial residual;   // boundary-window terms
  int window = 0;            // residual monomials carry some |index| > window

  bool residual_in_window() const;
};

/// [X_n, X_m] in the cylinder-vacuum star product, where X_n = build_B(n, K)
/// (vacuum ordering) or its covariant reordering, split against
/// hbar (n - m) X_{n+m}. Requires K >= 4 max(|n|, |m|).
VirasoroSplit virasoro_commutator(int n, int m, int K, std::size_t trunc_order = kDefaultTruncOrder,
                                  Ordering ordering = Ordering::kVacuum);

/// The quadratic generator in the requested ordering.
ModePolynomial virasoro_generator(int n, int K, std::size_t trunc_order, Ordering ordering);

/// Substitutes a_n -> A_n[psi] = 2 sqrt(pi) psi_hat_{-n} and hbar -> hbar_value.
Complex evaluate(const ModePolynomial& p, const ChiralConfig& psi, double hbar_value);

}  // namespace cylqft
