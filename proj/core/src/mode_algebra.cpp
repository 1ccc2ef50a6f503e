#include "cylqft/mode_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace cylqft {

ModeMonomial::ModeMonomial(std::vector<int> indices) : idx_(std::move(indices)) {
  std::sort(idx_.begin(), idx_.end());
}

int ModeMonomial::max_abs_index() const {
  int r = 0;
  for (int k : idx_) r = std::max(r, std::abs(k));
  return r;
}

ModeMonomial ModeMonomial::operator*(const ModeMonomial& o) const {
  std::vector<int> merged;
  merged.reserve(idx_.size() + o.idx_.size());
  std::merge(idx_.begin(), idx_.end(), o.idx_.begin(), o.idx_.end(), std::back_inserter(merged));
  ModeMonomial r;
  r.idx_ = std::move(merged);
  return r;
}

std::string to_string(const ModeMonomial& m) {
  if (m.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (int k : m.indices()) {
    if (!first) os << "*";
    first = false;
    os << "a[" << k << "]";
  }
  return os.str();
}

ModePolynomial ModePolynomial::generator(int n, std::size_t trunc_order) {
  return monomial(ModeMonomial{n}, 1, trunc_order);
}

ModePolynomial ModePolynomial::scalar(const HbarSeries& c) {
  ModePolynomial p(c.trunc_order());
  p.add_term(ModeMonomial{}, c);
  return p;
}

ModePolynomial ModePolynomial::scalar(const GaussianRational& c, std::size_t trunc_order) {
  return scalar(HbarSeries::constant(trunc_order, c));
}

ModePolynomial ModePolynomial::monomial(const ModeMonomial& m, const GaussianRational& c,
                                        std::size_t trunc_order) {
  ModePolynomial p(trunc_order);
  p.add_term(m, HbarSeries::constant(trunc_order, c));
  return p;
}

std::size_t ModePolynomial::degree() const {
  std::size_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

HbarSeries ModePolynomial::coefficient(const ModeMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? HbarSeries(order_) : it->second;
}

void ModePolynomial::add_term(const ModeMonomial& m, const HbarSeries& c) {
  if (c.trunc_order() != order_) {
    throw std::invalid_argument("ModePolynomial: coefficient order " + std::to_string(c.trunc_order()) +
                                " does not match polynomial order " + std::to_string(order_));
  }
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

ModePolynomial ModePolynomial::hbar_coefficient(std::size_t j) const {
  ModePolynomial r(order_);
  if (j > order_) return r;
  for (const auto& [m, c] : terms_) {
    if (!c[j].is_zero()) r.add_term(m, HbarSeries::constant(order_, c[j]));
  }
  return r;
}

ModePolynomial& ModePolynomial::operator+=(const ModePolynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

ModePolynomial& ModePolynomial::operator-=(const ModePolynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

ModePolynomial& ModePolynomial::operator*=(const HbarSeries& c) {
  TermMap out;
  for (auto& [m, x] : terms_) {
    HbarSeries y = series_mul(x, c);
    if (!y.is_zero()) out.emplace(m, std::move(y));
  }
  terms_ = std::move(out);
  return *this;
}

ModePolynomial& ModePolynomial::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, x] : terms_) x *= c;
  return *this;
}

ModePolynomial ModePolynomial::operator-() const {
  ModePolynomial r(*this);
  for (auto& [m, x] : r.terms_) x = -x;
  return r;
}

std::string to_string(const ModePolynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << to_string(c) << ")";
    if (!m.empty()) os << "*" << to_string(m);
  }
  return os.str();
}

ContractionKernel ContractionKernel::cylinder_vacuum() {
  return ContractionKernel("cylinder-vacuum", [](int m, int n) -> GaussianRational {
    if (m > 0 && m + n == 0) return GaussianRational(static_cast<long>(m));
    return GaussianRational();
  });
}

namespace {

void require_same_order(const ModePolynomial& p, const ModePolynomial& q) {
  if (p.trunc_order() != q.trunc_order()) {
    throw std::invalid_argument("mode algebra: mismatched truncation orders " +
                                std::to_string(p.trunc_order()) + " and " +
                                std::to_string(q.trunc_order()));
  }
}

// Sum over partial matchings between the factors of mp and mq with at least
// min_pairs contracted pairs, accumulated into out with weight cp*cq.
void contract_monomials(const ModeMonomial& mp, const HbarSeries& cp, const ModeMonomial& mq,
                        const HbarSeries& cq, const ContractionKernel& kernel,
                        std::size_t min_pairs, ModePolynomial& out) {
  const auto& P = mp.indices();
  const auto& Q = mq.indices();
  const std::size_t order = out.trunc_order();

  // Pairing matrix; rows whose entries all vanish are never contracted.
  std::vector<std::vector<GaussianRational>> w(P.size(), std::vector<GaussianRational>(Q.size()));
  bool any = false;
  for (std::size_t i = 0; i < P.size(); ++i) {
    for (std::size_t j = 0; j < Q.size(); ++j) {
      w[i][j] = kernel(P[i], Q[j]);
      any = any || !w[i][j].is_zero();
    }
  }
  if (!any && min_pairs > 0) return;

  const HbarSeries base = series_mul(cp, cq);
  if (base.is_zero()) return;

  std::vector<bool> p_used(P.size(), false);
  std::vector<bool> q_used(Q.size(), false);

  auto emit = [&](std::size_t pairs, const GaussianRational& weight) {
    std::vector<int> rest;
    rest.reserve(P.size() + Q.size() - 2 * pairs);
    for (std::size_t i = 0; i < P.size(); ++i) {
      if (!p_used[i]) rest.push_back(P[i]);
    }
    for (std::size_t j = 0; j < Q.size(); ++j) {
      if (!q_used[j]) rest.push_back(Q[j]);
    }
    out.add_term(ModeMonomial(std::move(rest)), (base * weight).shifted(pairs));
  };

  auto recurse = [&](auto&& self, std::size_t i, std::size_t pairs, const GaussianRational& weight) -> void {
    if (pairs > order) return;  // killed by truncation
    if (i == P.size()) {
      if (pairs >= min_pairs) emit(pairs, weight);
      return;
    }
    self(self, i + 1, pairs, weight);
    for (std::size_t j = 0; j < Q.size(); ++j) {
      if (q_used[j] || w[i][j].is_zero()) continue;
      q_used[j] = true;
      p_used[i] = true;
      self(self, i + 1, pairs + 1, weight * w[i][j]);
      p_used[i] = false;
      q_used[j] = false;
    }
  };
  recurse(recurse, 0, 0, GaussianRational(1));
}

ModePolynomial contract(const ModePolynomial& p, const ModePolynomial& q, const ContractionKernel& c,
                        std::size_t min_pairs) {
  require_same_order(p, q);
  const std::size_t need = std::min(p.degree(), q.degree());
  if (need > p.trunc_order()) {
    throw std::invalid_argument("star product: " + std::to_string(need) +
                                " contractions exceed truncation order " +
                                std::to_string(p.trunc_order()));
  }
  ModePolynomial out(p.trunc_order());
  for (const auto& [mp, cp] : p.terms()) {
    for (const auto& [mq, cq] : q.terms()) contract_monomials(mp, cp, mq, cq, c, min_pairs, out);
  }
  return out;
}

}  // namespace

ModePolynomial classical_mul(const ModePolynomial& p, const ModePolynomial& q) {
  require_same_order(p, q);
  ModePolynomial out(p.trunc_order());
  for (const auto& [mp, cp] : p.terms()) {
    for (const auto& [mq, cq] : q.terms()) out.add_term(mp * mq, series_mul(cp, cq));
  }
  return out;
}

ModePolynomial chiral_bracket(const ModePolynomial& p, const ModePolynomial& q) {
  require_same_order(p, q);
  ModePolynomial out(p.trunc_order());
  for (const auto& [mp, cp] : p.terms()) {
    for (const auto& [mq, cq] : q.terms()) {
      const auto& P = mp.indices();
      const auto& Q = mq.indices();
      HbarSeries base;
      bool have_base = false;
      for (std::size_t i = 0; i < P.size(); ++i) {
        for (std::size_t j = 0; j < Q.size(); ++j) {
          if (P[i] + Q[j] != 0 || P[i] == 0) continue;
          if (!have_base) {
            base = series_mul(cp, cq);
            have_base = true;
          }
          std::vector<int> rest;
          for (std::size_t a = 0; a < P.size(); ++a) {
            if (a != i) rest.push_back(P[a]);
          }
          for (std::size_t b = 0; b < Q.size(); ++b) {
            if (b != j) rest.push_back(Q[b]);
          }
          // {a_n, a_m} = -i n delta_{n+m,0}
          const GaussianRational bracket(0, -P[i]);
          out.add_term(ModeMonomial(std::move(rest)), base * bracket);
        }
      }
    }
  }
  return out;
}

ModePolynomial star_product(const ModePolynomial& p, const ModePolynomial& q, const ContractionKernel& c) {
  return contract(p, q, c, 0);
}

ModePolynomial commutator(const ModePolynomial& p, const ModePolynomial& q, const ContractionKernel& c) {
  return contract(p, q, c, 1) - contract(q, p, c, 1);
}

ModePolynomial build_B(int n, int K, std::size_t trunc_order) {
  if (K < 0 || std::abs(n) > 2 * K) {
    throw std::invalid_argument("build_B: empty truncation window for n=" + std::to_string(n) +
                                ", K=" + std::to_string(K));
  }
  ModePolynomial out(trunc_order);
  const HbarSeries half = HbarSeries::constant(trunc_order, GaussianRational(make_rational(1, 2)));
  for (int k = std::max(-K, n - K); k <= std::min(K, n + K); ++k) {
    out.add_term(ModeMonomial{k, n - k}, half);
  }
  return out;
}

GaussianRational vacuum_zero_mode_shift() { return GaussianRational(make_rational(-1, 24)); }

ModePolynomial alpha_shift_quadratic(const ModePolynomial& p, const GaussianRational& d0) {
  if (p.degree() > 2) {
    throw std::invalid_argument("alpha_shift_quadratic: degree " + std::to_string(p.degree()) +
                                " exceeds 2");
  }
  if (d0.is_zero()) return p;

  // Zero-momentum profile M_{k,-k}, k >= 0, with absent entries read as zero.
  const std::size_t order = p.trunc_order();
  std::map<int, HbarSeries> profile;
  int kmax = -1;
  const HbarSeries half = HbarSeries::constant(order, GaussianRational(make_rational(1, 2)));
  for (const auto& [m, c] : p.terms()) {
    if (m.degree() != 2) continue;
    const int k = m.indices()[1];
    if (m.indices()[0] + k != 0) continue;
    profile.emplace(k, k == 0 ? c : series_mul(c, half));
    kmax = std::max(kmax, k);
  }
  if (kmax < 0) return p;

  const HbarSeries M = profile.count(0) ? profile.at(0) : HbarSeries(order);
  for (int k = 1; k <= kmax; ++k) {
    auto it = profile.find(k);
    const HbarSeries mk = it == profile.end() ? HbarSeries(order) : it->second;
    if (!(mk == M)) {
      throw std::invalid_argument("alpha_shift_quadratic: not a local quadratic density (profile at k=" +
                                  std::to_string(k) + " differs from k=0)");
    }
  }

  ModePolynomial out = p;
  out.add_term(ModeMonomial{}, (M * (GaussianRational(2) * d0)).shifted(1));
  return out;
}

bool VirasoroSplit::residual_in_window() const {
  for (const auto& [m, c] : residual.terms()) {
    if (m.max_abs_index() <= window) return false;
  }
  return true;
}

ModePolynomial virasoro_generator(int n, int K, std::size_t trunc_order, Ordering ordering) {
  ModePolynomial b = build_B(n, K, trunc_order);
  if (ordering == Ordering::kCovariant) return alpha_shift_quadratic(b, vacuum_zero_mode_shift());
  return b;
}

VirasoroSplit virasoro_commutator(int n, int m, int K, std::size_t trunc_order, Ordering ordering) {
  const int span = std::max(std::abs(n), std::abs(m));
  if (K < 4 * span) {
    throw std::invalid_argument("virasoro_commutator: K=" + std::to_string(K) + " below 4*max(|n|,|m|)=" +
                                std::to_string(4 * span));
  }
  if (trunc_order < 2) throw std::invalid_argument("virasoro_commutator: trunc_order must be >= 2");

  const ContractionKernel vac = ContractionKernel::cylinder_vacuum();
  const ModePolynomial xn = virasoro_generator(n, K, trunc_order, ordering);
  const ModePolynomial xm = virasoro_generator(m, K, trunc_order, ordering);

  VirasoroSplit s;
  s.witt = virasoro_generator(n + m, K, trunc_order, ordering) *
           HbarSeries::monomial(trunc_order, 1, GaussianRational(static_cast<long>(n - m)));
  ModePolynomial diff = commutator(xn, xm, vac) - s.witt;
  s.central = diff.scalar_part();
  diff.add_term(ModeMonomial{}, -s.central);
  s.residual = std::move(diff);
  s.window = K - 2 * span;
  return s;
}

Complex evaluate(const ModePolynomial& p, const ChiralConfig& psi, double hbar_value) {
  const double norm = 2.0 * std::sqrt(kPi);
  Complex acc = 0.0;
  for (const auto& [m, c] : p.terms()) {
    Complex term = c.evaluate(hbar_value);
    for (int k : m.indices()) term *= norm * psi.coeff(-k);
    acc += term;
  }
  return acc;
}

}  // namespace cylqft
