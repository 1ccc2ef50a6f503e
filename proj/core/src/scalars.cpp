#include "cylqft/scalars.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cylqft {

Rational make_rational(long num, long den) {
  if (den == 0) throw std::domain_error("make_rational: zero denominator");
  Rational q{mpz_class(num), mpz_class(den)};
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

GaussianRational::GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (is_real() && o.is_real()) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw std::domain_error("GaussianRational: division by zero");
  const Rational n = o.norm();
  *this *= o.conj();
  re_ /= n;
  im_ /= n;
  return *this;
}

std::string to_string(const GaussianRational& z) {
  if (z.is_real()) return to_string(z.re());
  std::string im;
  if (z.im() == 1) {
    im = "i";
  } else if (z.im() == -1) {
    im = "-i";
  } else {
    im = to_string(z.im()) + "i";
  }
  if (sgn(z.re()) == 0) return im;
  return "(" + to_string(z.re()) + (sgn(z.im()) > 0 ? "+" : "") + im + ")";
}

HbarSeries::HbarSeries(std::size_t trunc_order) : coeffs_(trunc_order + 1) {}

HbarSeries::HbarSeries(std::size_t trunc_order, std::initializer_list<GaussianRational> coeffs)
    : coeffs_(trunc_order + 1) {
  if (coeffs.size() > coeffs_.size()) {
    throw std::invalid_argument("HbarSeries: more coefficients than trunc_order + 1");
  }
  std::copy(coeffs.begin(), coeffs.end(), coeffs_.begin());
}

HbarSeries HbarSeries::monomial(std::size_t trunc_order, std::size_t power, GaussianRational c) {
  HbarSeries s(trunc_order);
  if (power <= trunc_order) s.coeffs_[power] = std::move(c);
  return s;
}

bool HbarSeries::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto& c) { return c.is_zero(); });
}

std::size_t HbarSeries::valuation() const {
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (!coeffs_[k].is_zero()) return k;
  }
  return coeffs_.size();
}

namespace {
void require_same_order(const HbarSeries& a, const HbarSeries& b) {
  if (a.trunc_order() != b.trunc_order()) {
    throw std::invalid_argument("HbarSeries: mismatched truncation orders " +
                                std::to_string(a.trunc_order()) + " and " +
                                std::to_string(b.trunc_order()));
  }
}
}  // namespace

HbarSeries& HbarSeries::operator+=(const HbarSeries& o) {
  require_same_order(*this, o);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  return *this;
}

HbarSeries& HbarSeries::operator-=(const HbarSeries& o) {
  require_same_order(*this, o);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  return *this;
}

HbarSeries& HbarSeries::operator*=(const GaussianRational& c) {
  for (auto& x : coeffs_) {
    if (!x.is_zero()) x *= c;
  }
  return *this;
}

HbarSeries HbarSeries::operator-() const {
  HbarSeries r(*this);
  for (auto& x : r.coeffs_) x = -x;
  return r;
}

HbarSeries HbarSeries::shifted(std::size_t power) const {
  HbarSeries r(trunc_order());
  for (std::size_t k = 0; k + power < coeffs_.size(); ++k) r.coeffs_[k + power] = coeffs_[k];
  return r;
}

std::complex<double> HbarSeries::evaluate(double hbar) const {
  std::complex<double> acc = 0.0;
  for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * hbar + coeffs_[k].to_complex();
  return acc;
}

HbarSeries series_mul(const HbarSeries& a, const HbarSeries& b) {
  require_same_order(a, b);
  const std::size_t n = a.trunc_order();
  HbarSeries r(n);
  for (std::size_t i = 0; i <= n; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; i + j <= n; ++j) {
      if (b[j].is_zero()) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  return r;
}

HbarSeries series_exp(const HbarSeries& x) {
  if (!x[0].is_zero()) throw std::invalid_argument("series_exp: nonzero constant term");
  // n e_n = sum_{k=1}^{n} k x_k e_{n-k}
  const std::size_t n = x.trunc_order();
  HbarSeries e(n);
  e[0] = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    GaussianRational acc;
    for (std::size_t k = 1; k <= m; ++k) {
      if (x[k].is_zero()) continue;
      acc += GaussianRational(static_cast<long>(k)) * x[k] * e[m - k];
    }
    e[m] = acc / GaussianRational(static_cast<long>(m));
  }
  return e;
}

std::string to_string(const HbarSeries& s, const std::string& var) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k <= s.trunc_order(); ++k) {
    if (s[k].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << to_string(s[k]);
    if (k == 1) os << "*" << var;
    if (k > 1) os << "*" << var << "^" << k;
  }
  if (first) os << "0";
  return os.str();
}

Rational binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Rational(r);
}

Rational factorial(unsigned n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return Rational(r);
}

Rational bernoulli(unsigned k) {
  // sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1
  std::vector<Rational> b(k + 1);
  b[0] = 1;
  for (unsigned m = 1; m <= k; ++m) {
    Rational acc = 0;
    for (unsigned j = 0; j < m; ++j) acc += binomial(m + 1, j) * b[j];
    b[m] = -acc / (m + 1);
    b[m].canonicalize();
  }
  return b[k];
}

Rational zeta_neg(unsigned n) {
  Rational z = bernoulli(n + 1) / (n + 1);
  if (n % 2 == 1) z = -z;
  z.canonicalize();
  return z;
}

}  // namespace cylqft
