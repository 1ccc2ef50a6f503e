#include "cylqft/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "cylqft/conformal.hpp"
#include "cylqft/functionals.hpp"
#include "cylqft/kernels.hpp"
#include "cylqft/mode_algebra.hpp"

namespace cylqft {

bool SuiteReport::all_passed() const { return failures() == 0; }

std::size_t SuiteReport::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.pass; }));
}

std::string to_json(const SuiteReport& report) {
  nlohmann::ordered_json j;
  j["suite_name"] = report.suite_name;
  j["seed"] = report.seed;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json e;
    e["check_id"] = c.check_id;
    e["expected"] = c.expected;
    e["actual"] = c.actual;
    e["pass"] = c.pass;
    e["runtime_ms"] = c.runtime_ms;
    j["checks"].push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

struct Outcome {
  std::string expected;
  std::string actual;
  bool pass;
};

class Recorder {
 public:
  Recorder(std::string name, const SuiteOptions& opt) : opt_(opt) {
    report_.suite_name = std::move(name);
    report_.seed = opt.seed;
  }

  void check(std::string id, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& ex) {
      o = {"no exception", std::string("exception: ") + ex.what(), false};
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
    report_.checks.push_back(
        {std::move(id), std::move(o.expected), std::move(o.actual), o.pass, opt_.deterministic ? 0 : ms.count()});
  }

  SuiteReport finish() {
    std::stable_sort(report_.checks.begin(), report_.checks.end(),
                     [](const auto& a, const auto& b) { return a.check_id < b.check_id; });
    return std::move(report_);
  }

 private:
  const SuiteOptions& opt_;
  SuiteReport report_;
};

std::string signed_index(int n) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%+03d", n);
  return buf;
}

std::string pair_id(const std::string& prefix, int n, int m) {
  return prefix + "/n=" + signed_index(n) + ",m=" + signed_index(m);
}

Outcome float_outcome(double expected, double actual, double tol) {
  return {format_double(expected) + " (tol " + format_double(tol) + ")", format_double(actual),
          close(expected, actual, tol)};
}

Outcome bound_outcome(double value, double bound) {
  return {"<= " + format_double(bound), format_double(value), value <= bound};
}

double rel_dev(Complex a, Complex b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

long delta(int a, int b) { return a == b ? 1 : 0; }

Rational cubic_over_12(long n, bool vacuum) {
  Rational r = vacuum ? Rational(n * (n * n - 1)) / 12 : Rational(n * n * n) / 12;
  r.canonicalize();
  return r;
}

}  // namespace

SuiteReport run_heisenberg(const SuiteOptions& opt) {
  if (opt.n_max < 1) throw std::invalid_argument("heisenberg: n_max must be >= 1");
  Recorder rec("heisenberg", opt);
  const auto vac = ContractionKernel::cylinder_vacuum();
  const std::size_t T = opt.hbar_trunc;
  for (int n = -opt.n_max; n <= opt.n_max; ++n) {
    for (int m = -opt.n_max; m <= opt.n_max; ++m) {
      rec.check(pair_id("heisenberg", n, m), [&]() -> Outcome {
        const auto an = ModePolynomial::generator(n, T);
        const auto am = ModePolynomial::generator(m, T);
        const auto comm = commutator(an, am, vac);
        const auto bracket = chiral_bracket(an, am);
        const long d = delta(n + m, 0);
        const auto want_comm = ModePolynomial::scalar(HbarSeries::monomial(T, 1, GaussianRational(n * d)));
        const auto want_bracket = ModePolynomial::scalar(GaussianRational(0, -n * d), T);
        return {"[a,a]=" + to_string(want_comm) + "; {a,a}=" + to_string(want_bracket),
                "[a,a]=" + to_string(comm) + "; {a,a}=" + to_string(bracket),
                comm == want_comm && bracket == want_bracket};
      });
    }
  }
  return rec.finish();
}

SuiteReport run_virasoro(const SuiteOptions& opt) {
  if (opt.K < 4 * opt.n_max) throw std::invalid_argument("virasoro: K must be >= 4 n_max");
  Recorder rec("virasoro", opt);
  const std::size_t T = opt.hbar_trunc;
  for (int n = -opt.n_max; n <= opt.n_max; ++n) {
    for (int m = -opt.n_max; m <= opt.n_max; ++m) {
      const long d = delta(n + m, 0);
      VirasoroSplit vac;
      VirasoroSplit cov;
      rec.check(pair_id("central-vacuum", n, m), [&]() -> Outcome {
        vac = virasoro_commutator(n, m, opt.K, T, Ordering::kVacuum);
        const auto want = HbarSeries::monomial(T, 2, GaussianRational(cubic_over_12(n, true) * d));
        return {to_string(want), to_string(vac.central), vac.central == want};
      });
      rec.check(pair_id("central-covariant", n, m), [&]() -> Outcome {
        cov = virasoro_commutator(n, m, opt.K, T, Ordering::kCovariant);
        const auto want = HbarSeries::monomial(T, 2, GaussianRational(cubic_over_12(n, false) * d));
        return {to_string(want), to_string(cov.central), cov.central == want};
      });
      rec.check(pair_id("residual-window", n, m), [&]() -> Outcome {
        auto inner = [](const VirasoroSplit& s) {
          int lo = 1 << 30;
          for (const auto& [mono, c] : s.residual.terms()) lo = std::min(lo, mono.max_abs_index());
          return s.residual.is_zero() ? std::string("empty") : "min max|index| " + std::to_string(lo);
        };
        return {"every residual monomial has |index| > " + std::to_string(vac.window),
                "vacuum " + inner(vac) + ", covariant " + inner(cov),
                vac.residual_in_window() && cov.residual_in_window()};
      });
      rec.check(pair_id("witt", n, m), [&]() -> Outcome {
        const auto bn = build_B(n, opt.K, T);
        const auto bm = build_B(m, opt.K, T);
        auto diff = chiral_bracket(bn, bm) - GaussianRational(0, -(n - m)) * build_B(n + m, opt.K, T);
        const int window = opt.K - 2 * std::max(std::abs(n), std::abs(m));
        bool ok = true;
        for (const auto& [mono, c] : diff.terms()) ok = ok && mono.max_abs_index() > window;
        return {"{B_n,B_m} + i(n-m) B_{n+m} supported beyond |index| " + std::to_string(window),
                std::to_string(diff.size()) + " boundary terms", ok};
      });
    }
  }
  return rec.finish();
}

SuiteReport run_zeta(const SuiteOptions& opt) {
  Recorder rec("zeta", opt);
  const Rational minus_twelfth = make_rational(-1, 12);
  rec.check("rational-chain", [&]() -> Outcome {
    Rational via_b = -bernoulli(2) / 2;
    via_b.canonicalize();
    const Rational z = zeta_neg(1);
    return {to_string(minus_twelfth), "zeta(-1)=" + to_string(z) + ", -B_2/2=" + to_string(via_b),
            z == minus_twelfth && via_b == minus_twelfth};
  });
  rec.check("zero-mode-shift", [&]() -> Outcome {
    const GaussianRational want(zeta_neg(1) / 2);
    return {to_string(want), to_string(vacuum_zero_mode_shift()), vacuum_zero_mode_shift() == want};
  });
  rec.check("kernel-diagonal", [&]() -> Outcome {
    return float_outcome(-1.0 / 12.0, 4.0 * kPi * diag_difference(0.0), opt.tol.kernel);
  });
  rec.check("abel-route", [&]() -> Outcome {
    constexpr double eps = 1e-3;
    const double modes = 4.0 * kPi * eval_dW_cyl(0.0, 0.0, eps, 100000).real();
    return float_outcome(-1.0 / 12.0, modes - 1.0 / (eps * eps), opt.tol.abel);
  });
  rec.check("even-zeta-vanish", [&]() -> Outcome {
    bool ok = true;
    for (unsigned k = 1; k <= 10; ++k) ok = ok && sgn(zeta_neg(2 * k)) == 0;
    return {"zeta(-2k) = 0 for k = 1..10", ok ? "all zero" : "nonzero value", ok};
  });
  return rec.finish();
}

SuiteReport run_conformal(const SuiteOptions& opt) {
  Recorder rec("conformal", opt);
  std::mt19937_64 rng(opt.seed);
  const auto id = make_map<IdentityMap>();

  std::vector<MapPtr> diffeos;
  for (int i = 0; i < 5; ++i) diffeos.push_back(make_map<CircleDiffeo>(CircleDiffeo::random(rng, 3, 0.6)));
  std::vector<TestFnCircle> fns;
  for (int i = 0; i < 5; ++i) fns.push_back(TestFnCircle::random_real(3, rng));

  rec.check("anomaly/identity", [&]() -> Outcome {
    const auto r = stress_anomaly(*id, fns[0], 1.0);
    return {"(0, 0)", "(" + format_double(r.lhs) + ", " + format_double(r.rhs) + ")", r.lhs == 0.0 && r.rhs == 0.0};
  });
  rec.check("anomaly/sine-example", [&]() -> Outcome {
    const CircleDiffeo mu({{1, 0.0, 0.1}});
    const auto r = stress_anomaly(mu, TestFnCircle::constant(1.0), 1.0);
    return float_outcome(r.rhs, r.lhs, opt.tol.anomaly);
  });
  for (std::size_t i = 0; i < diffeos.size(); ++i) {
    for (std::size_t j = 0; j < fns.size(); ++j) {
      rec.check("anomaly/diffeo=" + std::to_string(i) + ",f=" + std::to_string(j), [&]() -> Outcome {
        const auto r = stress_anomaly(*diffeos[i], fns[j], 1.0);
        return float_outcome(r.rhs, r.lhs, opt.tol.anomaly);
      });
    }
    rec.check("anomaly/vacuum-route/diffeo=" + std::to_string(i), [&]() -> Outcome {
      const auto r = stress_anomaly(*diffeos[i], fns[i], 1.0);
      return float_outcome(r.lhs, stress_anomaly_vacuum_route(*diffeos[i], fns[i], 1.0), opt.tol.anomaly);
    });
  }

  rec.check("hadamard/exp-limit", [&]() -> Outcome {
    return float_outcome(-1.0 / 12.0, hadamard_diag_richardson(ExpMap{}, 0.3), 1e-9);
  });

  for (int i = 0; i < 5; ++i) {
    rec.check("schwarzian/cocycle/" + std::to_string(i), [&]() -> Outcome {
      const auto& mu = diffeos[static_cast<std::size_t>(i)];
      const auto& nu = diffeos[static_cast<std::size_t>((i + 1) % 5)];
      const ComposedMap comp(mu, nu);
      double worst = 0.0;
      for (int k = 0; k < 64; ++k) {
        const double u = kTwoPi * k / 64;
        const Jet3 nj = nu->jet(u);
        const double lhs = schwarzian(comp, u);
        const double rhs = schwarzian(*mu, nj.value) * nj.d1 * nj.d1 + schwarzian(nj);
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
      }
      return bound_outcome(worst, opt.tol.cocycle);
    });
  }
  rec.check("schwarzian/mobius", [&]() -> Outcome {
    const MobiusMap m(2, 1, 1, 3);
    double worst = 0.0;
    for (double u = 0.0; u < 5.0; u += 0.25) worst = std::max(worst, std::abs(schwarzian(m, u)));
    return bound_outcome(worst, 1e-12);
  });
  rec.check("schwarzian/boost-dilation", [&]() -> Outcome {
    const FramedSpacetime M{"cylinder"};
    bool ok = true;
    for (double alpha : {0.5, 2.0, 3.0}) {
      for (const auto& mor : {boost(M, alpha), dilation(M, alpha)}) {
        ok = ok && is_conformally_admissible(mor) && schwarzian(*mor.mu, 0.7) == 0.0 && schwarzian(*mor.nu, 0.7) == 0.0;
      }
    }
    return {"admissible, S = 0", ok ? "admissible, S = 0" : "violated", ok};
  });

  const auto f2 = TorusTrig::random(2, rng);
  const auto phi2 = TorusTrig::random(2, rng);
  rec.check("weighted/duality", [&]() -> Outcome {
    constexpr double kDelta = 0.7;
    const auto& mu = diffeos[0];
    const auto& nu = diffeos[1];
    const auto pushed = weighted_pushforward(f2.field(), mu, nu, kDelta);
    const auto pulled = weighted_pullback(phi2.field(), mu, nu, 2.0 - kDelta);
    const double lhs = torus_integral([&](double x, double y) { return phi2(x, y) * pushed(x, y); }, 96);
    const double rhs = torus_integral([&](double u, double v) { return pulled(u, v) * f2(u, v); }, 96);
    return float_outcome(rhs, lhs, opt.tol.weighted);
  });
  rec.check("weighted/composition", [&]() -> Outcome {
    constexpr double kDelta = 1.3;
    const auto& mu1 = diffeos[2];
    const auto& nu1 = diffeos[3];
    const auto& mu2 = diffeos[4];
    const auto& nu2 = diffeos[0];
    const auto direct = weighted_pushforward(f2.field(), make_map<ComposedMap>(mu2, mu1),
                                             make_map<ComposedMap>(nu2, nu1), kDelta);
    const auto staged = weighted_pushforward(weighted_pushforward(f2.field(), mu1, nu1, kDelta), mu2, nu2, kDelta);
    double worst = 0.0;
    for (int k = 0; k < 32; ++k) {
      const double x = kTwoPi * (k + 0.5) / 32;
      const double y = kTwoPi * ((7 * k) % 32 + 0.25) / 32;
      worst = std::max(worst, std::abs(direct(x, y) - staged(x, y)) / std::max(1.0, std::abs(direct(x, y))));
    }
    return bound_outcome(worst, opt.tol.weighted);
  });
  rec.check("weighted/spin-zero", [&]() -> Outcome {
    constexpr double kDelta = 0.4;
    const FramedMorphism chi{{"M"}, {"N"}, diffeos[1], diffeos[2]};
    const auto two = primary_pushforward(f2.field(), chi, {kDelta / 2, kDelta / 2});
    const auto one = weighted_pushforward(f2.field(), diffeos[1], diffeos[2], 2.0 - kDelta);
    double worst = 0.0;
    for (int k = 0; k < 32; ++k) {
      const double x = kTwoPi * (k + 0.5) / 32;
      const double y = kTwoPi * ((5 * k) % 32 + 0.75) / 32;
      worst = std::max(worst, std::abs(two(x, y) - one(x, y)) / std::max(1.0, std::abs(one(x, y))));
    }
    return bound_outcome(worst, opt.tol.weighted);
  });

  const auto f3 = TorusTrig::random(3, rng);
  const auto phi3 = TorusTrig::random(3, rng);
  const std::vector<std::pair<std::string, std::pair<MapPtr, MapPtr>>> charts = {
      {"identity", {id, id}},
      {"rotation", {make_map<AffineMap>(1.0, 0.9), id}},
      {"sine", {make_map<CircleDiffeo>(std::vector<FourierTerm>{{1, 0.0, 0.3}}), id}},
      {"random", {diffeos[3], diffeos[4]}},
  };
  for (const auto& [name, maps] : charts) {
    rec.check("primary/dphi/" + name, [&]() -> Outcome {
      const auto r = primary_check_dphi(maps.first, maps.second, f3, phi3);
      return float_outcome(r.pulled, r.pushed, opt.tol.primary);
    });
  }

  for (unsigned n = 0; n <= 4; ++n) {
    rec.check("vertex/order=" + std::to_string(n), [&]() -> Outcome {
      // a = 1, Omega = e: the exact coefficient is (1/4)^n/n! times (log Omega / pi)^n.
      const HbarSeries s = vertex_alpha_series(Rational(1), 4);
      Rational want = 1;
      for (unsigned k = 0; k < n; ++k) want /= 4 * (k + 1);
      want.canonicalize();
      const double numeric = vertex_alpha_coeff(1.0, 1.0, n);
      const double from_exact = s[n].re().get_d() * std::pow(1.0 / kPi, n);
      const bool ok = s[n] == GaussianRational(want) && close(from_exact, numeric, 1e-15);
      return {to_string(want) + "*(logOmega/pi)^" + std::to_string(n),
              to_string(s[n]) + "*(logOmega/pi)^" + std::to_string(n) + " = " + format_double(numeric), ok};
    });
  }
  return rec.finish();
}

SuiteReport run_routes(const SuiteOptions& opt) {
  Recorder rec("routes", opt);
  std::mt19937_64 rng(opt.seed);
  std::vector<ChiralConfig> configs;
  for (int i = 0; i < 20; ++i) configs.push_back(ChiralConfig::random(opt.band_limit, rng));
  const auto vac = ContractionKernel::cylinder_vacuum();
  const std::size_t T = opt.hbar_trunc;
  const int nmax = std::min(6, opt.n_max);

  struct Family {
    std::string name;
    bool left_b;
    bool right_b;
  };
  const std::vector<Family> families = {{"AA", false, false}, {"AB", false, true}, {"BB", true, true}};
  for (const auto& fam : families) {
    for (int n = -nmax; n <= nmax; ++n) {
      for (int m = -nmax; m <= nmax; ++m) {
        rec.check(pair_id("route-" + fam.name, n, m), [&]() -> Outcome {
          const auto X = fam.left_b ? build_B(n, opt.K, T) : ModePolynomial::generator(n, T);
          const auto Y = fam.right_b ? build_B(m, opt.K, T) : ModePolynomial::generator(m, T);
          const Functional F = fam.left_b ? Functional(FnB{n}) : Functional(FnA{n});
          const Functional G = fam.right_b ? Functional(FnB{m}) : Functional(FnA{m});
          const auto star = star_product(X, Y, vac);
          const auto br = chiral_bracket(X, Y);
          const ModePolynomial h[3] = {star.hbar_coefficient(0), star.hbar_coefficient(1), star.hbar_coefficient(2)};
          double worst = 0.0;
          for (const auto& psi : configs) {
            const auto num = star_numeric_terms(F, G, psi);
            for (int j = 0; j < 3; ++j) worst = std::max(worst, rel_dev(evaluate(h[j], psi, 0.0), num[j]));
            worst = std::max(worst, rel_dev(evaluate(br, psi, 0.0), chiral_bracket_numeric(F, G, psi)));
          }
          return bound_outcome(worst, opt.tol.route);
        });
      }
    }
  }
  return rec.finish();
}

SuiteReport run_kernels(const SuiteOptions& opt) {
  Recorder rec("kernels", opt);
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> coord(-4.0 * kPi, 4.0 * kPi);
  std::vector<std::pair<NullPoint, NullPoint>> grid(10000);
  for (auto& [x, y] : grid) {
    x = {coord(rng), coord(rng)};
    y = {coord(rng), coord(rng)};
  }

  rec.check("images/stabilized", [&]() -> Outcome {
    std::size_t bad = 0;
    for (const auto& [x, y] : grid) {
      const int b = image_stabilization_bound(x, y);
      const double e = eval_E_cyl(x, y);
      if (images_partial_sum(x, y, b) != e || images_partial_sum(x, y, b + 3) != e) ++bad;
    }
    return {"0 mismatches on " + std::to_string(grid.size()) + " points", std::to_string(bad) + " mismatches", bad == 0};
  });
  rec.check("antisymmetry", [&]() -> Outcome {
    std::size_t bad = 0;
    for (const auto& [x, y] : grid) {
      if (eval_E_mink(x, y) != -eval_E_mink(y, x) || eval_E_cyl(x, y) != -eval_E_cyl(y, x)) ++bad;
    }
    return {"0 violations", std::to_string(bad) + " violations", bad == 0};
  });
  rec.check("periodicity", [&]() -> Outcome {
    std::size_t bad = 0;
    for (const auto& [x, y] : grid) {
      const NullPoint xs{x.u + kTwoPi, x.v - kTwoPi};
      const NullPoint ys{y.u - kTwoPi, y.v + kTwoPi};
      const double e = eval_E_cyl(x, y);
      if (eval_E_cyl(xs, y) != e || eval_E_cyl(x, ys) != e) ++bad;
    }
    return {"0 violations", std::to_string(bad) + " violations", bad == 0};
  });
  rec.check("mode-sum-tail", [&]() -> Outcome {
    double worst = -1e300;
    for (double s : {0.0, 0.5, 1.0, kPi, 4.0}) {
      for (double eps : {1e-1, 1e-2, 1e-3}) {
        for (std::int64_t N : {100, 1000, 20000}) {
          const double gap = std::abs(eval_dW_cyl(s, 0.0, eps, N) - eval_dW_cyl_closed(s, 0.0, eps));
          const double slack = 1e-12 * std::max(1.0, std::abs(eval_dW_cyl_closed(s, 0.0, eps)));
          worst = std::max(worst, gap - dW_tail_bound(eps, N) - slack);
        }
      }
    }
    return {"|mode - closed| - tail bound <= 0", format_double(worst), worst <= 0.0};
  });
  rec.check("squared-coeff/k<=200", [&]() -> Outcome {
    std::size_t bad = 0;
    for (std::uint64_t k = 0; k <= 200; ++k) {
      mpz_class brute = 0;
      for (std::uint64_t l = 0; l <= k; ++l) brute += mpz_class(std::to_string(l * (k - l)));
      if (squared_coeff(k) != Rational(brute)) ++bad;
    }
    return {"0 mismatches", std::to_string(bad) + " mismatches", bad == 0};
  });
  for (int n = -opt.n_max; n <= opt.n_max; ++n) {
    rec.check("central-pairing/n=" + signed_index(n), [&]() -> Outcome {
      const Rational want = n > 0 ? cubic_over_12(n, true) : Rational(0);
      const Rational got = central_term_pairing(n, -n, opt.K);
      return {to_string(want), to_string(got), got == want};
    });
  }
  rec.check("diag-limit", [&]() -> Outcome {
    return float_outcome(-1.0 / (48.0 * kPi), diag_difference(0.0), opt.tol.kernel);
  });
  return rec.finish();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"conformal", "heisenberg", "kernels", "routes", "virasoro", "zeta"};
  return names;
}

bool is_suite(const std::string& name) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& opt) {
  if (name == "heisenberg") return run_heisenberg(opt);
  if (name == "virasoro") return run_virasoro(opt);
  if (name == "zeta") return run_zeta(opt);
  if (name == "conformal") return run_conformal(opt);
  if (name == "routes") return run_routes(opt);
  if (name == "kernels") return run_kernels(opt);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace cylqft
