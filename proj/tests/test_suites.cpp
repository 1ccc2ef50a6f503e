#include <gtest/gtest.h>

#include <algorithm>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "cylqft/suites.hpp"

using namespace cylqft;

namespace {

SuiteOptions small_options() {
  SuiteOptions opt;
  opt.n_max = 2;
  opt.K = 8;
  opt.deterministic = true;
  return opt;
}

const CheckResult* find_check(const SuiteReport& r, const std::string& id) {
  for (const auto& c : r.checks) {
    if (c.check_id == id) return &c;
  }
  return nullptr;
}

}  // namespace

TEST(Heisenberg, SmallTable) {
  SuiteOptions opt;
  opt.n_max = 1;
  const auto r = run_heisenberg(opt);
  EXPECT_EQ(r.suite_name, "heisenberg");
  EXPECT_EQ(r.checks.size(), 9u);
  EXPECT_TRUE(r.all_passed());
}

TEST(Heisenberg, ExpectedStrings) {
  SuiteOptions opt;
  opt.n_max = 2;
  const auto r = run_heisenberg(opt);
  const auto* c = find_check(r, "heisenberg/n=+02,m=-02");
  ASSERT_NE(c, nullptr);
  EXPECT_NE(c->expected.find("2*hbar"), std::string::npos) << c->expected;
  EXPECT_TRUE(c->pass);
  const auto* z = find_check(r, "heisenberg/n=+01,m=+02");
  ASSERT_NE(z, nullptr);
  EXPECT_EQ(z->expected, "[a,a]=0; {a,a}=0");
  EXPECT_THROW(run_heisenberg([] { SuiteOptions o; o.n_max = 0; return o; }()), std::invalid_argument);
}

TEST(Virasoro, SmallSuitePasses) {
  const auto r = run_virasoro(small_options());
  EXPECT_EQ(r.checks.size(), 4u * 25u);
  EXPECT_TRUE(r.all_passed());
  const auto* vac = find_check(r, "central-vacuum/n=+02,m=-02");
  const auto* cov = find_check(r, "central-covariant/n=+02,m=-02");
  const auto* cov1 = find_check(r, "central-covariant/n=+01,m=-01");
  ASSERT_TRUE(vac && cov && cov1);
  EXPECT_EQ(vac->actual, "1/2*hbar^2");
  EXPECT_EQ(cov->actual, "2/3*hbar^2");
  EXPECT_EQ(cov1->actual, "1/12*hbar^2");
  auto bad = small_options();
  bad.K = 7;
  EXPECT_THROW(run_virasoro(bad), std::invalid_argument);
}

TEST(Zeta, AllChecksPass) {
  const auto r = run_zeta(SuiteOptions{});
  EXPECT_EQ(r.checks.size(), 5u);
  EXPECT_TRUE(r.all_passed());
}

TEST(Kernels, AllChecksPass) { EXPECT_TRUE(run_kernels(SuiteOptions{}).all_passed()); }

TEST(Conformal, AllChecksPass) {
  const auto r = run_conformal(SuiteOptions{});
  for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.check_id << ": " << c.expected << " vs " << c.actual;
  const auto* v3 = find_check(r, "vertex/order=3");
  ASSERT_NE(v3, nullptr);
  EXPECT_EQ(v3->expected, "1/384*(logOmega/pi)^3");
}

TEST(Routes, SmallSuitePasses) {
  auto opt = small_options();
  opt.K = 16;
  const auto r = run_routes(opt);
  EXPECT_EQ(r.checks.size(), 3u * 25u);
  EXPECT_TRUE(r.all_passed());
}

TEST(Reports, SortedAndDeterministic) {
  for (const auto& name : {"heisenberg", "zeta", "kernels", "conformal"}) {
    auto opt = small_options();
    const auto a = run_suite(name, opt);
    const auto b = run_suite(name, opt);
    EXPECT_EQ(to_json(a), to_json(b)) << name;
    EXPECT_TRUE(std::is_sorted(a.checks.begin(), a.checks.end(),
                               [](const auto& x, const auto& y) { return x.check_id < y.check_id; }));
    for (const auto& c : a.checks) EXPECT_EQ(c.runtime_ms, 0);
  }
}

TEST(Reports, JsonSchema) {
  auto opt = small_options();
  opt.seed = 17;
  const auto r = run_suite("zeta", opt);
  const auto j = nlohmann::json::parse(to_json(r));
  EXPECT_EQ(j.at("suite_name"), "zeta");
  EXPECT_EQ(j.at("seed"), 17);
  ASSERT_EQ(j.at("checks").size(), r.checks.size());
  for (const auto& c : j.at("checks")) {
    EXPECT_TRUE(c.at("check_id").is_string());
    EXPECT_TRUE(c.at("expected").is_string());
    EXPECT_TRUE(c.at("actual").is_string());
    EXPECT_TRUE(c.at("pass").is_boolean());
    EXPECT_TRUE(c.at("runtime_ms").is_number_integer());
  }
}

TEST(Reports, SeedChangesRandomizedChecksOnly) {
  auto a = small_options();
  auto b = small_options();
  b.seed = 99;
  const auto ra = run_conformal(a);
  const auto rb = run_conformal(b);
  EXPECT_TRUE(rb.all_passed());
  EXPECT_NE(to_json(ra), to_json(rb));
}

TEST(Registry, NamesAndDispatch) {
  const auto& names = suite_names();
  EXPECT_TRUE(std::is_sorted(names.begin(), names.end()));
  for (const auto& n : {"heisenberg", "virasoro", "zeta", "conformal"}) EXPECT_TRUE(is_suite(n)) << n;
  EXPECT_FALSE(is_suite("bogus"));
  EXPECT_THROW(run_suite("bogus", SuiteOptions{}), std::invalid_argument);
}

TEST(Comparator, UnitFloorAndFormatting) {
  EXPECT_TRUE(close(1e-12, 0.0, 1e-10));
  EXPECT_TRUE(close(1e6, 1e6 + 1e-5, 1e-10));
  EXPECT_FALSE(close(1e6, 1e6 + 1e-3, 1e-10));
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(-2.0), "-2");
}
