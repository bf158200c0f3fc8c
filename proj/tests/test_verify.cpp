#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include "oracles.hpp"
#include "wavebound/errors.hpp"
#include "wavebound/specfun.hpp"
#include "wavebound/verify.hpp"

using namespace wavebound;
using std::numbers::pi;

TEST(DigammaTail, ClosedFormValues) {
  EXPECT_NEAR(digamma_tail_coefficient(1, 0.5), pi, 1e-12);
  EXPECT_THROW(digamma_tail_coefficient(1, 1.0), DomainError);
  EXPECT_THROW(digamma_tail_coefficient(2, 0.0), DomainError);
}

TEST(DigammaTail, MatchesDirectSum) {
  for (double x : {0.1, 0.25, 0.5, 0.8}) {
    for (int m = -5; m <= 5; ++m) {
      auto s = sinc_tail_sum(m, x, 1000000);
      EXPECT_NEAR(digamma_tail_coefficient(m, x), s.value, 1e-6) << m << " " << x;
      EXPECT_LE(std::abs(s.value - s.partial), s.tail_bound);
    }
  }
}

TEST(DigammaTail, DecaysAsInverseM) {
  for (double x : {0.2, 0.5}) {
    for (int m = 10; m <= 400; m *= 2) {
      double a = digamma_tail_coefficient(m, x);
      EXPECT_LT(std::abs(a), 2 * pi / m);
      EXPECT_NEAR(a, -std::pow(-1.0, m) * std::sin(pi * x) / m, 2.0 / (m * m)) << m;
    }
  }
}

TEST(SincTailSum, Leibniz) {
  auto s = sinc_tail_sum(1, 0.5, 2000000);
  EXPECT_NEAR(s.value, pi, 1e-9);
  EXPECT_NEAR(sinc_tail_sum(3, 1e-9, 1000).value, 0.0, 1e-7);
}

TEST(WrapBracket, ScanMaximum) {
  std::vector<double> grid;
  for (int i = 1; i < 1000; ++i) grid.push_back(i / 1000.0);
  auto scan = wrap_constant_scan(grid, 2000);
  EXPECT_NEAR(scan.max_value, 0.68169, 1e-4);
  EXPECT_NEAR(scan.argmax, 0.5, 1e-3);
}

TEST(WrapBracket, SymmetricAndVanishing) {
  for (double x : {0.05, 0.2, 0.37}) EXPECT_NEAR(wrap_bracket(x, 100000), wrap_bracket(1 - x, 100000), 1e-10);
  EXPECT_LT(wrap_bracket(1e-6, 500), 1e-5);
  EXPECT_LT(wrap_bracket(1 - 1e-6, 500), 1e-5);
}

TEST(CovarianceVn, BoundAndOracle) {
  for (double p : {2.0, 3.0}) {
    for (double gT : {0.01, 0.1}) {
      PowerLawSpectrum s(p, 1.0, gT);
      for (int n = 2; n <= 50; n += 6) {
        auto v = covariance_Vn(s, 1.0, n);
        EXPECT_LE(std::abs(v.value), v.bound) << p << " " << gT << " " << n;
      }
    }
  }
  PowerLawSpectrum ou(2, 1, 0.1);
  double T = 1.0;
  auto v = covariance_Vn(ou, T, 2);
  double ref = (2 * oracle::ou_covariance(1, 0.1, 2 * T) - oracle::ou_covariance(1, 0.1, T) -
                oracle::ou_covariance(1, 0.1, 3 * T)) /
               (4 * pi * pi);
  EXPECT_NEAR(v.value, ref, 1e-6 * std::abs(ref) + 1e-12);
}

TEST(CovarianceVn, BoundHalves) {
  PowerLawSpectrum s(2, 1, 0.01);
  EXPECT_NEAR(covariance_Vn(s, 1.0, 40).bound / covariance_Vn(s, 1.0, 20).bound, 0.5, 0.02);
}

TEST(CosineBound, CanaryDetectsPerturbation) {
  double l = constants().lambda;
  EXPECT_EQ(cosine_bound_violation(l), 0.0);
  EXPECT_GT(cosine_bound_violation(l - 1e-3), 0.0);
}

TEST(Suite, AllChecksPass) {
  auto results = run_verification_suite();
  EXPECT_EQ(results.size(), verification_checks().size());
  for (const auto& r : results) {
    EXPECT_TRUE(r.passed) << r.name << " computed " << r.computed << " reference " << r.reference;
    double scale = r.relative ? std::abs(r.reference) : 1.0;
    EXPECT_EQ(r.passed, std::abs(r.computed - r.reference) <= r.tolerance * scale) << r.name;
    EXPECT_GE(r.tolerance, 0.0);
  }
  EXPECT_TRUE(std::is_sorted(results.begin(), results.end(),
                             [](const auto& a, const auto& b) { return a.name < b.name; }));
}

TEST(Suite, Deterministic) {
  auto a = run_verification_suite();
  auto b = run_verification_suite();
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].name, b[i].name);
    EXPECT_EQ(a[i].computed, b[i].computed);
  }
}

TEST(Suite, OnlyFilter) {
  auto r = run_verification_suite("wrap_constant");
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].name, "wrap_constant");
  EXPECT_THROW(run_verification_suite("no_such_check"), DomainError);
}

TEST(Suite, EveryClosedFormIsAnchored) {
  std::set<std::string> covered;
  std::set<std::string> names;
  for (const auto& c : verification_checks()) {
    EXPECT_TRUE(names.insert(c.name).second) << "duplicate check " << c.name;
    covered.insert(c.covers.begin(), c.covers.end());
  }
  for (const auto& name : closed_form_catalog()) EXPECT_TRUE(covered.count(name)) << name;
}

TEST(Suite, ResultTolerancesExplicit) {
  auto r = make_result("x", 1.0, 1.1, 0.05, true);
  EXPECT_FALSE(r.passed);
  EXPECT_TRUE(make_result("y", 1.0, 1.1, 0.1, true).passed);
  EXPECT_TRUE(make_result("z", 1.0, 1.0, 0.0).passed);
  EXPECT_FALSE(make_result("n", std::nan(""), 1.0, 1.0).passed);
}
