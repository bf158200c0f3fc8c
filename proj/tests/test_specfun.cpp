#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "wavebound/errors.hpp"
#include "wavebound/specfun.hpp"

using namespace wavebound;
using std::numbers::pi;

TEST(Triangle, Values) {
  EXPECT_EQ(triangle(0.0), 1.0);
  EXPECT_EQ(triangle(1.0), 0.0);
  EXPECT_EQ(triangle(-0.5), 0.5);
  EXPECT_EQ(triangle(3.0), 0.0);
}

TEST(Sinc, Values) {
  EXPECT_EQ(sinc(0.0), 1.0);
  EXPECT_NEAR(sinc(pi), 0.0, 1e-16);
  EXPECT_NEAR(sinc(pi / 2), 2.0 / pi, 1e-15);
}

TEST(Sinc, SmallArgumentMatchesSeries) {
  for (double x : {1e-9, 3e-6, 5e-5, 9.9e-5, 1.01e-4}) {
    double ref = 1.0 - x * x / 6.0 + x * x * x * x / 120.0;
    EXPECT_NEAR(sinc(x), ref, 1e-16) << x;
    EXPECT_EQ(sinc(-x), sinc(x));
  }
}

TEST(Sinc, IntegerOrthogonality) {
  for (int n = -10; n <= 10; ++n) {
    for (int m = -10; m <= 10; ++m) {
      double v = sinc(pi * (n - m));
      if (n == m) {
        EXPECT_EQ(v, 1.0);
      } else {
        EXPECT_NEAR(v, 0.0, 1e-15);
      }
    }
  }
}

TEST(Modulo2Pi, Values) {
  EXPECT_DOUBLE_EQ(modulo_2pi(0.3), 0.3);
  EXPECT_NEAR(modulo_2pi(3 * pi), pi, 1e-14);
  EXPECT_EQ(modulo_2pi(-pi), pi);
  EXPECT_EQ(modulo_2pi(pi), pi);
}

TEST(Modulo2Pi, PeriodicAndInRange) {
  for (double eps = -7.0; eps <= 7.0; eps += 0.137) {
    double base = modulo_2pi(eps);
    EXPECT_GT(base, -pi);
    EXPECT_LE(base, pi);
    for (int m = -5; m <= 5; ++m) {
      EXPECT_NEAR(modulo_2pi(eps + 2 * pi * m), base, 1e-12) << eps << " " << m;
    }
  }
}

TEST(Erfc, MatchesStdAndQuadrature) {
  for (double z = -6.0; z <= 6.0; z += 0.01) {
    EXPECT_NEAR(wavebound::erfc(z), std::erfc(z), 1e-12) << z;
  }
  double q = 2.0 / std::sqrt(pi) * oracle::simpson([](double t) { return std::exp(-t * t); }, 1.0, 12.0, 1e-15);
  EXPECT_NEAR(wavebound::erfc(1.0), q, 1e-13);
  EXPECT_NEAR(wavebound::erfc(1.0), 0.157299207050285, 1e-14);
  EXPECT_EQ(wavebound::erfc(0.0), 1.0);
  EXPECT_LT(wavebound::erfc(30.0), 1e-300);
}

TEST(Erfc, Monotone) {
  double prev = wavebound::erfc(-6.0);
  for (double z = -6.0; z <= 6.0; z += 1e-3) {
    double v = wavebound::erfc(z);
    EXPECT_LE(v, prev + 1e-16);
    prev = v;
  }
}

TEST(Erfc, TriangleLowerBound) {
  for (int i = 0; i <= 50000; ++i) {
    double z = 5.0 * i / 50000.0;
    EXPECT_GE(wavebound::erfc(z), triangle(2.0 * z / std::sqrt(pi))) << z;
  }
}

TEST(Digamma, Values) {
  EXPECT_NEAR(digamma(1.0), -0.57721566490153286, 1e-12);
  EXPECT_NEAR(digamma(0.5), -0.57721566490153286 - 2.0 * std::log(2.0), 1e-12);
  EXPECT_NEAR(digamma(0.25) - digamma(0.75), -pi, 1e-11);
}

TEST(Digamma, Recurrence) {
  for (double x : {0.5, 1.0, 2.7}) EXPECT_NEAR(digamma(x + 1) - digamma(x), 1.0 / x, 1e-10);
}

TEST(Digamma, MatchesLgammaDerivative) {
  for (double x = 0.05; x < 60.0; x *= 1.3) {
    double ref = oracle::digamma_fd(x + 6);
    for (int k = 0; k < 6; ++k) ref -= 1.0 / (x + k);
    EXPECT_NEAR(digamma(x), ref, 1e-8) << x;
  }
}

TEST(Digamma, RejectsNonPositive) {
  EXPECT_THROW(digamma(0.0), DomainError);
  EXPECT_THROW(digamma(-1.5), DomainError);
}

TEST(Lambda, RootAndEndpoints) {
  double l = solve_lambda();
  EXPECT_NEAR(l, 0.7246, 5e-5);
  EXPECT_LT(std::abs(lambda_residual(l)), 1e-12);
  EXPECT_NEAR(lambda_residual(0.0), -2.0, 1e-15);
  EXPECT_NEAR(lambda_residual(1.0), pi / 2 - 1, 1e-15);
  double direct = l * (pi - std::asin(l)) - 1.0 - std::sqrt(1.0 - l * l);
  EXPECT_LT(std::abs(direct), 1e-12);
}

TEST(Lambda, CosineLowerBound) {
  double l = constants().lambda;
  for (int i = 0; i <= 200000; ++i) {
    double t = -4 * pi + 8 * pi * i / 200000.0;
    EXPECT_GE(std::cos(t), 1.0 - l * std::abs(t) - 1e-15) << t;
  }
}

TEST(Lambda, TangentAtCriticalPoint) {
  // The bound touches cos at t = pi - asin(lambda).
  double l = constants().lambda;
  double t = pi - std::asin(l);
  EXPECT_NEAR(std::cos(t), 1.0 - l * t, 1e-12);
  EXPECT_NEAR(-std::sin(t), -l, 1e-12);
}

TEST(Airy, SeriesAtOrigin) {
  EXPECT_NEAR(airy_ai(0.0), 0.355028053887817239, 1e-15);
  double h = 1e-5;
  EXPECT_NEAR((airy_ai(h) - airy_ai(-h)) / (2 * h), -0.258819403792806798, 1e-9);
}

TEST(Airy, SatisfiesAiryEquation) {
  for (double x : {-2.5, -1.0, 0.3, 1.7}) {
    double h = 1e-3;
    double second = (airy_ai(x + h) - 2 * airy_ai(x) + airy_ai(x - h)) / (h * h);
    EXPECT_NEAR(second, x * airy_ai(x), 1e-6) << x;
  }
}

TEST(Airy, FirstRoot) {
  double r = airy_root_magnitude();
  EXPECT_NEAR(r, 2.338107410459767, 1e-9);
  EXPECT_LT(std::abs(airy_ai(-r)), 1e-10);
  EXPECT_NEAR(r * r * r, 12.7819, 1e-4);
  EXPECT_GT(airy_ai(-r + 0.01), 0.0);
  EXPECT_LT(airy_ai(-r - 0.01), 0.0);
}

TEST(Constants, Ranges) {
  const Constants& c = constants();
  EXPECT_GT(c.lambda, 0.0);
  EXPECT_LT(c.lambda, 1.0);
  EXPECT_GT(c.airy_root_mag, 2.3);
  EXPECT_LT(c.airy_root_mag, 2.4);
  EXPECT_EQ(&c, &constants());
}
