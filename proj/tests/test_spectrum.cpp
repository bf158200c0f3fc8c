#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "wavebound/errors.hpp"
#include "wavebound/spectrum.hpp"

using namespace wavebound;
using std::numbers::pi;

namespace {

// (1/pi) int_0^inf S(w) dw with w = gamma u / (1 - u).
double prior_variance_oracle(const PowerLawSpectrum& s) {
  auto g = [&](double u) {
    if (u >= 1.0) return 0.0;
    double w = s.gamma() * u / (1.0 - u);
    return spectral_density(s, w) * s.gamma() / ((1.0 - u) * (1.0 - u));
  };
  return oracle::simpson(g, 0.0, 1.0, 1e-14) / pi;
}

}  // namespace

TEST(PowerLawSpectrum, RejectsInvalidParameters) {
  EXPECT_THROW(PowerLawSpectrum(1.0, 1.0, 0.1), DomainError);
  EXPECT_THROW(PowerLawSpectrum(0.9, 1.0, 0.1), DomainError);
  EXPECT_THROW(PowerLawSpectrum(2.0, 0.0, 0.1), DomainError);
  EXPECT_THROW(PowerLawSpectrum(2.0, 1.0, 0.0), DomainError);
  EXPECT_THROW(PowerLawSpectrum(2.0, 1.0, -1.0), DomainError);
  EXPECT_THROW(PowerLawSpectrum(std::nan(""), 1.0, 1.0), DomainError);
}

TEST(SpectralDensity, Values) {
  EXPECT_DOUBLE_EQ(spectral_density({2, 1, 1}, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(spectral_density({2, 1, 1}, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(spectral_density({3, 2, 1}, 2.0), 4.0 / 9.0);
}

TEST(SpectralDensity, EvenPositiveNonincreasing) {
  for (double p : {1.2, 2.0, 2.5, 3.0, 4.0}) {
    PowerLawSpectrum s(p, 1.3, 0.2);
    double prev = spectral_density(s, 0.0);
    for (double w = 1e-3; w < 1e4; w *= 1.1) {
      double v = spectral_density(s, w);
      EXPECT_GT(v, 0.0);
      EXPECT_EQ(v, spectral_density(s, -w));
      EXPECT_LE(v, prev);
      prev = v;
    }
  }
}

TEST(PriorVariance, MatchesQuadrature) {
  for (double p : {2.0, 2.5, 3.0, 4.0}) {
    PowerLawSpectrum s(p, 0.7, 0.3);
    EXPECT_NEAR(prior_variance(s) / prior_variance_oracle(s), 1.0, 1e-9) << p;
  }
  EXPECT_NEAR(prior_variance({2, 1, 0.5}), 1.0, 1e-14);
}

TEST(Autocovariance, OrnsteinUhlenbeck) {
  PowerLawSpectrum s(2, 1, 0.5);
  EXPECT_NEAR(autocovariance(s, 0.0), 1.0, 1e-9);
  EXPECT_NEAR(autocovariance(s, 2.0), std::exp(-1.0), 1e-9);
  for (double gamma : {0.5, 0.01}) {
    PowerLawSpectrum t(2, 1, gamma);
    for (int i = 0; i <= 40; ++i) {
      double tau = 10.0 / gamma * i / 40.0;
      double ref = oracle::ou_covariance(1, gamma, tau);
      EXPECT_NEAR(autocovariance(t, tau) / ref, 1.0, 1e-6) << gamma << " " << tau;
    }
  }
}

TEST(Autocovariance, EvenAndBoundedByVariance) {
  for (double p : {1.5, 2.0, 3.0}) {
    PowerLawSpectrum s(p, 1.0, 0.2);
    double c0 = autocovariance(s, 0.0);
    EXPECT_NEAR(c0, prior_variance(s), 1e-8 * c0);
    for (double tau : {0.1, 1.0, 7.5, 30.0}) {
      double c = autocovariance(s, tau);
      EXPECT_NEAR(c, autocovariance(s, -tau), 1e-12 * c0);
      EXPECT_LE(std::abs(c), c0);
    }
  }
}

TEST(SpectralTail, OrnsteinUhlenbeck) {
  for (double gamma : {0.01, 1.0}) {
    PowerLawSpectrum s(2, 1.5, gamma);
    for (double a : {0.001, 0.05, 3.0, 400.0}) {
      EXPECT_NEAR(spectral_tail(s, a) / oracle::ou_spectral_tail(1.5, gamma, a), 1.0, 1e-9) << gamma << " " << a;
    }
  }
}

TEST(InverseQuadraticForm, ClosedFormTerms) {
  EXPECT_EQ(p3_factor(2.0), 60.0);
  auto q = inverse_quadratic_form({2, 1, 1e-12}, 1.0);
  EXPECT_NEAR(q.leading, 8 * pi / 60, 1e-15);
  EXPECT_NEAR(q.full, q.leading, 1e-12);
  auto r = inverse_quadratic_form({2, 1, 0.1}, 1.0);
  EXPECT_NEAR(r.full - r.leading, 4 * pi * 0.01 / 3, 1e-14);
}

TEST(InverseQuadraticForm, MatchesQuadrature) {
  for (double p : {1.5, 2.0, 3.0, 4.5}) {
    for (double T : {0.05, 1.0, 3.0}) {
      PowerLawSpectrum s(p, 0.8, 0.25);
      auto g = [&](double w) {
        double d = 1.0 - w * T;
        return d * d / spectral_density(s, w);
      };
      double num = 2 * pi * T * T * 2 * oracle::simpson(g, 0.0, 1.0 / T, 1e-14);
      EXPECT_NEAR(inverse_quadratic_form(s, T).full / num, 1.0, 1e-6) << p << " " << T;
    }
  }
}

TEST(TailQuadraticFormBound, Values) {
  double inf = std::numeric_limits<double>::infinity();
  EXPECT_NEAR(tail_quadratic_form_bound({2, 1, 1, inf}, 0.5), 8 * pi / (60 * 0.5), 1e-14);
  EXPECT_NEAR(tail_quadratic_form_bound({2, 1, 1, 1}, 0.1), 4 * pi * 0.01 + 8 * pi / (60 * 0.1), 1e-13);
  EXPECT_THROW(tail_quadratic_form_bound({2, 1, 1, 1}, 2.0), DomainError);
}

TEST(TailQuadraticFormBound, DominatesSpectraAboveProfile) {
  const double p = 2.5, kappa = 1.2, w0 = 0.7, G = 2.0;
  auto profile = [&](double w) {
    return std::abs(w) < kappa * w0 ? G / kappa : std::pow(kappa, p - 1) / std::pow(std::abs(w), p);
  };
  for (double T : {0.01, 0.1, 0.5, 1.0}) {
    auto g = [&](double w) {
      double d = 1.0 - w * T;
      return d * d / (profile(w) * (1.0 + 0.3 * std::cos(w) * std::cos(w)));
    };
    double cut = std::min(kappa * w0, 1.0 / T);
    double num = 4 * pi * T * T * (oracle::simpson(g, 0.0, cut, 1e-14) + oracle::simpson(g, cut, 1.0 / T, 1e-14));
    EXPECT_LE(num, tail_quadratic_form_bound({p, kappa, w0, G}, T)) << T;
  }
}

TEST(IncrementVariance, OrnsteinUhlenbeck) {
  PowerLawSpectrum s(2, 1, 0.5);
  EXPECT_EQ(increment_variance(s, 0.0), 0.0);
  EXPECT_NEAR(increment_variance(s, 1.0), 0.786938680574733, 1e-9);
  double prev = 0.0;
  for (double d = 0.01; d < 20; d *= 1.3) {
    double v = increment_variance(s, d);
    EXPECT_NEAR(v / oracle::ou_increment_variance(1, 0.5, d), 1.0, 1e-7);
    EXPECT_GE(v, prev);
    prev = v;
  }
}

TEST(IncrementVariance, ConsistentWithCovariance) {
  for (double p : {1.5, 3.0, 4.0}) {
    PowerLawSpectrum s(p, 1.0, 0.3);
    for (double d : {0.2, 2.0}) {
      double ref = 2 * (prior_variance(s) - autocovariance(s, d));
      EXPECT_NEAR(increment_variance(s, d), ref, 1e-7 * prior_variance(s)) << p << " " << d;
    }
  }
}

TEST(IncrementVarianceBound, PEqualsTwo) {
  EXPECT_DOUBLE_EQ(increment_variance_bound({2, 1, 0.01}, 0.3), 0.3);
  double up = increment_variance_bound({2 + 1e-4, 1, 0.01}, 0.3);
  double down = increment_variance_bound({2 - 1e-4, 1, 0.01}, 0.3);
  EXPECT_NEAR(0.5 * (up + down), 0.3, 1e-6);
}

TEST(IncrementVarianceBound, DominatesOnValidityGrid) {
  for (double p : {1.5, 2.0, 2.5, 3.0, 4.0}) {
    for (double gamma : {1e-3, 0.1}) {
      PowerLawSpectrum s(p, 1.0, gamma);
      for (double kd = 1e-3; kd <= 0.3 * (1 + 1e-9); kd *= std::pow(300.0, 1.0 / 12)) {
        EXPECT_LE(increment_variance(s, kd), increment_variance_bound(s, kd)) << p << " " << gamma << " " << kd;
      }
    }
  }
}

TEST(IncrementVarianceBound, TightAtSmallDelta) {
  PowerLawSpectrum s(2, 1, 0.01);
  EXPECT_NEAR(increment_variance(s, 1e-3) / increment_variance_bound(s, 1e-3), 1.0, 0.05);
}

TEST(IncrementVarianceBound, Domain) {
  EXPECT_THROW(increment_variance_bound({2, 1, 0.1}, 0.0), DomainError);
  EXPECT_THROW(increment_variance_bound({3, 1, 0.5}, 3.0), DomainError);
  EXPECT_THROW(increment_variance_bound({5.5, 1, 0.01}, 0.1), DomainError);
}

TEST(YovitsJackson, Limits) {
  for (double p : {2.0, 3.0}) {
    PowerLawSpectrum s(p, 1.0, 0.1);
    double s0 = spectral_density(s, 0.0);
    double var = autocovariance(s, 0.0);
    EXPECT_NEAR(yovits_jackson_error(s, 1e6 * s0) / var, 1.0, 1e-3);
    EXPECT_LT(yovits_jackson_error(s, 1e-9 * s0), 1e-3 * var);
  }
}

TEST(YovitsJackson, OrnsteinUhlenbeckClosedForm) {
  // R int dw/(2pi) ln(1 + k/(R(w^2+g^2))) = R (sqrt(g^2 + k/R) - g)
  for (double R : {1e-4, 0.01, 1.0, 50.0}) {
    double ref = R * (std::sqrt(0.04 + 1.0 / R) - 0.2);
    EXPECT_NEAR(yovits_jackson_error({2, 1, 0.2}, R) / ref, 1.0, 1e-7) << R;
  }
}

TEST(YovitsJackson, MonotoneInR) {
  PowerLawSpectrum s(2.5, 1.0, 0.05);
  double prev = 0.0;
  for (double R = 1e-6; R < 1e4; R *= 3) {
    double v = yovits_jackson_error(s, R);
    EXPECT_GE(v, prev);
    prev = v;
  }
}
