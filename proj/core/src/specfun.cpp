#include "wavebound/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wavebound/errors.hpp"

namespace wavebound {

namespace {

constexpr double kPi = std::numbers::pi;

double erf_series(double z) {
  // erf z = (2/sqrt(pi)) exp(-z^2) sum 2^n z^(2n+1) / (1*3*...*(2n+1))
  const double z2 = z * z;
  double term = z;
  double sum = z;
  for (int n = 1; n < 500; ++n) {
    term *= 2.0 * z2 / (2.0 * n + 1.0);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return 2.0 / std::sqrt(kPi) * std::exp(-z2) * sum;
}

double erfc_continued_fraction(double z) {
  // erfc z = exp(-z^2)/sqrt(pi) / (z + (1/2)/(z + 1/(z + (3/2)/(z + ...)))), modified Lentz.
  constexpr double tiny = 1e-300;
  double f = z;
  double c = z;
  double d = 0.0;
  for (int n = 1; n < 2000; ++n) {
    const double a = 0.5 * n;
    d = z + a * d;
    if (std::abs(d) < tiny) d = tiny;
    c = z + a / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-z * z) / std::sqrt(kPi) / f;
}

double airy_f(double x) {
  const double x3 = x * x * x;
  double t = 1.0;
  double s = 1.0;
  for (int k = 0; k < 200; ++k) {
    t *= x3 / ((3.0 * k + 2.0) * (3.0 * k + 3.0));
    s += t;
    if (std::abs(t) < 1e-18 * std::abs(s)) break;
  }
  return s;
}

double airy_g(double x) {
  const double x3 = x * x * x;
  double u = x;
  double s = x;
  for (int k = 0; k < 200; ++k) {
    u *= x3 / ((3.0 * k + 3.0) * (3.0 * k + 4.0));
    s += u;
    if (std::abs(u) < 1e-18 * std::abs(s)) break;
  }
  return s;
}

}  // namespace

double triangle(double z) { return std::max(1.0 - std::abs(z), 0.0); }

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0));
  }
  return std::sin(x) / x;
}

double modulo_2pi(double eps) {
  return eps + 2.0 * kPi * std::floor(0.5 - eps / (2.0 * kPi));
}

double erfc(double z) {
  if (std::isnan(z)) return z;
  if (z < 0.0) return 2.0 - erfc(-z);
  if (z < 2.5) return 1.0 - erf_series(z);
  if (z > 27.3) return 0.0;
  return erfc_continued_fraction(z);
}

double digamma(double x) {
  if (!(x > 0.0)) throw DomainError("digamma: argument must be positive");
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double r = 1.0 / (x * x);
  // Bernoulli terms B_2k / (2k x^2k), k = 1..7
  const double series =
      r * (1.0 / 12 -
           r * (1.0 / 120 -
                r * (1.0 / 252 -
                     r * (1.0 / 240 - r * (1.0 / 132 - r * (691.0 / 32760 - r / 12.0))))));
  return acc + std::log(x) - 0.5 / x - series;
}

double lambda_residual(double lambda) {
  return lambda * (kPi - std::asin(lambda)) - 1.0 - std::sqrt(1.0 - lambda * lambda);
}

double solve_lambda() {
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (lambda_residual(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double airy_ai(double x) {
  const double c1 = 1.0 / (std::cbrt(9.0) * std::tgamma(2.0 / 3.0));
  const double c2 = 1.0 / (std::cbrt(3.0) * std::tgamma(1.0 / 3.0));
  return c1 * airy_f(x) - c2 * airy_g(x);
}

double airy_root_magnitude() {
  double lo = -3.0;  // Ai(-3) < 0
  double hi = -2.0;  // Ai(-2) > 0
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (airy_ai(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return -0.5 * (lo + hi);
}

const Constants& constants() {
  static const Constants c{solve_lambda(), airy_root_magnitude()};
  return c;
}

}  // namespace wavebound
