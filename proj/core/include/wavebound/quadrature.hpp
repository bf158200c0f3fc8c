#pragma once

#include <functional>
#include <span>

namespace wavebound {

struct QuadratureOptions {
  double abs_tol = 0.0;
  double rel_tol = 1e-10;
  int max_intervals = 20000;
};

struct QuadratureResult {
  double value;
  double error;
  int intervals;
};

using Integrand = std::function<double(double)>;

// Globally adaptive Gauss-Legendre bisection. Each panel is estimated with a
// 15-point rule on its two halves; the error is the difference to the rule on
// the whole panel. Throws QuadratureError if the interval budget runs out.
QuadratureResult integrate(const Integrand& f, double a, double b,
                           const QuadratureOptions& opts = {});

// Same, starting from the panels given by sorted breakpoints.
QuadratureResult integrate(const Integrand& f, std::span<const double> breakpoints,
                           const QuadratureOptions& opts = {});

// Integral over [a, inf) of an integrand decaying like w^-s, s > 1.
// Uses w = a v^(-1/(s-1)), which makes the transformed integrand finite at v = 0.
QuadratureResult integrate_power_tail(const Integrand& f, double a, double s,
                                      const QuadratureOptions& opts = {});

}  // namespace wavebound
