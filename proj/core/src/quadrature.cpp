#include "wavebound/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "wavebound/errors.hpp"

namespace wavebound {

namespace {

constexpr int kOrder = 15;

struct Rule {
  std::array<double, kOrder> x{};
  std::array<double, kOrder> w{};
};

Rule make_rule() {
  Rule r;
  for (int i = 0; i < kOrder; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (kOrder + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= kOrder; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = kOrder * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.x[i] = x;
    r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

const Rule& rule() {
  static const Rule r = make_rule();
  return r;
}

double gauss(const Integrand& f, double a, double b) {
  const Rule& r = rule();
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < kOrder; ++i) s += r.w[i] * f(c + h * r.x[i]);
  return s * h;
}

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel make_panel(const Integrand& f, double a, double b, double coarse) {
  const double m = 0.5 * (a + b);
  const double fine = gauss(f, a, m) + gauss(f, m, b);
  return {a, b, fine, std::abs(fine - coarse)};
}

}  // namespace

QuadratureResult integrate(const Integrand& f, std::span<const double> breakpoints,
                           const QuadratureOptions& opts) {
  std::vector<Panel> heap;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double a = breakpoints[i];
    const double b = breakpoints[i + 1];
    if (!(b > a)) continue;
    heap.push_back(make_panel(f, a, b, gauss(f, a, b)));
  }
  std::make_heap(heap.begin(), heap.end());
  auto resum = [&heap](double& total, double& err) {
    total = 0.0;
    err = 0.0;
    for (const Panel& p : heap) {
      total += p.value;
      err += p.error;
    }
  };
  double total = 0.0;
  double err = 0.0;
  resum(total, err);
  int splits = 0;
  while (!heap.empty()) {
    if (!std::isfinite(total)) throw QuadratureError("integrate: non-finite integrand");
    if (err <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total))) {
      resum(total, err);
      if (err <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total))) break;
    }
    std::pop_heap(heap.begin(), heap.end());
    const Panel worst = heap.back();
    heap.pop_back();
    const double m = 0.5 * (worst.a + worst.b);
    if (static_cast<int>(heap.size()) + 2 > opts.max_intervals || !(m > worst.a && m < worst.b)) {
      throw QuadratureError("integrate: tolerance not met within interval budget");
    }
    const Panel left = make_panel(f, worst.a, m, gauss(f, worst.a, m));
    const Panel right = make_panel(f, m, worst.b, gauss(f, m, worst.b));
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end());
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    if (++splits % 64 == 0) resum(total, err);
  }
  return {total, err, static_cast<int>(heap.size())};
}

QuadratureResult integrate(const Integrand& f, double a, double b,
                           const QuadratureOptions& opts) {
  if (a == b) return {0.0, 0.0, 0};
  if (b < a) {
    QuadratureResult r = integrate(f, b, a, opts);
    r.value = -r.value;
    return r;
  }
  const std::array<double, 2> pts{a, b};
  return integrate(f, pts, opts);
}

QuadratureResult integrate_power_tail(const Integrand& f, double a, double s,
                                      const QuadratureOptions& opts) {
  if (!(a > 0.0) || !(s > 1.0)) throw DomainError("integrate_power_tail: need a > 0, s > 1");
  const double e = 1.0 / (s - 1.0);
  const Integrand g = [&](double v) {
    if (v <= 0.0) return 0.0;
    const double w = a * std::pow(v, -e);
    return f(w) * a * e * std::pow(v, -e - 1.0);
  };
  // Geometric panels toward v = 0 where w grows quickly.
  std::vector<double> pts{0.0};
  for (int k = 30; k >= 1; --k) pts.push_back(std::ldexp(1.0, -k));
  pts.push_back(1.0);
  return integrate(g, pts, opts);
}

}  // namespace wavebound
