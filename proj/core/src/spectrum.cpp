#include "wavebound/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "wavebound/errors.hpp"
#include "wavebound/quadrature.hpp"

namespace wavebound {

namespace {

constexpr double kPi = std::numbers::pi;

// Asymptotic cut for the oscillatory tails: Omega * tau >= kOscCut.
constexpr double kOscCut = 200.0;

// Expansion S(w) = sum_j c_j w^-s_j valid for w > gamma.
struct TailSeries {
  std::vector<double> c;
  std::vector<double> s;
};

TailSeries tail_series(const PowerLawSpectrum& sp, double a) {
  TailSeries ts;
  const double p = sp.p();
  const double ratio = std::pow(sp.gamma() / a, p);
  double c = std::pow(sp.kappa(), p - 1.0);
  double mag = 1.0;
  for (int j = 0; j < 400; ++j) {
    ts.c.push_back(c);
    ts.s.push_back(p * (j + 1));
    c *= -std::pow(sp.gamma(), p);
    mag *= ratio;
    if (mag < 1e-18) break;
  }
  return ts;
}

// int_a^inf S(w) cos(w tau) dw for a * tau >= kOscCut, by repeated integration by parts.
double cosine_tail(const PowerLawSpectrum& sp, double a, double tau) {
  const TailSeries ts = tail_series(sp, a);
  const double x = a * tau;
  std::vector<double> amp(ts.c.size());
  for (std::size_t j = 0; j < ts.c.size(); ++j) amp[j] = ts.c[j] * std::pow(a, -ts.s[j]);
  std::complex<double> sum = 0.0;
  std::complex<double> ipow = 1.0;  // (i x)^-k
  const std::complex<double> inv_ix = 1.0 / std::complex<double>(0.0, x);
  for (int k = 0; k < 80; ++k) {
    double ak = 0.0;
    for (std::size_t j = 0; j < amp.size(); ++j) ak += amp[j];
    const std::complex<double> term = ak * ipow;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    for (std::size_t j = 0; j < amp.size(); ++j) amp[j] *= (ts.s[j] + k);
    ipow *= inv_ix;
  }
  const std::complex<double> phase = std::polar(1.0, std::fmod(x, 2.0 * kPi));
  return std::real(-phase * sum / std::complex<double>(0.0, tau));
}

std::vector<double> geometric_points(double gamma, double lo, double hi) {
  std::vector<double> pts;
  for (int k = -12;; ++k) {
    const double w = std::ldexp(gamma, k);
    if (w >= hi) break;
    if (w > lo) pts.push_back(w);
  }
  return pts;
}

}  // namespace

PowerLawSpectrum::PowerLawSpectrum(double p, double kappa, double gamma)
    : p_(p), kappa_(kappa), gamma_(gamma) {
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("spectrum: p must satisfy p > 1");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw DomainError("spectrum: kappa must satisfy kappa > 0");
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw DomainError("spectrum: gamma must satisfy gamma > 0");
  }
}

double spectral_density(const PowerLawSpectrum& s, double omega) {
  return std::pow(s.kappa(), s.p() - 1.0) /
         (std::pow(std::abs(omega), s.p()) + std::pow(s.gamma(), s.p()));
}

double prior_variance(const PowerLawSpectrum& s) {
  const double p = s.p();
  return std::pow(s.kappa() / s.gamma(), p - 1.0) / (p * std::sin(kPi / p));
}

double spectral_tail(const PowerLawSpectrum& s, double a) {
  if (!(a >= 0.0)) throw DomainError("spectral_tail: lower limit must be non-negative");
  const double cut = 2.0 * s.gamma();
  double head = 0.0;
  if (a < cut) {
    std::vector<double> pts{a};
    for (double w : geometric_points(s.gamma(), a, cut)) pts.push_back(w);
    pts.push_back(cut);
    QuadratureOptions opts;
    opts.rel_tol = 1e-13;
    head = integrate([&s](double w) { return spectral_density(s, w); }, pts, opts).value;
    a = cut;
  }
  const TailSeries ts = tail_series(s, a);
  double tail = 0.0;
  for (std::size_t j = 0; j < ts.c.size(); ++j) {
    tail += ts.c[j] * std::pow(a, 1.0 - ts.s[j]) / (ts.s[j] - 1.0);
  }
  return head + tail;
}

double spectral_integral(const PowerLawSpectrum& s, double c0, std::span<const CosineTerm> terms,
                         const std::function<double(double)>& weight) {
  double tau_min = 0.0;
  double tau_max = 0.0;
  double wsum = std::abs(c0);
  for (const CosineTerm& t : terms) {
    const double tau = std::abs(t.tau);
    wsum += std::abs(t.weight);
    if (tau == 0.0) continue;
    tau_min = tau_min == 0.0 ? tau : std::min(tau_min, tau);
    tau_max = std::max(tau_max, tau);
  }
  double omega = 8.0 * s.gamma();
  if (tau_min > 0.0) omega = std::max(omega, kOscCut / tau_min);

  std::vector<double> pts{0.0};
  for (double w : geometric_points(s.gamma(), 0.0, omega)) pts.push_back(w);
  if (tau_max > 0.0) {
    const double h = kPi / tau_max;
    const double count = omega / h;
    if (count > 2e5) throw QuadratureError("spectral_integral: too many oscillation panels");
    for (int j = 1; j * h < omega; ++j) pts.push_back(j * h);
  }
  pts.push_back(omega);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  QuadratureOptions opts;
  opts.rel_tol = 1e-12;
  opts.abs_tol = 1e-16 * kPi * prior_variance(s) * wsum;
  opts.max_intervals = static_cast<int>(pts.size()) + 50000;
  const double finite =
      integrate([&](double w) { return spectral_density(s, w) * weight(w); }, pts, opts).value;

  double tail = c0 == 0.0 ? 0.0 : c0 * spectral_tail(s, omega);
  for (const CosineTerm& t : terms) {
    const double tau = std::abs(t.tau);
    tail += t.weight * (tau == 0.0 ? spectral_tail(s, omega) : cosine_tail(s, omega, tau));
  }
  return finite + tail;
}

double autocovariance(const PowerLawSpectrum& s, double tau) {
  tau = std::abs(tau);
  const CosineTerm term{1.0, tau};
  return spectral_integral(s, 0.0, std::span(&term, 1),
                           [tau](double w) { return std::cos(w * tau); }) /
         kPi;
}

double p3_factor(double p) { return (p + 1.0) * (p + 2.0) * (p + 3.0); }

QuadraticForm inverse_quadratic_form(const PowerLawSpectrum& s, double T) {
  if (!(T > 0.0)) throw DomainError("inverse_quadratic_form: T must be positive");
  const double p = s.p();
  const double p3 = p3_factor(p);
  const double kp = std::pow(s.kappa(), p - 1.0);
  const double leading = 8.0 * kPi / (p3 * kp * std::pow(T, p - 1.0));
  const double full = leading + 4.0 * kPi * std::pow(s.gamma(), p) * T / (3.0 * kp);
  return {leading, full, p3};
}

double tail_quadratic_form_bound(const TailSpectrumBound& tb, double T) {
  if (!(tb.p > 1.0)) throw DomainError("tail_quadratic_form_bound: p must satisfy p > 1");
  if (!(tb.kappa > 0.0) || !(tb.w0 > 0.0) || !(tb.G > 0.0)) {
    throw DomainError("tail_quadratic_form_bound: kappa, w0, G must be positive");
  }
  if (!(T > 0.0)) throw DomainError("tail_quadratic_form_bound: T must be positive");
  if (tb.kappa * tb.w0 > 1.0 / T) {
    throw DomainError("tail_quadratic_form_bound: crossover kappa*w0 lies beyond 1/T");
  }
  const double head = std::isinf(tb.G) ? 0.0 : 4.0 * kPi * T * T * tb.kappa * tb.kappa * tb.w0 / tb.G;
  return head + 8.0 * kPi / (p3_factor(tb.p) * std::pow(tb.kappa, tb.p - 1.0) * std::pow(T, tb.p - 1.0));
}

double increment_variance(const PowerLawSpectrum& s, double delta) {
  if (!(delta >= 0.0)) throw DomainError("increment_variance: delta must be non-negative");
  if (delta == 0.0) return 0.0;
  const CosineTerm term{-1.0, delta};
  const double half = 0.5 * delta;
  return 2.0 / kPi *
         spectral_integral(s, 1.0, std::span(&term, 1), [half](double w) {
           const double v = std::sin(w * half);
           return 2.0 * v * v;
         });
}

double increment_variance_bound(const PowerLawSpectrum& s, double delta) {
  if (!(delta > 0.0)) throw DomainError("increment_variance_bound: delta must be positive");
  const double p = s.p();
  const double kd = s.kappa() * delta;
  if (std::abs(p - 2.0) < 1e-12) return kd;
  if (p < 3.0 - 1e-12) {
    return std::pow(kd, p - 1.0) * (-2.0 * std::tgamma(1.0 - p) * std::sin(kPi * p / 2.0)) / kPi;
  }
  const double gd = s.gamma() * delta;
  if (!(gd < 1.0)) throw DomainError("increment_variance_bound: needs gamma*delta < 1 for p >= 3");
  if (std::abs(p - 3.0) < 1e-12) {
    // Flat spectrum below gamma contributes (kd)^2/(3 pi); the constant of the
    // log expansion above gamma is at most 2/pi.
    return kd * kd / kPi * std::log(1.0 / gd) + 7.0 / (3.0 * kPi) * kd * kd;
  }
  if (p >= 5.0) throw DomainError("increment_variance_bound: requires p < 5");
  const double low = kd * kd * p * std::pow(s.gamma() / s.kappa(), 3.0 - p) / (3.0 * kPi * (p - 3.0));
  const double gs = std::abs(p - 4.0) < 1e-9 ? -kPi / 4.0
                                             : std::tgamma(2.0 - p) * std::sin(kPi * p / 2.0);
  const double high = 2.0 / kPi * std::pow(kd, p - 1.0) * gs / (p - 1.0);
  // Quartic remainder of 1 - cos over [0, gamma].
  const double slack = 2.0 / kPi * std::pow(s.kappa(), p - 1.0) * std::pow(s.gamma(), 5.0 - p) *
                       std::pow(delta, 4.0) / (24.0 * (5.0 - p));
  return low + high + slack;
}

double yovits_jackson_error(const PowerLawSpectrum& s, double R) {
  if (!(R > 0.0)) throw DomainError("yovits_jackson_error: R must be positive");
  const double cross = std::pow(std::pow(s.kappa(), s.p() - 1.0) / R, 1.0 / s.p());
  const double omega = 10.0 * std::max(s.gamma(), cross);
  auto f = [&](double w) { return std::log1p(spectral_density(s, w) / R); };
  std::vector<double> pts{0.0};
  for (double w : geometric_points(s.gamma(), 0.0, omega)) pts.push_back(w);
  for (int k = -6; k <= 0; ++k) {
    const double w = std::ldexp(cross, k);
    if (w < omega) pts.push_back(w);
  }
  pts.push_back(omega);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  QuadratureOptions opts;
  opts.rel_tol = 1e-11;
  const double finite = integrate(f, pts, opts).value;
  const double tail = integrate_power_tail(f, omega, s.p(), opts).value;
  return R / kPi * (finite + tail);
}

}  // namespace wavebound
