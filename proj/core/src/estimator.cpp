#include "wavebound/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "wavebound/errors.hpp"
#include "wavebound/specfun.hpp"

namespace wavebound {

namespace {

constexpr double kPi = std::numbers::pi;

double taper_weight(double r, Taper taper) {
  if (taper == Taper::none || r <= 0.5) return 1.0;
  if (r >= 1.0) return 0.0;
  return 0.5 * (1.0 + std::cos(kPi * (2.0 * r - 1.0)));
}

// Weights for offsets d = -M+1 .. M relative to the sample below t, at fractional position f.
std::vector<double> kernel(double f, int M, Taper taper) {
  std::vector<double> w(2 * static_cast<std::size_t>(M), 0.0);
  if (f == 0.0) {
    w[M - 1] = 1.0;
    return w;
  }
  const double sf = std::sin(kPi * f);
  for (int i = 0; i < 2 * M; ++i) {
    const int d = i - M + 1;
    const double u = f - d;
    const double sign = (d % 2 == 0) ? 1.0 : -1.0;
    w[i] = sign * sf / (kPi * u) * taper_weight(std::abs(u) / M, taper);
  }
  return w;
}

double apply(std::span<const double> w, std::span<const double> s, std::size_t j, int M) {
  const double c = s[j];
  const double* base = s.data() + j - (M - 1);
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * (base[i] - c);
  return c + acc;
}

int check_truncation(const InterpolationOptions& opts) {
  if (opts.truncation < 1) throw DomainError("interpolate: truncation M must be at least 1");
  return opts.truncation;
}

// Number of grid steps per pulse period.
std::size_t steps_per_period(double period, double dt) {
  const double k = period / dt;
  const double r = std::round(k);
  if (r < 1.0 || std::abs(k - r) > 1e-9 * r) {
    throw GridError("pulse period is not an integer multiple of the trace step");
  }
  return static_cast<std::size_t>(r);
}

}  // namespace

std::string_view to_string(Mode m) { return m == Mode::plain ? "plain" : "periodic"; }

Mode parse_mode(std::string_view s) {
  if (s == "plain") return Mode::plain;
  if (s == "periodic") return Mode::periodic;
  throw DomainError("mode must be plain or periodic, got '" + std::string(s) + "'");
}

std::string_view to_string(Taper t) { return t == Taper::none ? "none" : "tukey"; }

Taper parse_taper(std::string_view s) {
  if (s == "none") return Taper::none;
  if (s == "tukey") return Taper::tukey;
  throw DomainError("taper must be none or tukey, got '" + std::string(s) + "'");
}

double noise_variance_coefficient() {
  const double z = constants().airy_root_mag;
  return 4.0 / 27.0 * z * z * z;
}

double optimal_pulse_period(double p, double kappa, double flux) {
  if (!(p > 1.0)) throw DomainError("optimal_pulse_period: p must satisfy p > 1");
  if (!(kappa > 0.0)) throw DomainError("optimal_pulse_period: kappa must be positive");
  if (!(flux > 0.0)) throw DomainError("optimal_pulse_period: flux must be positive");
  return std::pow(noise_variance_coefficient() * std::pow(kPi, p) / (flux * flux * std::pow(kappa, p - 1.0)),
                  1.0 / (p + 1.0));
}

double measurement_noise_std(double flux, double period) {
  const double nt = flux * period;
  if (!(nt > 0.0)) throw DomainError("measurement_noise_std: flux*period must be positive");
  return std::sqrt(noise_variance_coefficient()) / nt;
}

std::vector<double> unwrap_estimates(std::span<const double> raw) {
  std::vector<double> out(raw.size());
  if (raw.empty()) return out;
  out[0] = raw[0];
  double turns = 0.0;
  for (std::size_t n = 1; n < raw.size(); ++n) {
    const double next = out[n - 1] + modulo_2pi(raw[n] - raw[n - 1]);
    turns = std::round((next - raw[n]) / (2.0 * kPi));
    out[n] = raw[n] + 2.0 * kPi * turns;
  }
  return out;
}

MeasurementRecord simulate_measurements(const WaveformTrace& trace, const ProbeConfig& probe, Philox4x32& rng,
                                        Mode mode, std::optional<double> noise_std) {
  validate(probe);
  if (trace.values.empty()) throw GridError("simulate_measurements: empty trace");
  const std::size_t k = steps_per_period(probe.pulse_period, trace.dt);
  const std::size_t pulses = (trace.values.size() - 1) / k + 1;
  const double sd = noise_std ? *noise_std : measurement_noise_std(probe.flux, probe.pulse_period);
  if (!(sd >= 0.0)) throw DomainError("simulate_measurements: noise std must be non-negative");

  MeasurementRecord rec;
  rec.period = probe.pulse_period;
  rec.t0 = trace.t0;
  rec.noise_std = sd;
  rec.mode = mode;
  rec.raw.resize(pulses);
  rec.noise.resize(pulses);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t n = 0; n < pulses; ++n) {
    const double x = trace.values[n * k];
    const double xi = sd * normal(rng);
    if (mode == Mode::plain) {
      rec.raw[n] = x + xi;
      rec.noise[n] = xi;
    } else {
      rec.raw[n] = modulo_2pi(x + xi);
      rec.noise[n] = modulo_2pi(rec.raw[n] - x);
    }
  }
  rec.unwrapped = mode == Mode::plain ? rec.raw : unwrap_estimates(rec.raw);
  return rec;
}

double interpolate_samples(std::span<const double> samples, double t0, double period, double t,
                           const InterpolationOptions& opts) {
  const int M = check_truncation(opts);
  if (!(period > 0.0)) throw DomainError("interpolate: period must be positive");
  const double x = (t - t0) / period;
  const double nearest = std::round(x);
  if (std::abs(x - nearest) < 1e-12) {
    if (nearest < 0.0 || nearest >= static_cast<double>(samples.size())) {
      throw InsufficientDataError("interpolate: sample time outside record");
    }
    return samples[static_cast<std::size_t>(nearest)];
  }
  const double jf = std::floor(x);
  if (jf - M + 1 < 0.0 || jf + M >= static_cast<double>(samples.size())) {
    throw InsufficientDataError("interpolate: t lies within M samples of the record boundary");
  }
  const auto j = static_cast<std::size_t>(jf);
  return apply(kernel(x - jf, M, opts.taper), samples, j, M);
}

double interpolate(const MeasurementRecord& record, double t, const InterpolationOptions& opts) {
  return interpolate_samples(record.unwrapped, record.t0, record.period, t, opts);
}

ErrorBudget mse_summary(const MeasurementRecord& record, const WaveformTrace& truth,
                        const InterpolationOptions& opts) {
  const int M = check_truncation(opts);
  const std::size_t K = steps_per_period(record.period, truth.dt);
  if (std::abs(record.t0 - truth.t0) > 1e-12 * std::max(1.0, std::abs(truth.t0))) {
    throw GridError("mse_summary: record and truth start at different times");
  }
  const std::size_t P = record.unwrapped.size();
  if (record.noise.size() != P) throw GridError("mse_summary: record noise length mismatch");
  if (truth.values.size() < (P - 1) * K + 1) throw GridError("mse_summary: truth shorter than record");
  if (P < 2 * static_cast<std::size_t>(M) + 1) {
    throw InsufficientDataError("mse_summary: record needs at least 2M+1 pulses, has " + std::to_string(P));
  }
  const std::size_t first = static_cast<std::size_t>(M);
  const std::size_t last = P - 1 - static_cast<std::size_t>(M);  // inclusive
  const std::size_t intervals = last - first + 1;

  std::vector<double> truth_samples(P);
  std::vector<double> kn(P);
  for (std::size_t n = 0; n < P; ++n) {
    truth_samples[n] = truth.values[n * K];
    kn[n] = record.mode == Mode::plain
                ? 0.0
                : std::round((record.unwrapped[n] - truth_samples[n] - record.noise[n]) / (2.0 * kPi));
  }

  ErrorBudget b;
  for (std::size_t n = 1; n < P; ++n) {
    if (kn[n] != kn[n - 1]) ++b.wrap_events;
  }
  b.steps = P - 1;

  std::vector<std::vector<double>> table(K);
  for (std::size_t k = 0; k < K; ++k) table[k] = kernel(static_cast<double>(k) / K, M, opts.taper);

  const std::size_t batches = std::min<std::size_t>(8, intervals);
  std::vector<double> batch_sum(batches, 0.0);
  std::vector<std::size_t> batch_count(batches, 0);
  double s_alias = 0.0, s_noise = 0.0, s_wrap = 0.0, s_plain = 0.0, s_mod = 0.0;
  double max_dev = 0.0;
  for (std::size_t j = first; j <= last; ++j) {
    const std::size_t batch = (j - first) * batches / intervals;
    for (std::size_t n = j - M + 1; n <= j + M; n += M) {
      max_dev = std::max(max_dev, std::abs(record.unwrapped[n] - record.unwrapped[j]));
    }
    for (std::size_t k = 0; k < K; ++k) {
      const std::vector<double>& w = table[k];
      const double x = truth.values[j * K + k];
      const double est = apply(w, record.unwrapped, j, M);
      const double e = est - x;
      const double em = modulo_2pi(e);
      const double ea = apply(w, truth_samples, j, M) - x;
      const double en = apply(w, record.noise, j, M);
      double ew = 0.0;
      if (record.mode == Mode::periodic) ew = modulo_2pi(2.0 * kPi * apply(w, kn, j, M));
      s_alias += ea * ea;
      s_noise += en * en;
      s_wrap += ew * ew;
      s_plain += e * e;
      s_mod += em * em;
      batch_sum[batch] += record.mode == Mode::plain ? e * e : em * em;
      ++batch_count[batch];
    }
  }
  const double count = static_cast<double>(intervals * K);
  b.points = intervals * K;
  b.aliasing = s_alias / count;
  b.noise = s_noise / count;
  b.wrap = s_wrap / count;
  b.total_plain = s_plain / count;
  b.total_modulo = s_mod / count;
  b.truncation_scale = max_dev / (kPi * M);
  if (batches >= 2) {
    double mean = 0.0;
    std::vector<double> bm(batches);
    for (std::size_t i = 0; i < batches; ++i) {
      bm[i] = batch_sum[i] / static_cast<double>(batch_count[i]);
      mean += bm[i];
    }
    mean /= static_cast<double>(batches);
    double ss = 0.0;
    for (double v : bm) ss += (v - mean) * (v - mean);
    b.ci_halfwidth = 1.96 * std::sqrt(ss / static_cast<double>(batches - 1) / static_cast<double>(batches));
  }
  return b;
}

AliasingError aliasing_error_closed_form(const PowerLawSpectrum& s, double period) {
  if (!(period > 0.0)) throw DomainError("aliasing_error_closed_form: period must be positive");
  if (s.gamma() * period >= kPi / 10.0) {
    throw RegimeError("aliasing_error_closed_form: gamma*T must be below pi/10");
  }
  const double p = s.p();
  const double exact = 2.0 / kPi * spectral_tail(s, kPi / period);
  const double approx = 2.0 * std::pow(s.kappa() * period, p - 1.0) / (std::pow(kPi, p) * (p - 1.0));
  return {exact, approx};
}

double predicted_total_error(double p, double kappa, double flux, double period) {
  if (!(p > 1.0) || !(kappa > 0.0) || !(flux > 0.0) || !(period > 0.0)) {
    throw DomainError("predicted_total_error: parameters must be positive and p > 1");
  }
  return 2.0 * std::pow(kappa * period, p - 1.0) / (std::pow(kPi, p) * (p - 1.0)) +
         noise_variance_coefficient() / ((flux * period) * (flux * period));
}

double achievable_coefficient(double p) {
  if (!(p > 1.0)) throw DomainError("achievable_coefficient: p must satisfy p > 1");
  return (p + 1.0) / (p - 1.0) * std::pow(noise_variance_coefficient(), (p - 1.0) / (p + 1.0)) *
         std::pow(kPi, -2.0 * p / (p + 1.0));
}

WrapBound wrap_error_bound(double flux, double period) {
  const double nt = flux * period;
  if (!(nt > 0.0)) throw DomainError("wrap_error_bound: flux*period must be positive");
  const double pe = 8.0 / (kPi * kPi) * noise_variance_coefficient() / (nt * nt);
  return {pe, pe * (1.0 - 1.0 / kPi)};
}

}  // namespace wavebound
