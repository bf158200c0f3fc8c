#include "wavebound/gp.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <limits>
#include <mutex>
#include <numbers>
#include <ostream>
#include <random>

#include "wavebound/errors.hpp"
#include "wavebound/random.hpp"

namespace wavebound {

namespace {

constexpr double kPi = std::numbers::pi;

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

void validate(const TimeGrid& grid, const SynthesisConfig& cfg) {
  if (grid.n < 1) throw GridError("sample_waveform: grid needs n >= 1");
  if (!(grid.dt > 0.0) || !std::isfinite(grid.dt)) throw GridError("sample_waveform: grid dt must be positive");
  if (!std::isfinite(grid.t0)) throw GridError("sample_waveform: grid t0 must be finite");
  if (!(cfg.omega_max > 0.0) || !std::isfinite(cfg.omega_max)) {
    throw DomainError("sample_waveform: omega_max must be positive");
  }
  if (cfg.n_modes < 2) throw DomainError("sample_waveform: n_modes must be at least 2");
}

struct Modes {
  double dw;
  std::vector<double> sigma;
  std::vector<double> a;
  std::vector<double> b;
};

Modes draw_modes(const PowerLawSpectrum& s, const SynthesisConfig& cfg, std::uint64_t stream) {
  Modes m;
  m.dw = cfg.omega_max / static_cast<double>(cfg.n_modes);
  m.sigma.resize(cfg.n_modes);
  m.a.resize(cfg.n_modes);
  m.b.resize(cfg.n_modes);
  Philox4x32 rng(cfg.seed, stream);
  std::normal_distribution<double> normal;
  for (std::size_t j = 0; j < cfg.n_modes; ++j) {
    const double w = (static_cast<double>(j) + 0.5) * m.dw;
    m.sigma[j] = std::sqrt(spectral_density(s, w) * m.dw / kPi);
    m.a[j] = normal(rng);
    m.b[j] = normal(rng);
  }
  return m;
}

bool under_resolved(const PowerLawSpectrum& s, const TimeGrid& grid, const SynthesisConfig& cfg) {
  const double span = static_cast<double>(grid.n) * grid.dt;
  return cfg.omega_max < 20.0 * std::max(s.gamma(), kPi / span);
}

// L with dw dt = 2 pi / L, or 0 when not an integer large enough.
std::size_t fft_length(const TimeGrid& grid, const SynthesisConfig& cfg) {
  const double dw = cfg.omega_max / static_cast<double>(cfg.n_modes);
  const double L = 2.0 * kPi / (dw * grid.dt);
  const double r = std::round(L);
  if (std::abs(L - r) > 1e-9 * r || r > 1e9) return 0;
  const auto len = static_cast<std::size_t>(r);
  if (len < grid.n || len < cfg.n_modes) return 0;
  return len;
}

void fill_fft(const Modes& m, const TimeGrid& grid, std::size_t len, std::vector<double>& out) {
  auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * len));
  if (buf == nullptr) throw std::bad_alloc();
  for (std::size_t j = 0; j < len; ++j) {
    buf[j][0] = 0.0;
    buf[j][1] = 0.0;
  }
  for (std::size_t j = 0; j < m.sigma.size(); ++j) {
    const double w = (static_cast<double>(j) + 0.5) * m.dw;
    const std::complex<double> c =
        m.sigma[j] * std::complex<double>(m.a[j], -m.b[j]) * std::polar(1.0, std::fmod(w * grid.t0, 2.0 * kPi));
    buf[j][0] = c.real();
    buf[j][1] = c.imag();
  }
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(len), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  out.resize(grid.n);
  for (std::size_t k = 0; k < grid.n; ++k) {
    const std::complex<double> shift = std::polar(1.0, kPi * static_cast<double>(k) / static_cast<double>(len));
    out[k] = std::real(shift * std::complex<double>(buf[k][0], buf[k][1]));
  }
  fftw_free(buf);
}

void fill_direct(const Modes& m, const TimeGrid& grid, std::vector<double>& out) {
  out.assign(grid.n, 0.0);
  for (std::size_t k = 0; k < grid.n; ++k) {
    const double t = grid.t0 + grid.dt * static_cast<double>(k);
    double x = 0.0;
    for (std::size_t j = 0; j < m.sigma.size(); ++j) {
      const double phase = (static_cast<double>(j) + 0.5) * m.dw * t;
      x += m.sigma[j] * (m.a[j] * std::cos(phase) + m.b[j] * std::sin(phase));
    }
    out[k] = x;
  }
}

}  // namespace

WaveformTrace sample_waveform(const PowerLawSpectrum& s, const TimeGrid& grid, const SynthesisConfig& cfg,
                              std::uint64_t stream) {
  validate(grid, cfg);
  const std::size_t len = fft_length(grid, cfg);
  if (len == 0) return sample_waveform_direct(s, grid, cfg, stream);
  WaveformTrace tr{grid.t0, grid.dt, {}, under_resolved(s, grid, cfg)};
  fill_fft(draw_modes(s, cfg, stream), grid, len, tr.values);
  return tr;
}

WaveformTrace sample_waveform_direct(const PowerLawSpectrum& s, const TimeGrid& grid,
                                     const SynthesisConfig& cfg, std::uint64_t stream) {
  validate(grid, cfg);
  WaveformTrace tr{grid.t0, grid.dt, {}, under_resolved(s, grid, cfg)};
  fill_direct(draw_modes(s, cfg, stream), grid, tr.values);
  return tr;
}

std::size_t next_fast_size(std::size_t n) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::size_t a = 1; a < 2 * n + 2; a *= 2) {
    for (std::size_t b = a; b < 2 * n + 2; b *= 3) {
      for (std::size_t c = b; c < 2 * n + 2; c *= 5) {
        if (c >= n && c < best) best = c;
      }
    }
  }
  return best;
}

SynthesisConfig commensurate_synthesis(double dt, std::size_t n, std::uint64_t seed, double oversize) {
  if (!(dt > 0.0)) throw GridError("commensurate_synthesis: dt must be positive");
  const auto target = static_cast<std::size_t>(std::ceil(oversize * static_cast<double>(n)));
  std::size_t len = next_fast_size(std::max<std::size_t>(target, 4));
  if (len % 2 != 0) len = next_fast_size(len + 1);
  return {kPi / dt, len / 2, seed};
}

double synthesized_variance(const PowerLawSpectrum& s, const SynthesisConfig& cfg) {
  const double dw = cfg.omega_max / static_cast<double>(cfg.n_modes);
  double v = 0.0;
  for (std::size_t j = 0; j < cfg.n_modes; ++j) {
    v += spectral_density(s, (static_cast<double>(j) + 0.5) * dw);
  }
  return v * dw / kPi;
}

CovarianceEstimate empirical_autocovariance(std::span<const WaveformTrace> traces, long lag_steps) {
  if (traces.size() < 2) throw InsufficientDataError("empirical_autocovariance: needs at least 2 traces");
  const WaveformTrace& ref = traces.front();
  for (const WaveformTrace& t : traces) {
    if (t.values.size() != ref.values.size() || t.dt != ref.dt || t.t0 != ref.t0) {
      throw GridError("empirical_autocovariance: traces do not share a grid");
    }
  }
  const std::size_t lag = static_cast<std::size_t>(std::abs(lag_steps));
  if (lag >= ref.values.size()) throw InsufficientDataError("empirical_autocovariance: lag exceeds grid");
  const std::size_t pairs = ref.values.size() - lag;
  std::vector<double> per(traces.size());
  double total = 0.0;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const std::vector<double>& v = traces[i].values;
    double acc = 0.0;
    for (std::size_t k = 0; k < pairs; ++k) acc += v[k] * v[k + lag];
    per[i] = acc / static_cast<double>(pairs);
    total += per[i];
  }
  const double n = static_cast<double>(traces.size());
  const double mean = total / n;
  double ss = 0.0;
  for (double c : per) {
    const double loo = (total - c) / (n - 1.0);
    ss += (loo - mean) * (loo - mean);
  }
  return {mean, std::sqrt((n - 1.0) / n * ss)};
}

void write_csv(std::ostream& os, const WaveformTrace& trace) {
  os << "t,x\n";
  os << std::setprecision(17);
  for (std::size_t i = 0; i < trace.values.size(); ++i) os << trace.time(i) << ',' << trace.values[i] << '\n';
}

}  // namespace wavebound
