#include "wavebound/simulation.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>
#include <vector>

#include "wavebound/bounds.hpp"
#include "wavebound/errors.hpp"
#include "wavebound/gp.hpp"

namespace wavebound {

namespace {

struct TrialResult {
  ErrorBudget budget;
  bool under_resolved = false;
};

TrialResult run_trial(const SimulationConfig& cfg, double period, std::size_t pulses, int trial) {
  const auto K = static_cast<std::size_t>(cfg.oversample);
  const double dt = period / static_cast<double>(K);
  const TimeGrid grid{0.0, dt, (pulses - 1) * K + 1};
  const SynthesisConfig syn = commensurate_synthesis(dt, grid.n, cfg.seed);
  const auto t = static_cast<std::uint64_t>(trial);
  const WaveformTrace truth = sample_waveform(cfg.spec, grid, syn, 2 * t);
  Philox4x32 rng(cfg.seed, 2 * t + 1);
  const MeasurementRecord rec =
      simulate_measurements(truth, {cfg.flux, period}, rng, cfg.mode, cfg.noise_std);
  return {mse_summary(rec, truth, cfg.interpolation), truth.under_resolved};
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double ci95(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  const double n = static_cast<double>(v.size());
  return 1.96 * std::sqrt(ss / (n - 1.0) / n);
}

}  // namespace

std::size_t minimum_pulses(int truncation) { return 2 * static_cast<std::size_t>(truncation) + 1; }

SimulationReport run_simulation(const SimulationConfig& cfg) {
  if (!(cfg.flux > 0.0) || !std::isfinite(cfg.flux)) throw DomainError("flux must be positive");
  if (cfg.trials < 1) throw DomainError("trials must be at least 1");
  if (cfg.oversample < 2) throw DomainError("oversample must be at least 2");
  if (cfg.intervals < 1) throw DomainError("intervals must be at least 1");
  if (cfg.interpolation.truncation < 1) throw DomainError("truncation must be at least 1");
  if (cfg.period && !(*cfg.period > 0.0)) throw DomainError("period must be positive");
  const double p = cfg.spec.p();
  const double kappa = cfg.spec.kappa();
  const double period = cfg.period ? *cfg.period : optimal_pulse_period(p, kappa, cfg.flux);
  const std::size_t pulses =
      cfg.pulses ? *cfg.pulses
                 : 2 * static_cast<std::size_t>(cfg.interpolation.truncation) + static_cast<std::size_t>(cfg.intervals);
  if (pulses < minimum_pulses(cfg.interpolation.truncation)) {
    throw InsufficientDataError("record of " + std::to_string(pulses) + " pulses is shorter than the " +
                                std::to_string(minimum_pulses(cfg.interpolation.truncation)) +
                                " needed for truncation margins");
  }

  std::vector<TrialResult> results(static_cast<std::size_t>(cfg.trials));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int i = next++; i < cfg.trials; i = next++) {
      try {
        results[static_cast<std::size_t>(i)] = run_trial(cfg, period, pulses, i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = cfg.trials;
      }
    }
  };
  const int jobs = std::max(1, std::min(cfg.jobs, cfg.trials));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  const std::size_t n = results.size();
  std::vector<double> alias(n), noise(n), wrap(n), plain(n), modulo(n), resid(n);
  SimulationReport r;
  for (std::size_t i = 0; i < n; ++i) {
    const ErrorBudget& b = results[i].budget;
    alias[i] = b.aliasing;
    noise[i] = b.noise;
    wrap[i] = b.wrap;
    plain[i] = b.total_plain;
    modulo[i] = b.total_modulo;
    resid[i] = (cfg.mode == Mode::periodic ? b.total_modulo : b.total_plain) - b.aliasing - b.noise - b.wrap;
    r.budget.points += b.points;
    r.budget.wrap_events += b.wrap_events;
    r.budget.steps += b.steps;
    r.budget.truncation_scale = std::max(r.budget.truncation_scale, b.truncation_scale);
    r.under_resolved = r.under_resolved || results[i].under_resolved;
  }
  r.budget.aliasing = mean_of(alias);
  r.budget.noise = mean_of(noise);
  r.budget.wrap = mean_of(wrap);
  r.budget.total_plain = mean_of(plain);
  r.budget.total_modulo = mean_of(modulo);
  if (n >= 2) {
    r.budget.ci_halfwidth = ci95(cfg.mode == Mode::plain ? plain : modulo);
  } else {
    r.budget.ci_halfwidth = results.front().budget.ci_halfwidth;
  }
  r.decomposition_residual = mean_of(resid);
  r.decomposition_ci = ci95(resid);
  r.aliasing_ci = ci95(alias);

  r.period = period;
  r.pulses = pulses;
  r.trials = cfg.trials;
  r.seed = cfg.seed;
  r.noise_std = cfg.noise_std ? *cfg.noise_std : measurement_noise_std(cfg.flux, period);
  r.predicted_total = predicted_total_error(p, kappa, cfg.flux, period);
  r.aliasing_approx = 2.0 * std::pow(kappa * period, p - 1.0) / (std::pow(std::numbers::pi, p) * (p - 1.0));
  r.gamma_t_over_pi = cfg.spec.gamma() * period / std::numbers::pi;
  try {
    r.aliasing_exact = aliasing_error_closed_form(cfg.spec, period).exact;
  } catch (const RegimeError&) {
  }
  try {
    r.lower_bound = waveform_lower_bound(cfg.spec, cfg.flux).scaling_bound;
  } catch (const RegimeError&) {
  }
  r.achievable = achievable_coefficient(p) * std::pow(kappa / cfg.flux, scaling_exponent(p));
  const WrapBound wb = wrap_error_bound(cfg.flux, period);
  r.wrap = {r.budget.wrap_events, r.budget.steps,
            static_cast<double>(r.budget.wrap_events) / static_cast<double>(r.budget.steps), wb.p_err, wb.wrap};
  return r;
}

}  // namespace wavebound
