#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "wavebound/estimator.hpp"
#include "wavebound/spectrum.hpp"

namespace wavebound {

struct SimulationConfig {
  PowerLawSpectrum spec{2.0, 1.0, 0.01};
  double flux = 1e3;
  std::optional<double> period;  // defaults to optimal_pulse_period
  int trials = 200;
  std::uint64_t seed = 1;
  Mode mode = Mode::periodic;
  InterpolationOptions interpolation;
  int oversample = 64;                     // truth grid points per pulse period
  int intervals = 64;                      // averaged pulse intervals per trial
  std::optional<std::size_t> pulses;       // record length override
  std::optional<double> noise_std;         // 0 for noiseless runs
  int jobs = 1;
};

struct WrapStatistics {
  std::size_t events = 0;
  std::size_t steps = 0;
  double rate = 0.0;
  double p_err_bound = 0.0;
  double wrap_bound = 0.0;
};

struct SimulationReport {
  double period = 0.0;
  double noise_std = 0.0;
  std::size_t pulses = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  ErrorBudget budget;          // trial means; ci_halfwidth across trials
  double decomposition_residual = 0.0;  // total (modulo in periodic mode) - aliasing - noise - wrap
  double decomposition_ci = 0.0;
  double aliasing_ci = 0.0;
  double predicted_total = 0.0;
  double aliasing_approx = 0.0;
  std::optional<double> aliasing_exact;
  std::optional<double> lower_bound;
  double achievable = 0.0;
  double gamma_t_over_pi = 0.0;
  bool under_resolved = false;
  WrapStatistics wrap;
};

// Trials run on up to `jobs` threads; each trial draws its waveform from
// stream 2i and its noise from stream 2i+1, and results are reduced in trial
// order, so the report does not depend on `jobs`.
SimulationReport run_simulation(const SimulationConfig& cfg);

// Minimum record length for the given truncation.
std::size_t minimum_pulses(int truncation);

}  // namespace wavebound
