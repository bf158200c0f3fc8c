#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "wavebound/spectrum.hpp"

namespace wavebound {

struct TimeGrid {
  double t0;
  double dt;
  std::size_t n;
};

struct SynthesisConfig {
  double omega_max;
  std::size_t n_modes;
  std::uint64_t seed;
};

struct WaveformTrace {
  double t0 = 0.0;
  double dt = 1.0;
  std::vector<double> values;
  // omega_max below 20 max(gamma, pi/(n dt)).
  bool under_resolved = false;

  double time(std::size_t i) const { return t0 + dt * static_cast<double>(i); }
};

struct CovarianceEstimate {
  double estimate;
  double std_error;
};

// Random-phase harmonic superposition on the midpoint grid w_j = (j + 1/2) dw,
// dw = omega_max / n_modes:
//   X(t) = sum_j sqrt(S(w_j) dw / pi) [A_j cos(w_j t) + B_j sin(w_j t)].
// When dw dt = 2 pi / L for an integer L >= max(n, n_modes) the sum is evaluated
// with one length-L FFT; otherwise directly. Both paths consume the same
// normal draws and agree to rounding.
WaveformTrace sample_waveform(const PowerLawSpectrum& s, const TimeGrid& grid, const SynthesisConfig& cfg,
                              std::uint64_t stream);

// Forces the direct O(n n_modes) evaluation.
WaveformTrace sample_waveform_direct(const PowerLawSpectrum& s, const TimeGrid& grid,
                                     const SynthesisConfig& cfg, std::uint64_t stream);

// Commensurate configuration: omega_max = pi/dt and an FFT length of at least
// `oversize` times the grid so the synthesized process does not repeat within it.
SynthesisConfig commensurate_synthesis(double dt, std::size_t n, std::uint64_t seed, double oversize = 4.0);

// Exact variance of the synthesized process, sum_j S(w_j) dw / pi.
double synthesized_variance(const PowerLawSpectrum& s, const SynthesisConfig& cfg);

// Smallest 2^a 3^b 5^c >= n.
std::size_t next_fast_size(std::size_t n);

// Per-trace time-averaged lag products, averaged over traces, with the
// delete-one jackknife error across traces.
CovarianceEstimate empirical_autocovariance(std::span<const WaveformTrace> traces, long lag_steps);

void write_csv(std::ostream& os, const WaveformTrace& trace);

}  // namespace wavebound
