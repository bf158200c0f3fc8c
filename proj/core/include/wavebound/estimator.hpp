#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "wavebound/bounds.hpp"
#include "wavebound/gp.hpp"
#include "wavebound/random.hpp"
#include "wavebound/spectrum.hpp"

namespace wavebound {

enum class Mode { plain, periodic };

std::string_view to_string(Mode m);
Mode parse_mode(std::string_view s);

// Pulse n is taken at t0 + n T.
struct MeasurementRecord {
  double period = 0.0;
  double t0 = 0.0;
  std::vector<double> raw;        // Y_n; wrapped to (-pi, pi] in periodic mode
  std::vector<double> unwrapped;  // estimates fed to the interpolator
  std::vector<double> noise;      // realized xi_n (wrapped in periodic mode)
  double noise_std = 0.0;
  Mode mode = Mode::plain;
};

enum class Taper { none, tukey };

std::string_view to_string(Taper t);
Taper parse_taper(std::string_view s);

// Sinc interpolation over the 2M samples bracketing t, i.e. n in
// [floor(t/T) - M + 1, floor(t/T) + M]. The sum runs over the deviations from
// the sample just below t, which makes constant offsets exact. The Tukey taper
// keeps the inner half of the window at full sinc weight and rolls the outer
// half off with a raised cosine.
struct InterpolationOptions {
  int truncation = 512;
  Taper taper = Taper::tukey;
};

struct ErrorBudget {
  double aliasing = 0.0;
  double noise = 0.0;
  double wrap = 0.0;
  double total_plain = 0.0;
  double total_modulo = 0.0;
  double ci_halfwidth = 0.0;
  std::size_t points = 0;
  std::size_t wrap_events = 0;  // n with K_n != K_(n-1)
  std::size_t steps = 0;
  double truncation_scale = 0.0;  // max |deviation from window anchor| / (pi M)
};

struct AliasingError {
  double exact;   // (2/pi) int_(pi/T)^inf S(w) dw
  double approx;  // 2 (kappa T)^(p-1) / (pi^p (p-1))
};

struct WrapBound {
  double p_err;
  double wrap;  // p_err (1 - 1/pi)
};

// (4/27)|z_A|^3
double noise_variance_coefficient();

double optimal_pulse_period(double p, double kappa, double flux);
double measurement_noise_std(double flux, double period);

// Pulse times must fall on the trace grid. `noise_std` overrides the value
// implied by the probe (0 gives noiseless samples).
MeasurementRecord simulate_measurements(const WaveformTrace& trace, const ProbeConfig& probe, Philox4x32& rng,
                                        Mode mode, std::optional<double> noise_std = std::nullopt);

std::vector<double> unwrap_estimates(std::span<const double> raw);

double interpolate_samples(std::span<const double> samples, double t0, double period, double t,
                           const InterpolationOptions& opts = {});
double interpolate(const MeasurementRecord& record, double t, const InterpolationOptions& opts = {});

// Time averages over every grid point of `truth` whose interpolation window
// lies inside the record. Aliasing comes from interpolating the true samples,
// noise from interpolating xi_n, wrap from K_n = (unwrapped_n - X(nT) - xi_n)/2 pi.
// ci_halfwidth is a 95% batch-means interval of the mode's total.
ErrorBudget mse_summary(const MeasurementRecord& record, const WaveformTrace& truth,
                        const InterpolationOptions& opts = {});

// Throws RegimeError when gamma T >= pi/10.
AliasingError aliasing_error_closed_form(const PowerLawSpectrum& s, double period);

double predicted_total_error(double p, double kappa, double flux, double period);
double achievable_coefficient(double p);
WrapBound wrap_error_bound(double flux, double period);

}  // namespace wavebound
