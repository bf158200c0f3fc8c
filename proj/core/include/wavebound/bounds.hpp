#pragma once

#include <span>
#include <string_view>

#include "wavebound/spectrum.hpp"

namespace wavebound {

struct ProbeConfig {
  double flux;          // photons per unit time
  double pulse_period;  // T
};

void validate(const ProbeConfig& probe);

enum class Branch { noise_limited, prior_limited, pi_capped };

std::string_view to_string(Branch b);

struct CharacteristicTimes {
  double tau0;
  double tauF;
};

struct ZValue {
  double value;
  Branch branch;
};

struct RegimeCheck {
  double gamma_t_star;
  double limit;          // gamma*T above which the dropped term exceeds 10% of the leading one
  double dropped_ratio;  // p3 (gamma T)^p / 6
  bool ok;
};

struct BoundReport {
  double tau0;
  double tauF;
  Branch branch;
  double z_value;
  double scaling_bound;
  double t_star;
  double c_Z;
  double exponent;  // 2(p-1)/(p+1)
  RegimeCheck regime;
};

CharacteristicTimes characteristic_times(const PowerLawSpectrum& s, const ProbeConfig& probe);

double fidelity_lower_bound(double tau, double tauF);

// Exact |<exp(i tau v.n)>|^2 for a product of coherent states.
double coherent_fidelity(std::span<const double> mean_photons, std::span<const double> v, double tau);

double gaussian_min_overlap(double tau, double tau0);

ZValue z_bound(double tau0, double tauF);

// The closed form of one branch, evaluated without checking which branch applies.
double z_branch_value(Branch b, double tau0, double tauF);

// Z with the shift integral capped at pi.
ZValue z_bound_periodic(double tau0, double tauF);

// (1/2) int_0^tau_max tau Lambda(2 tau / (sqrt(pi) tau0)) Lambda(sqrt(tau / tauF)) dtau.
// tau_max may be +infinity.
double z_numeric_oracle(double tau0, double tauF, double tau_max);

double lower_bound_coefficient(double p);
double scaling_exponent(double p);

RegimeCheck regime_check(const PowerLawSpectrum& s, double period);

// Throws RegimeError when the dropped gamma term is not negligible at t_star.
BoundReport waveform_lower_bound(const PowerLawSpectrum& s, double flux);

}  // namespace wavebound
