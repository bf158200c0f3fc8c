#include "wavebound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "wavebound/errors.hpp"
#include "wavebound/quadrature.hpp"
#include "wavebound/specfun.hpp"

namespace wavebound {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrtPi = std::sqrt(kPi);

// Largest tolerated ratio of the dropped gamma term to the leading quadratic form.
constexpr double kRegimeRatio = 0.1;

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError(std::string(what) + " must be positive");
}

}  // namespace

double z_branch_value(Branch b, double tau0, double tauF) {
  switch (b) {
    case Branch::noise_limited:
      return tauF * tauF * (1.0 / 20.0 - tauF / (21.0 * kSqrtPi * tau0));
    case Branch::prior_limited:
      return kPi * tau0 * tau0 / 4.0 * (1.0 / 12.0 - 2.0 / 35.0 * std::sqrt(kSqrtPi * tau0 / (2.0 * tauF)));
    case Branch::pi_capped: {
      const double rf = std::sqrt(tauF);
      return kPi * kPi *
             (0.25 - kSqrtPi / (3.0 * tau0) - kSqrtPi / (5.0 * rf) + 2.0 * kPi / (7.0 * tau0 * rf));
    }
  }
  return 0.0;
}

void validate(const ProbeConfig& probe) {
  require_positive(probe.flux, "flux");
  require_positive(probe.pulse_period, "pulse_period");
}

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::noise_limited:
      return "noise_limited";
    case Branch::prior_limited:
      return "prior_limited";
    case Branch::pi_capped:
      return "pi_capped";
  }
  return "unknown";
}

CharacteristicTimes characteristic_times(const PowerLawSpectrum& s, const ProbeConfig& probe) {
  validate(probe);
  const double q = inverse_quadratic_form(s, probe.pulse_period).leading;
  const double tau0 = std::sqrt(8.0 / q);
  const double tauF = 1.0 / (4.0 * kPi * constants().lambda * probe.pulse_period * probe.flux);
  return {tau0, tauF};
}

double fidelity_lower_bound(double tau, double tauF) {
  if (!(tau >= 0.0)) throw DomainError("fidelity_lower_bound: tau must be non-negative");
  require_positive(tauF, "tauF");
  return triangle(tau / tauF);
}

double coherent_fidelity(std::span<const double> mean_photons, std::span<const double> v, double tau) {
  if (mean_photons.size() != v.size()) {
    throw DomainError("coherent_fidelity: mean_photons and v differ in length");
  }
  double e = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (!(mean_photons[j] >= 0.0)) throw DomainError("coherent_fidelity: negative photon number");
    const double h = std::sin(0.5 * tau * v[j]);
    e += mean_photons[j] * 2.0 * h * h;
  }
  return std::exp(-2.0 * e);
}

double gaussian_min_overlap(double tau, double tau0) {
  if (!(tau >= 0.0)) throw DomainError("gaussian_min_overlap: tau must be non-negative");
  require_positive(tau0, "tau0");
  return erfc(tau / tau0);
}

ZValue z_bound(double tau0, double tauF) {
  require_positive(tau0, "tau0");
  require_positive(tauF, "tauF");
  const Branch b = tauF <= kSqrtPi * tau0 / 2.0 ? Branch::noise_limited : Branch::prior_limited;
  return {z_branch_value(b, tau0, tauF), b};
}

ZValue z_bound_periodic(double tau0, double tauF) {
  require_positive(tau0, "tau0");
  require_positive(tauF, "tauF");
  if (std::min(kSqrtPi * tau0 / 2.0, tauF) <= kPi) return z_bound(tau0, tauF);
  return {z_branch_value(Branch::pi_capped, tau0, tauF), Branch::pi_capped};
}

double z_numeric_oracle(double tau0, double tauF, double tau_max) {
  require_positive(tau0, "tau0");
  require_positive(tauF, "tauF");
  if (!(tau_max > 0.0)) throw DomainError("z_numeric_oracle: tau_max must be positive");
  const double upper = std::min({kSqrtPi * tau0 / 2.0, tauF, tau_max});
  auto f = [&](double t) {
    return 0.5 * t * triangle(2.0 * t / (kSqrtPi * tau0)) * triangle(std::sqrt(t / tauF));
  };
  QuadratureOptions opts;
  opts.rel_tol = 1e-13;
  return integrate(f, 0.0, upper, opts).value;
}

double scaling_exponent(double p) { return 2.0 * (p - 1.0) / (p + 1.0); }

double lower_bound_coefficient(double p) {
  if (!(p > 1.0)) throw DomainError("lower_bound_coefficient: p must satisfy p > 1");
  const double lambda = constants().lambda;
  return 11.0 / 420.0 * std::pow(p3_factor(p) / 4.0, 2.0 / (p + 1.0)) *
         std::pow(4.0 * kPi * lambda, -scaling_exponent(p));
}

RegimeCheck regime_check(const PowerLawSpectrum& s, double period) {
  const double p = s.p();
  const double p3 = p3_factor(p);
  const double gt = s.gamma() * period;
  const double ratio = p3 * std::pow(gt, p) / 6.0;
  const double limit = std::pow(6.0 * kRegimeRatio / p3, 1.0 / p);
  return {gt, limit, ratio, ratio <= kRegimeRatio};
}

BoundReport waveform_lower_bound(const PowerLawSpectrum& s, double flux) {
  require_positive(flux, "flux");
  const double p = s.p();
  const double lambda = constants().lambda;
  const double t_star = std::pow(
      1.0 / (4.0 * kPi * kPi * lambda * lambda * p3_factor(p) * std::pow(s.kappa(), p - 1.0) * flux * flux),
      1.0 / (p + 1.0));
  const RegimeCheck regime = regime_check(s, t_star);
  if (!regime.ok) {
    std::ostringstream msg;
    msg << "waveform_lower_bound: gamma*t_star = " << regime.gamma_t_star << " exceeds " << regime.limit
        << "; the gamma term of the quadratic form is not negligible";
    throw RegimeError(msg.str());
  }
  const CharacteristicTimes ct = characteristic_times(s, {flux, t_star});
  const ZValue z = z_bound(ct.tau0, ct.tauF);
  const double cz = lower_bound_coefficient(p);
  const double expo = scaling_exponent(p);
  return {ct.tau0, ct.tauF, z.branch, z.value, cz * std::pow(s.kappa() / flux, expo), t_star, cz, expo,
          regime};
}

}  // namespace wavebound
