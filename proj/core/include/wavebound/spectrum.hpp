#pragma once

#include <functional>
#include <span>

namespace wavebound {

// Prior spectral density k^(p-1) / (|w|^p + g^p).
class PowerLawSpectrum {
 public:
  PowerLawSpectrum(double p, double kappa, double gamma);

  double p() const { return p_; }
  double kappa() const { return kappa_; }
  double gamma() const { return gamma_; }

 private:
  double p_;
  double kappa_;
  double gamma_;
};

// Spectra bounded below by G/k for |w| < k w0 and by k^(p-1)/|w|^p beyond.
struct TailSpectrumBound {
  double p;
  double kappa;
  double w0;
  double G;
};

struct QuadraticForm {
  double leading;
  double full;
  double p3;  // (p+1)(p+2)(p+3)
};

struct CosineTerm {
  double weight;
  double tau;
};

double spectral_density(const PowerLawSpectrum& s, double omega);

// Closed form of Sigma_0(0) = (1/pi) int_0^inf S(w) dw.
double prior_variance(const PowerLawSpectrum& s);

// int_a^inf S(w) dw.
double spectral_tail(const PowerLawSpectrum& s, double a);

double autocovariance(const PowerLawSpectrum& s, double tau);

double p3_factor(double p);
QuadraticForm inverse_quadratic_form(const PowerLawSpectrum& s, double T);
double tail_quadratic_form_bound(const TailSpectrumBound& tb, double T);

// E[(X(t) - X(t + delta))^2].
double increment_variance(const PowerLawSpectrum& s, double delta);
double increment_variance_bound(const PowerLawSpectrum& s, double delta);

// int_0^inf S(w) u(w) dw for u(w) = c0 + sum_i c_i cos(w tau_i). `weight` evaluates u
// in whatever form is numerically stable; the tails beyond the finite panel are
// summed from c0 and the cosine terms asymptotically.
double spectral_integral(const PowerLawSpectrum& s, double c0, std::span<const CosineTerm> terms,
                         const std::function<double(double)>& weight);

// R int dw/(2 pi) ln(1 + S(w)/R) over the real line.
double yovits_jackson_error(const PowerLawSpectrum& s, double R);

}  // namespace wavebound
