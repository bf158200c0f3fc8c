#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wavebound/spectrum.hpp"

namespace wavebound {

struct VerificationResult {
  std::string name;
  double computed;
  double reference;
  double tolerance;
  bool relative;  // tolerance scales with |reference|
  bool passed;
};

VerificationResult make_result(std::string name, double computed, double reference, double tolerance,
                               bool relative = false);

struct SincTailSum {
  double value;       // partial sum plus half the first omitted term, times 2 pi
  double partial;     // plain partial sum, times 2 pi
  double tail_bound;  // |first omitted term|, times 2 pi
};

struct WrapScan {
  double max_value;
  double argmax;
};

struct CovarianceVn {
  double value;
  double bound;
};

// a_m at t/T = x via digamma differences; x must not be an integer.
double digamma_tail_coefficient(int m, double x);

// 2 pi sum_{n>=m} sinc(pi(x - n)) for m > 0, 2 pi sum_{n<=m-1} sinc(pi(x - n)) for m <= 0.
SincTailSum sinc_tail_sum(int m, double x, long n_terms);

// (1/4pi^2)[sum a_m^2 + 2 sum |a_m a_(m+1)|] over |m| <= M plus the 1/m^2 tails.
// The reference sample is the nearest one (ties go down), so x is reduced to (-1/2, 1/2].
double wrap_bracket(double x, int M);
WrapScan wrap_constant_scan(std::span<const double> grid, int M);

CovarianceVn covariance_Vn(const PowerLawSpectrum& s, double period, int n);

// max over a grid on [-4pi, 4pi] of (1 - lambda|t|) - cos t, clipped at 0.
double cosine_bound_violation(double lambda);

struct VerificationCheck {
  std::string name;
  std::vector<std::string> covers;  // closed forms this check anchors
  std::function<VerificationResult()> run;
};

const std::vector<VerificationCheck>& verification_checks();

// Every closed form that must be anchored by at least one check.
const std::vector<std::string>& closed_form_catalog();

// Results sorted by name. `only` restricts to one named check.
std::vector<VerificationResult> run_verification_suite(const std::optional<std::string>& only = std::nullopt);

}  // namespace wavebound
