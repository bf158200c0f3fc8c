#include "wavebound/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wavebound/bounds.hpp"
#include "wavebound/errors.hpp"
#include "wavebound/estimator.hpp"
#include "wavebound/quadrature.hpp"
#include "wavebound/specfun.hpp"

namespace wavebound {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo * std::pow(hi / lo, n == 1 ? 0.0 : static_cast<double>(i) / (n - 1));
  return v;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Largest violation of `lhs <= rhs`, 0 when none.
double excess(double lhs, double rhs) { return std::max(0.0, lhs - rhs); }

double zeta_three_halves() {
  constexpr int N = 10000;
  double s = 0.0;
  for (int n = N - 1; n >= 1; --n) s += std::pow(static_cast<double>(n), -1.5);
  const double x = N;
  return s + 2.0 / std::sqrt(x) + 0.5 * std::pow(x, -1.5) + 0.125 * std::pow(x, -2.5);
}

double quadratic_form_numeric(double p, double T, const std::function<double(double)>& spec) {
  QuadratureOptions opts;
  opts.rel_tol = 1e-13;
  const double v = integrate(
                       [&](double w) {
                         const double l = 1.0 - w * T;
                         return l * l / spec(w);
                       },
                       0.0, 1.0 / T, opts)
                       .value;
  (void)p;
  return 4.0 * kPi * T * T * v;
}

std::vector<VerificationCheck> build_checks() {
  std::vector<VerificationCheck> c;
  const double sqrt_pi = std::sqrt(kPi);

  c.push_back({"lambda_value", {}, [] {
                 return make_result("lambda_value", constants().lambda, 0.7246, 5e-5);
               }});
  c.push_back({"lambda_residual", {}, [] {
                 return make_result("lambda_residual", lambda_residual(constants().lambda), 0.0, 1e-12);
               }});
  c.push_back({"cosine_bound", {}, [] {
                 return make_result("cosine_bound", cosine_bound_violation(constants().lambda), 0.0, 1e-12);
               }});
  c.push_back({"airy_root", {}, [] {
                 return make_result("airy_root", constants().airy_root_mag, 2.338107410459767, 1e-9);
               }});
  c.push_back({"airy_root_residual", {}, [] {
                 return make_result("airy_root_residual", airy_ai(-constants().airy_root_mag), 0.0, 1e-10);
               }});
  c.push_back({"erfc_quadrature", {}, [sqrt_pi] {
                 QuadratureOptions o;
                 o.rel_tol = 1e-14;
                 const double q =
                     2.0 / sqrt_pi * integrate([](double z) { return std::exp(-z * z); }, 1.0, 12.0, o).value;
                 return make_result("erfc_quadrature", erfc(1.0), q, 1e-12);
               }});
  c.push_back({"erfc_triangle_bound", {"gaussian_min_overlap"}, [sqrt_pi] {
                 double worst = 0.0;
                 for (int i = 0; i <= 50000; ++i) {
                   const double z = 5.0 * i / 50000.0;
                   worst = std::max(worst, excess(triangle(2.0 * z / sqrt_pi), erfc(z)));
                 }
                 return make_result("erfc_triangle_bound", worst, 0.0, 1e-15);
               }});
  c.push_back({"gaussian_min_overlap", {"gaussian_min_overlap"}, [] {
                 // One-dimensional prior N(0, 1), shift d = v tau with v = 1: tau0 = sqrt(8).
                 double worst = 0.0;
                 for (double d : {0.1, 0.7, 1.5, 3.0}) {
                   auto f = [d](double x) {
                     const double a = std::exp(-0.5 * x * x);
                     const double b = std::exp(-0.5 * (x + d) * (x + d));
                     return std::min(a, b) / std::sqrt(2.0 * kPi);
                   };
                   const double k = -0.5 * d;
                   const std::vector<double> pts{k - 40.0, k, k + 40.0};
                   QuadratureOptions o;
                   o.rel_tol = 1e-14;
                   const double q = integrate(f, pts, o).value;
                   worst = std::max(worst, rel_err(gaussian_min_overlap(d, std::sqrt(8.0)), q));
                 }
                 return make_result("gaussian_min_overlap", worst, 0.0, 1e-10);
               }});
  c.push_back({"digamma_euler", {}, [] {
                 constexpr int n = 1000;
                 double h = 0.0;
                 for (int k = n; k >= 1; --k) h += 1.0 / k;
                 const double x = n;
                 const double euler = h - std::log(x) - 1.0 / (2 * x) + 1.0 / (12 * x * x) - 1.0 / (120 * x * x * x * x);
                 return make_result("digamma_euler", digamma(1.0), -euler, 1e-12);
               }});
  c.push_back({"digamma_reflection", {}, [] {
                 QuadratureOptions o;
                 o.rel_tol = 1e-14;
                 const double q = -4.0 * integrate([](double u) { return 1.0 / (1.0 + u * u); }, 0.0, 1.0, o).value;
                 return make_result("digamma_reflection", digamma(0.25) - digamma(0.75), q, 1e-10);
               }});
  c.push_back({"z_bound_oracle", {"z_bound"}, [] {
                 double worst = 0.0;
                 const auto g = logspace(1e-2, 1e2, 20);
                 for (double t0 : g) {
                   for (double tf : g) {
                     const double inf = std::numeric_limits<double>::infinity();
                     worst = std::max(worst, rel_err(z_bound(t0, tf).value, z_numeric_oracle(t0, tf, inf)));
                   }
                 }
                 return make_result("z_bound_oracle", worst, 0.0, 1e-8);
               }});
  c.push_back({"z_bound_periodic_oracle", {"z_bound_periodic"}, [] {
                 double worst = 0.0;
                 const auto g = logspace(1e-2, 1e2, 20);
                 for (double t0 : g) {
                   for (double tf : g) {
                     worst = std::max(worst, rel_err(z_bound_periodic(t0, tf).value, z_numeric_oracle(t0, tf, kPi)));
                   }
                 }
                 return make_result("z_bound_periodic_oracle", worst, 0.0, 1e-8);
               }});
  c.push_back({"z_boundary_value", {"z_bound"}, [sqrt_pi] {
                 return make_result("z_boundary_value", z_bound(2.0, sqrt_pi).value, 11.0 * kPi / 420.0, 1e-12, true);
               }});
  c.push_back({"z_branch_continuity", {"z_bound", "z_bound_periodic"}, [sqrt_pi] {
                 double worst = 0.0;
                 for (double t0 : logspace(1e-2, 1e2, 9)) {
                   const double tf = sqrt_pi * t0 / 2.0;
                   worst = std::max(worst, rel_err(z_branch_value(Branch::noise_limited, t0, tf),
                                                   z_branch_value(Branch::prior_limited, t0, tf)));
                 }
                 for (double big : {4.0, 10.0, 100.0}) {
                   const double t0 = 2.0 * kPi / sqrt_pi;  // sqrt(pi) tau0 / 2 = pi
                   worst = std::max(worst, rel_err(z_branch_value(Branch::prior_limited, t0, big),
                                                   z_branch_value(Branch::pi_capped, t0, big)));
                   const double t0b = 2.0 * big / sqrt_pi;
                   worst = std::max(worst, rel_err(z_branch_value(Branch::noise_limited, t0b, kPi),
                                                   z_branch_value(Branch::pi_capped, t0b, kPi)));
                 }
                 return make_result("z_branch_continuity", worst, 0.0, 1e-10);
               }});
  c.push_back({"lower_bound_at_optimum",
               {"lower_bound_coefficient", "waveform_lower_bound", "characteristic_times"},
               [] {
                 double worst = 0.0;
                 for (double p : {1.5, 2.0, 3.0, 4.0}) {
                   for (double flux : {1e2, 1e4}) {
                     const BoundReport r = waveform_lower_bound(PowerLawSpectrum(p, 1.3, 1e-6), flux);
                     worst = std::max(worst, rel_err(r.z_value, r.scaling_bound));
                   }
                 }
                 return make_result("lower_bound_at_optimum", worst, 0.0, 1e-10);
               }});
  c.push_back({"tau_boundary_relation", {"characteristic_times"}, [sqrt_pi] {
                 double worst = 0.0;
                 for (double p : {1.5, 2.0, 3.0}) {
                   const BoundReport r = waveform_lower_bound(PowerLawSpectrum(p, 0.7, 1e-6), 1e3);
                   worst = std::max(worst, rel_err(r.tauF, sqrt_pi * r.tau0 / 2.0));
                 }
                 return make_result("tau_boundary_relation", worst, 0.0, 1e-10);
               }});
  c.push_back({"c_Z_value", {"lower_bound_coefficient"}, [] {
                 // p = 2: (11/420) 15^(2/3) (4 pi lambda)^(-2/3)
                 const double ref = 11.0 / 420.0 * std::cbrt(225.0) / std::cbrt(std::pow(4.0 * kPi * constants().lambda, 2));
                 return make_result("c_Z_value", lower_bound_coefficient(2.0), ref, 1e-12, true);
               }});
  c.push_back({"coefficient_ordering", {"lower_bound_coefficient", "achievable_coefficient"}, [] {
                 double worst = 0.0;
                 for (double p : {1.2, 1.5, 2.0, 3.0, 4.0, 6.0}) {
                   worst = std::max(worst, excess(lower_bound_coefficient(p), achievable_coefficient(p)));
                 }
                 return make_result("coefficient_ordering", worst, 0.0, 0.0);
               }});
  c.push_back({"fidelity_chain", {"fidelity_lower_bound", "coherent_fidelity"}, [] {
                 double worst = 0.0;
                 const double lambda = constants().lambda;
                 for (double nbar : logspace(0.1, 100.0, 20)) {
                   const double tf = 1.0 / (2.0 * lambda * nbar);
                   for (int i = 0; i < 50; ++i) {
                     const double tau = 1.5 * tf * i / 49.0;
                     const double n[1] = {nbar};
                     const double v[1] = {1.0};
                     worst = std::max(worst, excess(fidelity_lower_bound(tau, tf), coherent_fidelity(n, v, tau)));
                   }
                 }
                 const std::vector<double> n{0.3, 2.0, 7.5};
                 const std::vector<double> v{1.0, -0.4, 0.25};
                 double sum = 0.0;
                 for (std::size_t j = 0; j < n.size(); ++j) sum += n[j] * std::abs(v[j]);
                 const double tf = 1.0 / (2.0 * lambda * sum);
                 for (int i = 0; i <= 200; ++i) {
                   const double tau = 1.5 * tf * i / 200.0;
                   worst = std::max(worst, excess(fidelity_lower_bound(tau, tf), coherent_fidelity(n, v, tau)));
                 }
                 return make_result("fidelity_chain", worst, 0.0, 0.0);
               }});
  c.push_back({"coherent_fidelity_value", {"coherent_fidelity"}, [] {
                 const double n[1] = {1.0};
                 const double v[1] = {1.0};
                 return make_result("coherent_fidelity_value", coherent_fidelity(n, v, kPi), std::exp(-4.0), 1e-14,
                                    true);
               }});
  c.push_back({"inverse_quadratic_form", {"inverse_quadratic_form"}, [] {
                 double worst = 0.0;
                 for (double p : {1.5, 2.0, 2.5, 4.0}) {
                   const PowerLawSpectrum s(p, 1.3, 0.7);
                   for (double T : {0.05, 0.4, 2.0}) {
                     const double q = quadratic_form_numeric(p, T, [&](double w) { return spectral_density(s, w); });
                     worst = std::max(worst, rel_err(inverse_quadratic_form(s, T).full, q));
                   }
                 }
                 return make_result("inverse_quadratic_form", worst, 0.0, 1e-9);
               }});
  c.push_back({"tail_quadratic_form_bound", {"tail_quadratic_form_bound"}, [] {
                 double worst = 0.0;
                 for (double p : {1.5, 2.0, 3.0}) {
                   const TailSpectrumBound tb{p, 1.0, 1.0, 1.0};
                   auto spec = [&](double w) { return tb.G / tb.kappa + std::pow(tb.kappa, p - 1.0) / std::pow(w, p); };
                   for (double T : logspace(1e-3, 1.0, 10)) {
                     const double bound = tail_quadratic_form_bound(tb, T);
                     worst = std::max(worst, excess(quadratic_form_numeric(p, T, spec), bound) / bound);
                   }
                 }
                 return make_result("tail_quadratic_form_bound", worst, 0.0, 0.0);
               }});
  c.push_back({"prior_variance", {"prior_variance", "spectral_density"}, [] {
                 double worst = 0.0;
                 for (double p : {1.3, 2.0, 3.0, 5.0}) {
                   const PowerLawSpectrum s(p, 1.0, 0.2);
                   QuadratureOptions o;
                   o.rel_tol = 1e-13;
                   auto f = [&](double w) { return spectral_density(s, w); };
                   const std::vector<double> pts{0.0, 0.1, 0.2, 0.4, 1.0};
                   const double q = (integrate(f, pts, o).value + integrate_power_tail(f, 1.0, p, o).value) / kPi;
                   worst = std::max(worst, rel_err(prior_variance(s), q));
                 }
                 return make_result("prior_variance", worst, 0.0, 1e-10);
               }});
  c.push_back({"autocovariance_ou", {"spectral_density"}, [] {
                 const PowerLawSpectrum s(2.0, 1.0, 0.5);
                 double worst = 0.0;
                 for (int i = 0; i <= 40; ++i) {
                   const double tau = 20.0 * i / 40.0;
                   worst = std::max(worst, rel_err(autocovariance(s, tau), std::exp(-0.5 * tau)));
                 }
                 return make_result("autocovariance_ou", worst, 0.0, 1e-6);
               }});
  c.push_back({"increment_variance_ou", {}, [] {
                 const PowerLawSpectrum s(2.0, 1.0, 0.5);
                 double worst = 0.0;
                 for (double d : {1e-3, 1e-2, 0.1, 1.0, 10.0}) {
                   worst = std::max(worst, rel_err(increment_variance(s, d), 2.0 * -std::expm1(-0.5 * d)));
                 }
                 return make_result("increment_variance_ou", worst, 0.0, 1e-7);
               }});
  c.push_back({"increment_bound_dominance", {"increment_variance_bound"}, [] {
                 double worst = 0.0;
                 for (double p : {1.5, 2.0, 2.5, 3.0, 4.0}) {
                   const PowerLawSpectrum s(p, 1.0, 0.01);
                   for (double kd : logspace(1e-3, 0.3, 12)) {
                     const double b = increment_variance_bound(s, kd);
                     worst = std::max(worst, excess(increment_variance(s, kd), b) / b);
                   }
                 }
                 return make_result("increment_bound_dominance", worst, 0.0, 0.0);
               }});
  c.push_back({"increment_bound_ratio_p2", {"increment_variance_bound"}, [] {
                 const PowerLawSpectrum s(2.0, 1.0, 0.01);
                 return make_result("increment_bound_ratio_p2",
                                    increment_variance(s, 1e-3) / increment_variance_bound(s, 1e-3), 1.0, 0.05);
               }});
  c.push_back({"increment_bound_p2_limit", {"increment_variance_bound"}, [] {
                 // The general formula approaches kappa*delta linearly in p - 2; the
                 // symmetric mean removes the first-order term.
                 const double h = 1e-4;
                 const double up = increment_variance_bound(PowerLawSpectrum(2.0 + h, 1.0, 0.01), 0.3);
                 const double dn = increment_variance_bound(PowerLawSpectrum(2.0 - h, 1.0, 0.01), 0.3);
                 return make_result("increment_bound_p2_limit", 0.5 * (up + dn), 0.3, 1e-6);
               }});
  c.push_back({"aliasing_closed_form", {"aliasing_error_closed_form"}, [] {
                 double worst = 0.0;
                 for (double p : {2.0, 3.0}) {
                   const AliasingError a = aliasing_error_closed_form(PowerLawSpectrum(p, 1.0, 0.01), 0.1);
                   worst = std::max(worst, rel_err(a.approx, a.exact));
                 }
                 return make_result("aliasing_closed_form", worst, 0.0, 0.01);
               }});
  c.push_back({"aliasing_time_average", {"aliasing_error_closed_form"}, [] {
                 // Time-domain form of the average: 2 S(0) - (2/T) int_0^T sum_n S(t - nT) sinc(pi(t/T - n)) dt.
                 const double kappa = 1.0, gamma = 2.0, T = 0.1;
                 auto S = [&](double t) { return kappa / (2.0 * gamma) * std::exp(-gamma * std::abs(t)); };
                 auto f = [&](double t) {
                   double acc = 0.0;
                   for (int n = -400; n <= 400; ++n) acc += S(t - n * T) * sinc(kPi * (t / T - n));
                   return acc;
                 };
                 QuadratureOptions o;
                 o.rel_tol = 1e-13;
                 const double avg = 2.0 * S(0.0) - 2.0 / T * integrate(f, 0.0, T, o).value;
                 const double exact = aliasing_error_closed_form(PowerLawSpectrum(2.0, kappa, gamma), T).exact;
                 return make_result("aliasing_time_average", exact, avg, 1e-9, true);
               }});
  c.push_back({"noise_time_average", {"measurement_noise_std", "predicted_total_error"}, [] {
                 // (1/T) int_0^T sum_n sinc^2(pi(t/T - n)) dt = 1: the per-sample variance carries over to the average.
                 constexpr int N = 20000;
                 auto f = [](double x) {
                   const double s = std::sin(kPi * x);
                   double acc = 0.0;
                   for (int n = -N; n <= N; ++n) {
                     const double u = kPi * (x - n);
                     acc += u == 0.0 ? 1.0 : s * s / (u * u);
                   }
                   return acc + s * s / (kPi * kPi) * (1.0 / (N + 0.5 - x) + 1.0 / (N + 0.5 + x));
                 };
                 QuadratureOptions o;
                 o.rel_tol = 1e-12;
                 return make_result("noise_time_average", integrate(f, 0.0, 1.0, o).value, 1.0, 1e-9);
               }});
  c.push_back({"noise_std_value", {"measurement_noise_std"}, [] {
                 return make_result("noise_std_value", measurement_noise_std(10.0, 1.0), 0.13761, 1e-5);
               }});
  c.push_back({"optimal_period_scan", {"optimal_pulse_period", "predicted_total_error"}, [] {
                 double worst = 0.0;
                 for (double p : {1.5, 2.0, 3.0}) {
                   const double t = optimal_pulse_period(p, 1.0, 1e3);
                   double best_t = t, best = std::numeric_limits<double>::infinity();
                   for (double x : logspace(t / 10.0, t * 10.0, 200001)) {
                     const double e = predicted_total_error(p, 1.0, 1e3, x);
                     if (e < best) {
                       best = e;
                       best_t = x;
                     }
                   }
                   worst = std::max(worst, rel_err(t, best_t));
                 }
                 return make_result("optimal_period_scan", worst, 0.0, 1e-3);
               }});
  c.push_back({"achievable_at_optimum", {"predicted_total_error", "achievable_coefficient"}, [] {
                 double worst = 0.0;
                 for (double p : {1.5, 2.0, 3.0, 4.0}) {
                   for (double flux : {1e2, 1e5}) {
                     const double k = 0.8;
                     const double t = optimal_pulse_period(p, k, flux);
                     const double closed = achievable_coefficient(p) * std::pow(k / flux, scaling_exponent(p));
                     worst = std::max(worst, rel_err(predicted_total_error(p, k, flux, t), closed));
                   }
                 }
                 return make_result("achievable_at_optimum", worst, 0.0, 1e-10);
               }});
  c.push_back({"wrap_constant", {}, [] {
                 std::vector<double> g(101);
                 for (int i = 0; i <= 100; ++i) g[i] = 0.005 + 0.99 * i / 100.0;
                 return make_result("wrap_constant", wrap_constant_scan(g, 100000).max_value, 0.68169, 1e-4);
               }});
  c.push_back({"wrap_constant_argmax", {}, [] {
                 std::vector<double> g(101);
                 for (int i = 0; i <= 100; ++i) g[i] = 0.005 + 0.99 * i / 100.0;
                 return make_result("wrap_constant_argmax", wrap_constant_scan(g, 100000).argmax, 0.5, 1e-3);
               }});
  c.push_back({"wrap_constant_symmetry", {}, [] {
                 double worst = 0.0;
                 for (double x : {0.05, 0.17, 0.3, 0.42}) {
                   worst = std::max(worst, std::abs(wrap_bracket(x, 100000) - wrap_bracket(1.0 - x, 100000)));
                 }
                 return make_result("wrap_constant_symmetry", worst, 0.0, 1e-10);
               }});
  c.push_back({"wrap_bound_ratio", {"wrap_error_bound"}, [] {
                 const WrapBound w = wrap_error_bound(100.0, 1.0);
                 return make_result("wrap_bound_ratio", w.wrap / w.p_err, wrap_bracket(0.5, 100000), 1e-4);
               }});
  c.push_back({"wrap_p_err_value", {"wrap_error_bound"}, [] {
                 return make_result("wrap_p_err_value", wrap_error_bound(100.0, 1.0).p_err,
                                    8.0 / (kPi * kPi) * 1.8936e-4, 1e-3, true);
               }});
  c.push_back({"digamma_vs_sinc_tail", {"digamma_tail_coefficient"}, [] {
                 double worst = 0.0;
                 for (double x : {0.1, 0.25, 0.5}) {
                   for (int m = -5; m <= 5; ++m) {
                     worst = std::max(worst, std::abs(digamma_tail_coefficient(m, x) - sinc_tail_sum(m, x, 1000000).value));
                   }
                 }
                 return make_result("digamma_vs_sinc_tail", worst, 0.0, 1e-6);
               }});
  c.push_back({"digamma_leibniz", {"digamma_tail_coefficient"}, [] {
                 return make_result("digamma_leibniz", digamma_tail_coefficient(1, 0.5), kPi, 1e-12);
               }});
  c.push_back({"a_m_asymptotic", {"digamma_tail_coefficient"}, [] {
                 double worst = 0.0;
                 for (double x : {0.1, 0.25, 0.5, 0.8}) {
                   for (int m = 10; m <= 2000; ++m) {
                     worst = std::max(worst, excess(std::abs(digamma_tail_coefficient(m, x)), 2.0 * kPi / m));
                     worst = std::max(worst, excess(std::abs(digamma_tail_coefficient(-m, x)), 2.0 * kPi / m));
                   }
                 }
                 return make_result("a_m_asymptotic", worst, 0.0, 0.0);
               }});
  c.push_back({"covariance_vn_bound", {"covariance_Vn"}, [] {
                 double worst = 0.0;
                 for (double p : {2.0, 3.0}) {
                   for (double gt : {0.01, 0.1}) {
                     const PowerLawSpectrum s(p, 1.0, gt);
                     for (int n = 2; n <= 50; ++n) {
                       const CovarianceVn v = covariance_Vn(s, 1.0, n);
                       worst = std::max(worst, excess(std::abs(v.value), v.bound) / v.bound);
                     }
                   }
                 }
                 return make_result("covariance_vn_bound", worst, 0.0, 0.0);
               }});
  c.push_back({"covariance_vn_ou", {"covariance_Vn"}, [] {
                 const double kappa = 1.0, gamma = 0.1, T = 1.0;
                 auto S = [&](double t) { return kappa / (2.0 * gamma) * std::exp(-gamma * t); };
                 const double ref = (2.0 * S(2.0 * T) - S(T) - S(3.0 * T)) / (4.0 * kPi * kPi);
                 return make_result("covariance_vn_ou", covariance_Vn(PowerLawSpectrum(2.0, kappa, gamma), T, 2).value,
                                    ref, 1e-6, true);
               }});
  c.push_back({"covariance_vn_halving", {"covariance_Vn"}, [] {
                 const PowerLawSpectrum s(2.0, 1.0, 0.01);
                 return make_result("covariance_vn_halving",
                                    covariance_Vn(s, 1.0, 40).bound / covariance_Vn(s, 1.0, 20).bound, 0.5, 0.02);
               }});
  c.push_back({"zeta_three_halves", {}, [] {
                 const double z = zeta_three_halves();
                 return make_result("zeta_three_halves", excess(2.0 * z * z, 14.0), 0.0, 0.0);
               }});
  c.push_back({"yovits_jackson_limits", {}, [] {
                 const PowerLawSpectrum s(2.0, 1.0, 0.5);
                 const double s0 = spectral_density(s, 0.0);
                 return make_result("yovits_jackson_limits", yovits_jackson_error(s, 1e6 * s0), prior_variance(s), 1e-3,
                                    true);
               }});
  c.push_back({"yovits_jackson_monotone", {}, [] {
                 const PowerLawSpectrum s(3.0, 1.0, 0.2);
                 const double s0 = spectral_density(s, 0.0);
                 double worst = excess(yovits_jackson_error(s, 1e-9 * s0), 1e-3 * prior_variance(s));
                 double prev = 0.0;
                 for (double r : logspace(1e-6 * s0, 1e3 * s0, 19)) {
                   const double v = yovits_jackson_error(s, r);
                   worst = std::max(worst, excess(prev, v));
                   prev = v;
                 }
                 return make_result("yovits_jackson_monotone", worst, 0.0, 0.0);
               }});
  return c;
}

}  // namespace

VerificationResult make_result(std::string name, double computed, double reference, double tolerance, bool relative) {
  const double scale = relative ? std::abs(reference) : 1.0;
  const bool ok = std::isfinite(computed) && std::abs(computed - reference) <= tolerance * scale;
  return {std::move(name), computed, reference, tolerance, relative, ok};
}

double digamma_tail_coefficient(int m, double x) {
  if (x == std::round(x)) throw DomainError("digamma_tail_coefficient: t/T must not be an integer");
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  const double pre = sign * std::sin(kPi * x);
  if (m > 0) return pre * (digamma(0.5 * (m - x)) - digamma(0.5 + 0.5 * (m - x)));
  return pre * (digamma(0.5 - 0.5 * m + 0.5 * x) - digamma(1.0 - 0.5 * m + 0.5 * x));
}

SincTailSum sinc_tail_sum(int m, double x, long n_terms) {
  if (n_terms < 1) throw DomainError("sinc_tail_sum: n_terms must be positive");
  const double s = std::sin(kPi * x);
  auto term = [&](long n) {
    const double u = kPi * (x - static_cast<double>(n));
    if (u == 0.0) return 1.0;
    return ((n % 2 == 0) ? s : -s) / u;
  };
  const long start = m > 0 ? m : m - 1;
  const long step = m > 0 ? 1 : -1;
  double acc = 0.0;
  for (long i = n_terms - 1; i >= 0; --i) acc += term(start + step * i);
  const double next = term(start + step * n_terms);
  return {2.0 * kPi * (acc + 0.5 * next), 2.0 * kPi * acc, 2.0 * kPi * std::abs(next)};
}

double wrap_bracket(double x, int M) {
  if (M < 1) throw DomainError("wrap_bracket: M must be positive");
  const double r = std::ceil(x - 0.5);
  const double xr = x - r;
  if (xr == 0.0) return 0.0;
  std::vector<double> a(2 * static_cast<std::size_t>(M) + 1);
  for (int m = -M; m <= M; ++m) a[m + M] = digamma_tail_coefficient(m, xr);
  double sq = 0.0;
  double pair = 0.0;
  for (std::size_t i = a.size(); i-- > 0;) {
    sq += a[i] * a[i];
    if (i + 1 < a.size()) pair += std::abs(a[i] * a[i + 1]);
  }
  // |a_m| ~ |sin(pi x)|/|m| beyond the window on both sides.
  const double s2 = std::sin(kPi * xr) * std::sin(kPi * xr);
  const double mm = M;
  sq += 2.0 * s2 * (1.0 / mm - 0.5 / (mm * mm));
  pair += 2.0 * s2 / mm;
  return (sq + 2.0 * pair) / (4.0 * kPi * kPi);
}

WrapScan wrap_constant_scan(std::span<const double> grid, int M) {
  WrapScan best{-1.0, 0.0};
  for (double x : grid) {
    if (!(x > 0.0 && x < 1.0)) throw DomainError("wrap_constant_scan: grid values must lie in (0, 1)");
    const double v = wrap_bracket(x, M);
    if (v > best.max_value) best = {v, x};
  }
  return best;
}

CovarianceVn covariance_Vn(const PowerLawSpectrum& s, double period, int n) {
  if (n < 2) throw DomainError("covariance_Vn: n must be at least 2");
  if (!(period > 0.0)) throw DomainError("covariance_Vn: period must be positive");
  const double T = period;
  const double nt = n * T;
  const CosineTerm terms[3] = {{1.0, nt}, {-0.5, (n - 1) * T}, {-0.5, (n + 1) * T}};
  const double integral = spectral_integral(s, 0.0, terms, [nt, T](double w) {
    const double h = std::sin(0.5 * w * T);
    return std::cos(w * nt) * 2.0 * h * h;
  });
  const double norm = 1.0 / (4.0 * kPi * kPi);
  const double value = norm * 2.0 / kPi * integral;
  const double bound =
      norm / kPi * spectral_density(s, 0.0) * (1.0 / nt + 1.0 / (2.0 * (n - 1) * T) + 1.0 / (2.0 * (n + 1) * T));
  return {value, bound};
}

double cosine_bound_violation(double lambda) {
  constexpr int N = 400000;
  double worst = 0.0;
  for (int i = 0; i <= N; ++i) {
    const double t = -4.0 * kPi + 8.0 * kPi * i / N;
    worst = std::max(worst, excess(1.0 - lambda * std::abs(t), std::cos(t)));
  }
  return worst;
}

const std::vector<VerificationCheck>& verification_checks() {
  static const std::vector<VerificationCheck> checks = build_checks();
  return checks;
}

const std::vector<std::string>& closed_form_catalog() {
  static const std::vector<std::string> names{
      "spectral_density",       "prior_variance",         "inverse_quadratic_form",  "tail_quadratic_form_bound",
      "increment_variance_bound", "characteristic_times", "fidelity_lower_bound",    "coherent_fidelity",
      "gaussian_min_overlap",   "z_bound",                "z_bound_periodic",        "lower_bound_coefficient",
      "waveform_lower_bound",   "optimal_pulse_period",   "measurement_noise_std",   "aliasing_error_closed_form",
      "predicted_total_error",  "achievable_coefficient", "wrap_error_bound",        "digamma_tail_coefficient",
      "covariance_Vn"};
  return names;
}

std::vector<VerificationResult> run_verification_suite(const std::optional<std::string>& only) {
  std::vector<VerificationResult> out;
  bool found = false;
  for (const VerificationCheck& c : verification_checks()) {
    if (only && c.name != *only) continue;
    found = true;
    try {
      out.push_back(c.run());
    } catch (const std::exception&) {
      out.push_back({c.name, std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0, false, false});
    }
  }
  if (only && !found) throw DomainError("unknown verification check '" + *only + "'");
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return out;
}

}  // namespace wavebound
