#pragma once

namespace wavebound {

struct Constants {
  double lambda;         // slope of the cosine lower bound, cos t >= 1 - lambda |t|
  double airy_root_mag;  // |z_A|, first negative zero of Ai
};

// Computed on first use, immutable afterwards.
const Constants& constants();

double triangle(double z);
double sinc(double x);

// Maps eps into (-pi, pi].
double modulo_2pi(double eps);

double erfc(double z);
double digamma(double x);

// f(l) = l (pi - asin l) - 1 - sqrt(1 - l^2); zero of f on (0, 1).
double lambda_residual(double lambda);
double solve_lambda();

double airy_ai(double x);
double airy_root_magnitude();

}  // namespace wavebound
