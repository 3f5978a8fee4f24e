#pragma once

#include <complex>

namespace meanlab {

// log Gamma(z) for Re(z) > 0, Stirling series with recurrence shift.
// Continuous branch (principal on the right half plane), ~1e-14 relative.
std::complex<double> log_gamma_complex(std::complex<double> z);

// Sine and cosine integrals. Si(x) = int_0^x sin u / u du (odd in x),
// Ci(x) = gamma + log x + int_0^x (cos u - 1)/u du for x > 0.
double sin_integral(double x);
double cos_integral(double x);

// int_1^U cos(c u) / u^2 du, exact via Si.
double cos_over_u2_integral(double c, double U);

// int_1^U cos(a u) (1 - b u)^2 du, elementary antiderivative.
double cos_poly2_integral(double a, double b, double U);

}  // namespace meanlab
