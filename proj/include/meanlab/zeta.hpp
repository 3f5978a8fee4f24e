#pragma once

#include <complex>

#include "meanlab/zeros.hpp"

namespace meanlab {

// A zeta evaluation with its error estimate. log_value carries the branch
// continued horizontally from sigma = +infinity (principal there).
struct ZetaPoint {
    double sigma = 0.0;
    double t = 0.0;
    std::complex<double> value;
    std::complex<double> log_value;
    double err_est = 0.0;
    bool precision_loss = false;  // |value| < 1e-12
};

// Riemann-Siegel theta by the asymptotic series (four correction terms);
// error < 1e-10 for t >= 10. Throws std::domain_error below 10.
double riemann_siegel_theta(double t);

// theta for any t >= 0: series above 10, log Gamma(1/4 + it/2) below.
double theta_any(double t);

// theta'(t) = (1/2) log(t/2pi) + 1/(8t^2) + ...
double theta_derivative(double t);

// Hardy Z(t) = e^{i theta(t)} zeta(1/2 + it), real for real t. Riemann-Siegel
// main sum with correction terms above kHardySwitch, Euler-Maclaurin below.
double hardy_Z(double t);

// Same value without the t >= 10 domain guard (Euler-Maclaurin path extends
// to t = 0); the zero locator scans below the first Gram point.
double hardy_Z_any(double t);

// The t value above which hardy_Z uses the Riemann-Siegel expansion.
inline constexpr double kHardySwitch = 1400.0;

// Euler-Maclaurin zeta for sigma in [1/2, 4], t in [0, 1e7].
ZetaPoint zeta(double sigma, double t);

// Bare Euler-Maclaurin value (no log continuation), for internal reuse.
std::complex<double> zeta_em(std::complex<double> s, double* err_est = nullptr);

// log zeta with the Selberg branch: at sigma = 1/2 the value is
// log|Z(t)| + i pi S(t) with S from the table; for sigma > 1/2 the branch is
// continued horizontally from sigma = 3. Throws SingularPointError when t
// coincides with a tabulated ordinate on the half-line.
std::complex<double> log_zeta(double sigma, double t, const ZeroTable& zeros);

// S(t) = N(t) - theta(t)/pi - 1 with N counted from the table.
double S_of_t(double t, const ZeroTable& zeros);

}  // namespace meanlab
