#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace meanlab {

// A weight V with compact support [-log_support, log_support], its optional
// closed-form transform, and the decay exponent m of the vertical-line bound
//   |Vhat(z/i)| <= C X^{Re z} / |Im z|^m.
struct WeightSpec {
    double log_support = 0.0;  // half-width of supp V
    int decay_exponent = 2;    // m >= 2
    std::string label;
    std::function<double(double)> v;
    // Closed-form Vhat(z) = int e^{ixz} V(x) dx for complex z; may be empty.
    std::function<std::complex<double>(std::complex<double>)> vhat_closed;
    // Kinks of V; quadrature panels split here. Defaults to {-L, 0, L}.
    std::vector<double> knots;

    double value(double x) const { return v(x); }
    bool has_closed_transform() const { return static_cast<bool>(vhat_closed); }
};

// Certification summary for the three weight-class conditions.
struct PropertyReport {
    // condition (i)
    bool even_ok = false;
    bool support_ok = false;
    bool bounded_ok = false;
    double sup_abs = 0.0;
    // condition (ii): fitted C per Re(z) line, plus decay diagnostic
    std::map<double, double> decay_constant;
    double decay_growth = 0.0;  // outer-range C / inner-range C, max over lines
    bool decay_ok = false;
    // condition (iii)
    double envelope_constant = 0.0;        // fitted C over all sampled y
    double envelope_constant_tail = 0.0;   // fitted C over |y| >= 2
    double small_y_sup = 0.0;              // sup of (1/L)|Vhat(y/L)| over |y| < 2
    double envelope_growth = 0.0;          // outer / inner fitted C
    bool envelope_ok = false;

    bool all_pass() const { return even_ok && support_ok && bounded_ok && decay_ok && envelope_ok; }
};

// Triangular weight V(x) = max(0, 1 - |x|/log X) with transform
// Vhat(z) = L * (sin(zL/2)/(zL/2))^2, L = log X. Requires X >= 3.
WeightSpec fejer_weight(double X);

// Indicator of [-log X, log X]; its transform decays only like 1/y, so it
// fails the 1/(1+y^2) envelope. Kept around as a negative control.
WeightSpec sharp_cutoff_weight(double X);

// factor * V with the same support and kinks.
WeightSpec scaled_weight(const WeightSpec& w, double factor);

// Numeric Vhat(y) = int e^{ixy} V(x) dx by adaptive panels split at the
// knots. Real for even real V; |result - exact| <= quad_tol.
double weight_transform(const WeightSpec& w, double y, double quad_tol);

// Numeric Vhat(z/i) = int e^{xz} V(x) dx along a vertical line in z.
std::complex<double> weight_transform_line(const WeightSpec& w, std::complex<double> z,
                                           double quad_tol);

// Certifies conditions (i)-(iii) on sample grids; samples >= 100.
PropertyReport check_properties(const WeightSpec& w, int samples);

// (1/2pi) int_{-B}^{B} cos(y log p) Vhat(y) dy - V(log p), B = truncation.
double fourier_inversion_check(const WeightSpec& w, std::uint64_t p, double truncation,
                               double quad_tol = 1e-9);

}  // namespace meanlab
