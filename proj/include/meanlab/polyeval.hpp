#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "meanlab/arith.hpp"
#include "meanlab/weights.hpp"
#include "meanlab/zeros.hpp"

namespace meanlab {

// A Dirichlet polynomial sum_n coeff_n * n^{-it} with real coefficients.
struct TermList {
    std::vector<double> coeff;
    std::vector<double> logn;
    std::string description;
    double length = 0.0;     // X
    double max_logn = 0.0;   // oscillation bound for the grid guards
    double sum_abs = 0.0;    // sum |coeff|
    double sum_sq = 0.0;     // sum coeff^2 (the diagonal)
};

// sum_{2<=n<=X} Lambda(n) V(log n) / (n^{1/2} log n) * n^{-it}
TermList weighted_vm_terms(double X, const WeightSpec& V, const ArithTables& tables);

// Same polynomial at general real part: coefficients V(log n)/(a n^{sigma}).
TermList weighted_vm_terms_sigma(double X, const WeightSpec& V, double sigma,
                                 const ArithTables& tables);

// sum_{n<=X} Lambda(n) (1 - log n/log X) / n^{1/2} * n^{-it}
TermList logderiv_terms(double X, const ArithTables& tables);

std::complex<double> eval_terms(const TermList& terms, double t);

std::complex<double> eval_weighted_vm(double t, double X, const WeightSpec& V,
                                      const ArithTables& tables);
std::complex<double> eval_logderiv(double t, double X, const ArithTables& tables);

// f(u) = (pi/2) u cot(pi u / 2) with f(0) = 1, f(1) = 0.
double goldston_f(double u);

// P_x(t) = -(1/pi) sum_{n<=x} Lambda(n) sin(t log n) f(log n/log x)/(n^{1/2} log n)
double goldston_Px(double t, double x, const ArithTables& tables);

// h(v) = sin(v) int_0^inf u/((u^2+v^2) sinh u) du; odd, h(0) = 0,
// |h(v)| <= C/(1+v^2) for large v. Spline-backed.
double goldston_h(double v);
// The inner integral g(v) (v > 0), exposed for oracle tests.
double goldston_h_inner(double v);

// Z_x(t) = (1/pi) sum_gamma h((t-gamma) log x), both signs of gamma,
// truncated where the 1/(1+v^2) envelope falls below envelope_eps.
double goldston_Zx(double t, double x, const ZeroTable& zeros, double envelope_eps = 1e-7);

// Selberg's Lambda_x weight: Lambda(n) for n <= x, Lambda(n) log(x^2/n)/log x
// for x < n <= x^2.
double selberg_lambda_x(double lambda_n, double log_n, double x);

// (1/pi) Im sum_{n<=x^2} Lambda_x(n) / (n^{1/2 + 1/log x + it} log n)
double selberg_S_approx(double t, double x, const ArithTables& tables);

// A Dirichlet polynomial sampled on the uniform grid t_j = T + j dt,
// j = 0..count (count intervals, count+1 values, covering [T, 2T]).
struct SampledPolynomial {
    double T = 0.0;
    double span = 0.0;
    std::int64_t count = 0;
    double dt = 0.0;
    double max_logn = 0.0;
    std::vector<std::complex<double>> values;
    std::string spec;
};

// Fast path: per-n phase rotors advanced multiplicatively, renormalized
// every 512 steps, reduced over fixed term stripes. Guard: dt max_logn <= pi/4.
SampledPolynomial eval_grid(const TermList& terms, double T, std::int64_t count);

enum class Part { re, im, abs };
Part part_from_string(const std::string& s);
const char* part_name(Part p);

// (1/T) int_T^{2T} part(P(t))^{two_k} dt, composite Simpson on the grid.
// Guard: dt * two_k * max_logn <= pi/2; count divisible by 4 for the
// half-grid Richardson error estimate (written to err_est when non-null).
double mean_power(const SampledPolynomial& sp, int two_k, Part part, double* err_est = nullptr);

// Writes (t, re, im) rows as CSV.
void write_grid_csv(const SampledPolynomial& sp, const std::string& path);

}  // namespace meanlab
