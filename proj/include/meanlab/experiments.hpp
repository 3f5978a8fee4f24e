#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "meanlab/arith.hpp"
#include "meanlab/polyeval.hpp"
#include "meanlab/report.hpp"
#include "meanlab/weights.hpp"
#include "meanlab/zeros.hpp"

namespace meanlab {

// Zero-sum kernel: ((1/(2u) - (pi^2/2) cot(pi^2 u))^2 for |u| <= 1/(2 pi),
// 1/(4u^2) beyond; continuous across the seam, -> 0 at u = 0.
double k_kernel(double u);

// Contour kernel f_X(y) = (X^{iy}(2 - iy log X) - 2 - iy log X)/(y^3 log X),
// with f_X(0) = i (log X)^2/6.
std::complex<double> fX_kernel(double y, double X);

// Closed form of int_{|y|<=trunc_range} e^{-ixy} f_X(y) dy:
// indicator(0 < x < log X) * 2 pi i x (log X - x)/log X, plus a bound on the
// truncation error from the omitted |y| > trunc_range tails.
struct FourierMain {
    std::complex<double> value;
    double trunc_bound;
};
FourierMain fX_fourier(double x, double X, double trunc_range = 1e9);

// c(y1, y2) = cos((y1-y2) log 2)(log log 2 + gamma + sum 1/(m p^m))
//             + sum_p sum_{m>=2} cos(m (y2-y1) log p)/(m^2 p^m)
double c_correlation(double y1, double y2, double tol = 1e-10);

// int_1^{u_max} F(u,T) cos(u dy log T)/u^2 du, evaluated exactly per zero
// pair via Si-based antiderivatives; pairs outside |g1-g2| <= band carry a
// negligible weight (bound recorded by the callers).
double f_cos_u2_integral(const ZeroTable& zeros, double T, double dy, double u_max,
                         double band = 600.0);

// t log^2 t int_1^{log X/log t} F(u,t)(1 - u log t/log X)^2 du via elementary
// per-pair antiderivatives; zero when X < t.
double logderiv_f_term(const ZeroTable& zeros, double t, double X, double band = 200.0);

// Same quantity by composite Simpson over pair_correlation_F (cross-check).
double logderiv_f_term_quadrature(const ZeroTable& zeros, double t, double X, int intervals);

struct KeyPropParams {
    double T = 0.0;
    double X = 0.0;
    double sigma = 0.5;
    int n_samples = 64;
    std::uint64_t seed = 1;
    double quad_tol = 1e-5;
    double o1_reference = 1.0;  // calibrated O(1) constant the max diff is compared to
};
ExperimentReport check_key_prop(const KeyPropParams& p, const WeightSpec& V,
                                const ZeroTable& zeros, const ArithTables& tables);

struct LogderivConvParams {
    double T = 0.0;
    double X = 0.0;
    int n_samples = 32;
    std::uint64_t seed = 1;
    double quad_tol = 1e-5;
    double o1_reference = 1.0;
};
ExperimentReport check_logderiv_conv(const LogderivConvParams& p, const ZeroTable& zeros,
                                     const ArithTables& tables);

struct MomentParams {
    double T = 0.0;
    double X = 0.0;
    int two_k = 2;
    Part part = Part::abs;
    double theta = 0.25;
    std::int64_t count = 0;  // 0 -> derived from the resolution guards
    double c_fit = 1.0;      // fitted constant in the error budget
};
ExperimentReport moment_report(const MomentParams& p, const WeightSpec& V,
                               const ArithTables& tables);

struct LogderivMomentParams {
    double T = 0.0;
    double X = 0.0;
    std::int64_t count = 0;
    double band = 200.0;
};
ExperimentReport logderiv_moment_report(const LogderivMomentParams& p, const ZeroTable& zeros,
                                        const ArithTables& tables);

struct SCorrParams {
    double T = 0.0;
    double y1 = 0.0;
    double y2 = 0.0;
    double beta = 0.4;
    double u_max = 8.0;
    double envelope_eps = 1e-6;
    bool with_residual = true;
    double tol = 1e-9;
};
ExperimentReport s_correlation_report(const SCorrParams& p, const ZeroTable& zeros,
                                      const ArithTables& tables);

struct TailParams {
    double T = 0.0;
    double X = 0.0;
    Part part = Part::im;  // re or im
    std::vector<double> W_list;  // empty -> sweep sqrt(llT) .. 4 sqrt(llT)
    double eps = 0.1;
    double c_fit = 2.0;  // fitted constant of the W log W branch
    std::int64_t count = 0;
};
ExperimentReport tail_report(const TailParams& p, const WeightSpec& V, const ArithTables& tables);

// Grid count satisfying both resolution guards with 5% headroom, rounded up
// to a multiple of 4.
std::int64_t auto_grid_count(double span, double max_logn, int two_k);

}  // namespace meanlab
