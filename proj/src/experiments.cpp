#include "meanlab/experiments.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <random>

#include "meanlab/errors.hpp"
#include "meanlab/kahan.hpp"
#include "meanlab/parallel.hpp"
#include "meanlab/quadrature.hpp"
#include "meanlab/special.hpp"
#include "meanlab/zeta.hpp"

namespace meanlab {

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

double log2_of(double T) { return std::log(std::log(T)); }
double log3_of(double T) { return std::log(std::log(std::log(T))); }

}  // namespace

// ---------------------------------------------------------------------------
// Kernels and constants
// ---------------------------------------------------------------------------

double k_kernel(double u) {
    u = std::abs(u);
    if (u == 0.0) return 0.0;
    if (u > 1.0 / (2.0 * M_PI)) return 1.0 / (4.0 * u * u);
    double inner;
    if (u < 5e-3) {
        const double p4 = M_PI * M_PI * M_PI * M_PI;
        inner = p4 * u / 6.0 + p4 * p4 * u * u * u / 90.0;
    } else {
        const double z = M_PI * M_PI * u;
        inner = 1.0 / (2.0 * u) - 0.5 * M_PI * M_PI * std::cos(z) / std::sin(z);
    }
    return inner * inner;
}

std::complex<double> fX_kernel(double y, double X) {
    const double L = std::log(X);
    const std::complex<double> w(0.0, y * L);
    if (std::abs(y * L) <= 0.5) {
        // sum_{k>=3} (2-k) w^k / k!, exact cancellation of the k<=2 terms
        std::complex<double> wk = w * w * w / 6.0;  // w^3/3!
        std::complex<double> acc = 0.0;
        for (int k = 3; k <= 14; ++k) {
            acc += static_cast<double>(2 - k) * wk;
            wk *= w / static_cast<double>(k + 1);
        }
        return acc / (y * y * y * L);
    }
    const std::complex<double> ew = std::polar(1.0, y * L);  // X^{iy}
    const std::complex<double> num = ew * (2.0 - w) - 2.0 - w;
    return num / (y * y * y * L);
}

FourierMain fX_fourier(double x, double X, double trunc_range) {
    if (X < 3.0) throw RangeError("fX_fourier: X must be >= 3");
    const double L = std::log(X);
    FourierMain out;
    out.value = (x > 0.0 && x < L)
                    ? std::complex<double>(0.0, 2.0 * M_PI * x * (L - x) / L)
                    : std::complex<double>(0.0, 0.0);
    out.trunc_bound = 4.0 / trunc_range + 4.0 / (trunc_range * trunc_range * L);
    return out;
}

double c_correlation(double y1, double y2, double tol) {
    const double d = y1 - y2;
    const double loglog2 = std::log(std::log(2.0));
    return std::cos(d * std::log(2.0)) *
               (loglog2 + kEulerGamma + prime_power_constant(tol)) +
           prime_power_cos_sum(d, tol);
}

// ---------------------------------------------------------------------------
// Exact F-integrals via per-pair antiderivatives
// ---------------------------------------------------------------------------

double f_cos_u2_integral(const ZeroTable& zeros, double T, double dy, double u_max,
                         double band) {
    zeros.require_coverage(T, "f_cos_u2_integral");
    const auto& g = zeros.ordinates();
    const std::size_t n = zeros.count_below(T);
    const double lt = std::log(T);
    const double B = dy * lt;
    const double U = u_max;

    std::array<KahanSum, kReductionSlots> partial;
    parallel_slots(kReductionSlots, [&](int s) {
        auto [lo, hi] = slot_stripe(static_cast<std::int64_t>(n), s);
        KahanSum acc;
        for (std::int64_t j = lo; j < hi; ++j) {
            const double gj = g[j];
            double row = 0.0;
            for (std::size_t k = j + 1; k < n && g[k] - gj <= band; ++k) {
                const double d = g[k] - gj;
                const double w = 4.0 / (4.0 + d * d);
                const double a = lt * d;
                row += w * (cos_over_u2_integral(a + B, U) + cos_over_u2_integral(a - B, U));
            }
            acc.add(row);
        }
        partial[s] = acc;
    });
    KahanSum total;
    for (int s = 0; s < kReductionSlots; ++s) total.merge(partial[s]);
    const double diag = static_cast<double>(n) * cos_over_u2_integral(B, U);
    return 2.0 * M_PI / (T * lt) * (total.result() + diag);
}

double logderiv_f_term(const ZeroTable& zeros, double t, double X, double band) {
    if (X < t) return 0.0;
    zeros.require_coverage(t, "logderiv_f_term");
    const double lt = std::log(t);
    const double LX = std::log(X);
    const double U = LX / lt;
    const double b = lt / LX;
    const auto& g = zeros.ordinates();
    const std::size_t n = zeros.count_below(t);

    std::array<KahanSum, kReductionSlots> partial;
    parallel_slots(kReductionSlots, [&](int s) {
        auto [lo, hi] = slot_stripe(static_cast<std::int64_t>(n), s);
        KahanSum acc;
        for (std::int64_t j = lo; j < hi; ++j) {
            const double gj = g[j];
            double row = 0.0;
            for (std::size_t k = j + 1; k < n && g[k] - gj <= band; ++k) {
                const double d = g[k] - gj;
                const double w = 4.0 / (4.0 + d * d);
                row += w * cos_poly2_integral(lt * d, b, U);
            }
            acc.add(row);
        }
        partial[s] = acc;
    });
    KahanSum total;
    for (int s = 0; s < kReductionSlots; ++s) total.merge(partial[s]);
    const double diag = static_cast<double>(n) * cos_poly2_integral(0.0, b, U);
    // t log^2 t * (2 pi/(t log t)) * pair_sum = 2 pi log t * pair_sum
    return 2.0 * M_PI * lt * (2.0 * total.result() + diag);
}

double logderiv_f_term_quadrature(const ZeroTable& zeros, double t, double X, int intervals) {
    if (X < t) return 0.0;
    if (intervals < 2 || intervals % 2 != 0)
        throw RangeError("logderiv_f_term_quadrature: intervals must be even");
    const double lt = std::log(t);
    const double U = std::log(X) / lt;
    if (U <= 1.0) return 0.0;
    const double b = lt / std::log(X);
    const double h = (U - 1.0) / intervals;
    KahanSum s;
    for (int j = 0; j <= intervals; ++j) {
        const double u = 1.0 + j * h;
        const double w = (j == 0 || j == intervals) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
        const double q = 1.0 - b * u;
        s.add(w * pair_correlation_F(u, zeros, t) * q * q);
    }
    return t * lt * lt * s.result() * h / 3.0;
}

// ---------------------------------------------------------------------------
// Convolution-formula checks
// ---------------------------------------------------------------------------

namespace {

// (1/2pi) int_{-1}^{1} log zeta(sigma + i(y+t)) Vhat(y) dy with panels split
// at tabulated ordinates; on the half-line the log|zeta| singularities get
// geometrically graded panels (12 levels).
std::complex<double> keyprop_rhs(double t, double sigma, const WeightSpec& V,
                                 const ZeroTable& zeros, double quad_tol) {
    auto vhat = [&](double y) {
        if (V.has_closed_transform()) return V.vhat_closed({y, 0.0}).real();
        return weight_transform(V, y, 1e-10 * V.log_support);
    };
    auto integrand = [&](double y) -> std::complex<double> {
        return log_zeta(sigma, t + y, zeros) * vhat(y);
    };
    // Panel breakpoints: ordinates within [t-1, t+1].
    std::vector<double> pts{-1.0, 1.0};
    const auto& g = zeros.ordinates();
    auto lo = std::lower_bound(g.begin(), g.end(), t - 1.0);
    std::vector<double> sing;
    for (auto it = lo; it != g.end() && *it <= t + 1.0; ++it) {
        pts.push_back(*it - t);
        sing.push_back(*it - t);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    const bool singular = (sigma == 0.5);
    KahanComplexSum total;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double a = pts[i], b = pts[i + 1];
        if (b - a < 1e-12) continue;
        const bool sing_a =
            singular && std::find(sing.begin(), sing.end(), a) != sing.end();
        const bool sing_b =
            singular && std::find(sing.begin(), sing.end(), b) != sing.end();
        const double tol = quad_tol * (b - a) / 2.0;
        if (sing_a && sing_b) {
            const double mid = 0.5 * (a + b);
            total.add(integrate_graded_complex(integrand, a, mid, true, 12, 0.5 * tol));
            total.add(integrate_graded_complex(integrand, mid, b, false, 12, 0.5 * tol));
        } else if (sing_a) {
            total.add(integrate_graded_complex(integrand, a, b, true, 12, tol));
        } else if (sing_b) {
            total.add(integrate_graded_complex(integrand, a, b, false, 12, tol));
        } else {
            total.add(integrate_adaptive_complex(integrand, a, b, tol, 800));
        }
    }
    return total.result() / (2.0 * M_PI);
}

}  // namespace

ExperimentReport check_key_prop(const KeyPropParams& p, const WeightSpec& V,
                                const ZeroTable& zeros, const ArithTables& tables) {
    Stopwatch sw;
    if (p.sigma < 0.5 || p.sigma > 1.0)
        throw RangeError("check_key_prop: sigma must be in [1/2, 1]");
    const double m = V.decay_exponent;
    if (p.X < std::pow(p.T, 0.05) || p.X > std::pow(p.T, 2.0 * m))
        throw RangeError("check_key_prop: X outside [T^eps, T^{2m}]");
    zeros.require_coverage(2.0 * p.T + 2.0, "check_key_prop");

    const TermList terms = weighted_vm_terms_sigma(p.X, V, p.sigma, tables);

    std::mt19937_64 rng(p.seed);
    std::uniform_real_distribution<double> uni(p.T, 2.0 * p.T);
    std::vector<double> samples(static_cast<std::size_t>(p.n_samples));
    for (auto& s : samples) {
        double t = uni(rng);
        while (p.sigma == 0.5 && zeros.nearest_gap(t) < 1e-6) t = uni(rng);
        s = t;
    }

    std::vector<double> diffs(samples.size());
    parallel_slots(kReductionSlots, [&](int slot) {
        auto [lo, hi] = slot_stripe(static_cast<std::int64_t>(samples.size()), slot);
        for (std::int64_t i = lo; i < hi; ++i) {
            const std::complex<double> lhs = eval_terms(terms, samples[i]);
            const std::complex<double> rhs =
                keyprop_rhs(samples[i], p.sigma, V, zeros, p.quad_tol);
            diffs[i] = std::abs(lhs - rhs);
        }
    });

    double mx = 0.0;
    KahanSum mean;
    for (double d : diffs) {
        mx = std::max(mx, d);
        mean.add(d);
    }

    ExperimentReport rep;
    rep.name = "key-prop";
    rep.params = {{"T", p.T},       {"X", p.X},           {"sigma", p.sigma},
                  {"n_samples", double(p.n_samples)}, {"seed", double(p.seed)},
                  {"quad_tol", p.quad_tol}};
    rep.params_text["weight"] = V.label;
    rep.empirical = mx;
    rep.components = {{"o1_reference", p.o1_reference}};
    rep.set_theoretical_from_components();
    rep.finalize_ratio();
    rep.params["mean_diff"] = mean.result() / static_cast<double>(samples.size());
    rep.error_budget = "contour truncation O(X^{1-sigma}/t^m) + tail O(1): X^{1-sigma}/T^m = " +
                       std::to_string(std::pow(p.X, 1.0 - p.sigma) / std::pow(p.T, m));
    rep.runtime_s = sw.seconds();
    return rep;
}

ExperimentReport check_logderiv_conv(const LogderivConvParams& p, const ZeroTable& zeros,
                                     const ArithTables& tables) {
    Stopwatch sw;
    if (p.X < std::pow(p.T, 0.05) || p.X > std::pow(p.T, 4.0))
        throw RangeError("check_logderiv_conv: X outside [T^eps, T^4]");
    const double Y = std::log(p.T) / log2_of(p.T);
    zeros.require_coverage(2.0 * p.T + Y + 1.0, "check_logderiv_conv");

    const TermList terms = logderiv_terms(p.X, tables);

    std::mt19937_64 rng(p.seed);
    std::uniform_real_distribution<double> uni(p.T, 2.0 * p.T);
    std::vector<double> samples(static_cast<std::size_t>(p.n_samples));
    for (auto& s : samples) s = uni(rng);

    std::vector<double> diffs(samples.size());
    parallel_slots(kReductionSlots, [&](int slot) {
        auto [lo, hi] = slot_stripe(static_cast<std::int64_t>(samples.size()), slot);
        for (std::int64_t i = lo; i < hi; ++i) {
            const double t = samples[i];
            const std::complex<double> lhs = eval_terms(terms, t);
            // RHS = int_{-Y}^{Y} S(t+y) f_X(y) dy, panels split at ordinates
            std::vector<double> pts{-Y, Y};
            const auto& g = zeros.ordinates();
            auto glo = std::lower_bound(g.begin(), g.end(), t - Y);
            for (auto it = glo; it != g.end() && *it <= t + Y; ++it) pts.push_back(*it - t);
            pts.push_back(0.0);  // kernel series switch point
            std::sort(pts.begin(), pts.end());
            pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
            KahanComplexSum rhs;
            for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
                if (pts[k + 1] - pts[k] < 1e-12) continue;
                rhs.add(integrate_adaptive_complex(
                    [&](double y) { return S_of_t(t + y, zeros) * fX_kernel(y, p.X); },
                    pts[k], pts[k + 1], p.quad_tol * (pts[k + 1] - pts[k]) / (2.0 * Y), 800));
            }
            diffs[i] = std::abs(lhs - rhs.result());
        }
    });

    double mx = 0.0;
    KahanSum mean;
    for (double d : diffs) {
        mx = std::max(mx, d);
        mean.add(d);
    }

    ExperimentReport rep;
    rep.name = "logderiv-conv";
    rep.params = {{"T", p.T}, {"X", p.X}, {"n_samples", double(p.n_samples)},
                  {"seed", double(p.seed)}, {"trunc_Y", Y}};
    rep.empirical = mx;
    rep.components = {{"o1_reference", p.o1_reference}};
    rep.set_theoretical_from_components();
    rep.finalize_ratio();
    rep.params["mean_diff"] = mean.result() / static_cast<double>(samples.size());
    rep.error_budget = "Mellin-shift O(1) + truncation O(1) at |y| > log T/log_2 T";
    rep.runtime_s = sw.seconds();
    return rep;
}

// ---------------------------------------------------------------------------
// Moment reports
// ---------------------------------------------------------------------------

std::int64_t auto_grid_count(double span, double max_logn, int two_k) {
    const double need1 = span * max_logn * 4.0 / M_PI;                 // dt logX <= pi/4
    const double need2 = span * two_k * max_logn * 2.0 / M_PI;         // dt 2k logX <= pi/2
    std::int64_t c = static_cast<std::int64_t>(std::ceil(std::max(need1, need2) * 1.05));
    c = std::max<std::int64_t>(c, 64);
    while (c % 4 != 0) ++c;
    return c;
}

ExperimentReport moment_report(const MomentParams& p, const WeightSpec& V,
                               const ArithTables& tables) {
    Stopwatch sw;
    if (p.two_k < 1) throw RangeError("moment_report: two_k must be >= 1");
    if (p.part == Part::abs && p.two_k % 2 != 0)
        throw RangeError("moment_report: abs moment needs even two_k");
    if (p.X > std::pow(p.T, 2.0 * V.decay_exponent))
        throw RangeError("moment_report: X exceeds T^{2m}");

    const double k = p.two_k / 2.0;
    const TermList terms = weighted_vm_terms(p.X, V, tables);
    const std::int64_t count =
        p.count > 0 ? p.count : auto_grid_count(p.T, terms.max_logn, p.two_k);
    const SampledPolynomial grid = eval_grid(terms, p.T, count);
    double quad_err = 0.0;
    const double mean = mean_power(grid, p.two_k, p.part, &quad_err);
    const double empirical = mean * p.T;

    const double y_short = std::pow(p.T, p.theta / k);
    const double s_v = prime_weight_sum(std::max(2.0, y_short), V, 2, tables);
    double main_coef;
    if (p.part == Part::abs) {
        main_coef = 1.0;
        for (int j = 2; j <= static_cast<int>(k); ++j) main_coef *= j;  // k!
    } else {
        main_coef = moment_constant_ck(p.two_k).value();
    }
    const double main_term = main_coef * p.T * std::pow(s_v, k);

    const double llt = log2_of(p.T);
    const double budget =
        p.T * std::pow(p.c_fit * std::max(k, 0.5), 4.0 * k) * std::pow(llt, k - 0.5);

    ExperimentReport rep;
    rep.name = "moments";
    rep.params = {{"T", p.T},       {"X", p.X},   {"two_k", double(p.two_k)},
                  {"theta", p.theta}, {"count", double(count)},
                  {"S_V", s_v},     {"Y_short", y_short}, {"quad_err", quad_err},
                  {"c_fit", p.c_fit}, {"error_budget_value", budget}};
    rep.params_text["part"] = part_name(p.part);
    rep.params_text["weight"] = V.label;
    rep.empirical = empirical;
    rep.components = {{"main_term", main_term}};
    rep.set_theoretical_from_components();
    rep.finalize_ratio();
    rep.error_budget = "T (C k)^{4k} (log log T)^{k-1/2} with C_fit = " + std::to_string(p.c_fit) +
                       " -> " + std::to_string(budget);
    rep.runtime_s = sw.seconds();
    return rep;
}

ExperimentReport logderiv_moment_report(const LogderivMomentParams& p, const ZeroTable& zeros,
                                        const ArithTables& tables) {
    Stopwatch sw;
    if (p.X > std::pow(p.T, 4.0)) throw RangeError("logderiv_moment_report: X exceeds T^4");
    zeros.require_coverage(2.0 * p.T, "logderiv_moment_report");

    const TermList terms = logderiv_terms(p.X, tables);
    const std::int64_t count =
        p.count > 0 ? p.count : auto_grid_count(p.T, terms.max_logn, 2);
    const SampledPolynomial grid = eval_grid(terms, p.T, count);
    double quad_err = 0.0;
    const double empirical = mean_power(grid, 2, Part::abs, &quad_err) * p.T;

    // T sum_{p <= min(T,X)} log^2 p / p (1 - log p/log X)^2, primes only
    const double LX = std::log(p.X);
    const double bound = std::min(p.T, p.X);
    KahanSum prime_sum;
    const auto& primes = tables.primes();
    const auto& logs = tables.prime_logs();
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (static_cast<double>(primes[i]) > bound) break;
        const double lp = logs[i];
        const double w = 1.0 - lp / LX;
        prime_sum.add(lp * lp * w * w / static_cast<double>(primes[i]));
    }
    const double prime_term = p.T * prime_sum.result();

    const double f_term = logderiv_f_term(zeros, 2.0 * p.T, p.X, p.band) -
                          logderiv_f_term(zeros, p.T, p.X, p.band);

    ExperimentReport rep;
    rep.name = "logderiv-moment";
    rep.params = {{"T", p.T},     {"X", p.X},       {"count", double(count)},
                  {"band", p.band}, {"quad_err", quad_err}};
    rep.empirical = empirical;
    rep.components = {{"prime_term", prime_term}, {"f_term", f_term}};
    rep.set_theoretical_from_components();
    rep.finalize_ratio();
    const double lt2 = std::log(p.T) * std::log(p.T);
    rep.params["corollary_ratio"] = empirical / (p.T * lt2);
    rep.error_budget = "o(T log^2 T); corollary: empirical/(T log^2 T) = " +
                       std::to_string(rep.params["corollary_ratio"]);
    rep.runtime_s = sw.seconds();
    return rep;
}

// ---------------------------------------------------------------------------
// S(t) correlations
// ---------------------------------------------------------------------------

namespace {

// int_lo^hi S(t+y1) S(t+y2) dt, panels split at every shifted ordinate so the
// jump process never gets aliased.
double s_product_integral(double lo, double hi, double y1, double y2, const ZeroTable& zeros) {
    const auto& g = zeros.ordinates();
    std::vector<double> pts{lo, hi};
    for (double shift : {y1, y2}) {
        auto it = std::lower_bound(g.begin(), g.end(), lo + shift);
        for (; it != g.end() && *it - shift <= hi; ++it) {
            const double t = *it - shift;
            if (t > lo && t < hi) pts.push_back(t);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    std::array<KahanSum, kReductionSlots> partial;
    parallel_slots(kReductionSlots, [&](int s) {
        auto [plo, phi] = slot_stripe(static_cast<std::int64_t>(pts.size()) - 1, s);
        KahanSum acc;
        for (std::int64_t i = plo; i < phi; ++i) {
            const double a = pts[i], b = pts[i + 1];
            if (b - a < 1e-13) continue;
            double err;
            acc.add(quad_g7k15(
                [&](double t) { return S_of_t(t + y1, zeros) * S_of_t(t + y2, zeros); }, a, b,
                err));
        }
        partial[s] = acc;
    });
    KahanSum total;
    for (int s = 0; s < kReductionSlots; ++s) total.merge(partial[s]);
    return total.result();
}

}  // namespace

ExperimentReport s_correlation_report(const SCorrParams& p, const ZeroTable& zeros,
                                      const ArithTables& tables) {
    Stopwatch sw;
    const double lt = std::log(p.T);
    if (std::abs(p.y1) > lt || std::abs(p.y2) > lt)
        throw RangeError("s_correlation_report: |y_j| must be <= log T");
    if (p.beta <= 0.0 || p.beta >= 0.5)
        throw RangeError("s_correlation_report: beta must be in (0, 1/2)");
    zeros.require_coverage(p.T + lt + 1.0, "s_correlation_report");
    if (p.with_residual) zeros.require_coverage(p.T + 50.0, "s_correlation_report residual");

    const double empirical = s_product_integral(0.0, p.T, p.y1, p.y2, zeros);

    const double d = p.y1 - p.y2;
    const double pref = p.T / (2.0 * M_PI * M_PI);
    double first;
    if (d == 0.0) {
        first = std::log(lt) - std::log(std::log(2.0));
    } else {
        first = cos_integral(std::abs(d) * lt) - cos_integral(std::abs(d) * std::log(2.0));
    }
    const double f_int = f_cos_u2_integral(zeros, p.T, d, p.u_max);
    const double c_const = c_correlation(p.y1, p.y2, p.tol);

    ExperimentReport rep;
    rep.name = "s-correlation";
    rep.params = {{"T", p.T},   {"y1", p.y1},     {"y2", p.y2},
                  {"beta", p.beta}, {"u_max", p.u_max}, {"envelope_eps", p.envelope_eps}};
    rep.empirical = empirical;
    rep.components = {{"log_integral", pref * first},
                      {"f_integral", pref * f_int},
                      {"c_constant", pref * c_const}};
    rep.set_theoretical_from_components();
    rep.finalize_ratio();
    rep.error_budget =
        "O(T d^2/(1+d^2)) + O(T |d| log_2 T) + o(T) with d = " + std::to_string(d);

    if (p.with_residual) {
        const double x = std::pow(p.T, p.beta);
        const auto& g = zeros.ordinates();
        std::vector<double> pts{1.0, p.T};
        for (double gv : g)
            if (gv > 1.0 && gv < p.T) pts.push_back(gv);
        std::sort(pts.begin(), pts.end());
        std::array<KahanSum, kReductionSlots> partial;
        parallel_slots(kReductionSlots, [&](int s) {
            auto [plo, phi] = slot_stripe(static_cast<std::int64_t>(pts.size()) - 1, s);
            KahanSum acc;
            for (std::int64_t i = plo; i < phi; ++i) {
                if (pts[i + 1] - pts[i] < 1e-13) continue;
                double err;
                acc.add(quad_g7k15(
                    [&](double t) {
                        const double r = S_of_t(t, zeros) - goldston_Px(t, x, tables) -
                                         goldston_Zx(t, x, zeros, p.envelope_eps);
                        return r * r;
                    },
                    pts[i], pts[i + 1], err));
            }
            partial[s] = acc;
        });
        KahanSum res;
        for (int s = 0; s < kReductionSlots; ++s) res.merge(partial[s]);
        rep.params["x"] = x;
        rep.params["residual"] = res.result();
        rep.params["residual_over_T"] = res.result() / p.T;
    }
    rep.runtime_s = sw.seconds();
    return rep;
}

// ---------------------------------------------------------------------------
// Large-deviation tails
// ---------------------------------------------------------------------------

ExperimentReport tail_report(const TailParams& p, const WeightSpec& V,
                             const ArithTables& tables) {
    Stopwatch sw;
    if (p.part == Part::abs) throw RangeError("tail_report: part must be re or im");
    if (p.X > std::pow(p.T, 2.0 * V.decay_exponent))
        throw RangeError("tail_report: X exceeds T^{2m}");
    const double llt = log2_of(p.T);
    const double lllt = log3_of(p.T);

    std::vector<double> ws = p.W_list;
    if (ws.empty()) {
        const double w0 = std::sqrt(llt);
        for (int i = 0; i <= 12; ++i) ws.push_back(w0 * (1.0 + 3.0 * i / 12.0));
    }
    std::sort(ws.begin(), ws.end());
    for (double w : ws)
        if (w < std::sqrt(llt) - 1e-9)
            throw RangeError("tail_report: W must be >= sqrt(log log T)");

    // Normalization: V(0) when Vhat >= 0 on [-1, 1]; otherwise the remark
    // path (1/2pi) int |Vhat|.
    bool remark = false;
    double vhat_min = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double y = -1.0 + 2.0 * i / 400.0;
        const double vh = V.has_closed_transform() ? V.vhat_closed({y, 0.0}).real()
                                                   : weight_transform(V, y, 1e-8);
        vhat_min = std::min(vhat_min, vh);
    }
    double norm = V.value(0.0);
    if (vhat_min < -1e-9 * V.log_support) {
        remark = true;
        norm = integrate_adaptive(
                   [&](double y) {
                       return std::abs(V.has_closed_transform()
                                           ? V.vhat_closed({y, 0.0}).real()
                                           : weight_transform(V, y, 1e-8));
                   },
                   -1.0, 1.0, 1e-8, 2000) /
               (2.0 * M_PI);
    }

    const TermList terms = weighted_vm_terms(p.X, V, tables);
    const std::int64_t count =
        p.count > 0 ? p.count : auto_grid_count(p.T, terms.max_logn, 1);
    const SampledPolynomial grid = eval_grid(terms, p.T, count);

    ExperimentReport rep;
    rep.name = "tails";
    rep.params = {{"T", p.T},     {"X", p.X},   {"count", double(count)},
                  {"eps", p.eps}, {"c_fit", p.c_fit}, {"normalization", norm},
                  {"remark_path", remark ? 1.0 : 0.0}};
    rep.params_text["part"] = part_name(p.part);
    rep.params_text["weight"] = V.label;

    double worst_excess = 0.0;
    for (double W : ws) {
        const double thr = W * norm;
        std::int64_t hits = 0;
        for (std::int64_t j = 0; j < grid.count; ++j) {
            const std::complex<double> v = grid.values[static_cast<std::size_t>(j)];
            const double val = (p.part == Part::im) ? std::abs(v.imag()) : v.real();
            if (val >= thr) ++hits;
        }
        const double tail = static_cast<double>(hits) * grid.dt / p.T;
        const double gauss = std::exp(-(1.0 - p.eps) * W * W / llt);
        const double wlogw = std::exp(-p.c_fit * W * std::log(std::max(W, 1.01)));
        double A;
        if (W <= llt)
            A = 0.5 * lllt;
        else if (W <= 0.5 * llt * lllt)
            A = llt * lllt / (2.0 * W);
        else
            A = 1.0;
        const double Y = std::pow(p.T, A / W);
        const double Z = std::pow(Y, 1.0 / llt);
        // split-sum diagonals sum_{p<=Z} c_p^2 and sum_{Z<p<=Y} c_p^2 with
        // c_p = p^{-1/2 - 1/(2 log Y)} log(Y/p)/log Y
        KahanSum f1d, f2d;
        const double lY = std::log(Y);
        for (std::size_t i = 0; i < tables.primes().size(); ++i) {
            const double pv = static_cast<double>(tables.primes()[i]);
            if (pv > Y) break;
            const double lp = tables.prime_logs()[i];
            const double c = std::exp(-(0.5 + 0.5 / lY) * lp) * (lY - lp) / lY;
            (pv <= Z ? f1d : f2d).add(c * c);
        }
        rep.rows.push_back({{"W", W},
                            {"empirical", tail},
                            {"gauss_bound", gauss},
                            {"wlogw_bound", wlogw},
                            {"bound", gauss + wlogw},
                            {"A", A},
                            {"Y_split", Y},
                            {"Z_split", Z},
                            {"f1_diag", f1d.result()},
                            {"f2_diag", f2d.result()}});
        if (gauss + wlogw > 0.0) worst_excess = std::max(worst_excess, tail / (gauss + wlogw));
    }
    rep.empirical = rep.rows.front().at("empirical");
    rep.components = {{"bound_at_Wmin", rep.rows.front().at("bound")}};
    rep.set_theoretical_from_components();
    rep.finalize_ratio();
    rep.params["worst_excess"] = worst_excess;
    rep.error_budget = "exp(-(1-eps) W^2/log log T) + exp(-C_fit W log W), eps = " +
                       std::to_string(p.eps) + ", C_fit = " + std::to_string(p.c_fit);
    rep.runtime_s = sw.seconds();
    return rep;
}

}  // namespace meanlab
