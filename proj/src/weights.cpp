#include "meanlab/weights.hpp"

#include <algorithm>
#include <cmath>

#include "meanlab/errors.hpp"
#include "meanlab/kahan.hpp"
#include "meanlab/quadrature.hpp"

namespace meanlab {

namespace {

// sinc(w)^2 = (sin w / w)^2 for complex w, series near the origin.
std::complex<double> sinc_sq(std::complex<double> w) {
    if (std::abs(w) < 1e-3) {
        const std::complex<double> w2 = w * w;
        return 1.0 - w2 / 3.0 + 2.0 * w2 * w2 / 45.0 - w2 * w2 * w2 / 315.0;
    }
    const std::complex<double> s = std::sin(w) / w;
    return s * s;
}

}  // namespace

WeightSpec fejer_weight(double X) {
    if (X < 3.0) throw RangeError("fejer_weight: X must be >= 3");
    const double L = std::log(X);
    WeightSpec w;
    w.log_support = L;
    w.decay_exponent = 2;
    w.label = "fejer";
    w.v = [L](double x) {
        const double a = 1.0 - std::abs(x) / L;
        return a > 0.0 ? a : 0.0;
    };
    w.vhat_closed = [L](std::complex<double> z) { return L * sinc_sq(0.5 * z * L); };
    w.knots = {-L, 0.0, L};
    return w;
}

WeightSpec sharp_cutoff_weight(double X) {
    if (X < 3.0) throw RangeError("sharp_cutoff_weight: X must be >= 3");
    const double L = std::log(X);
    WeightSpec w;
    w.log_support = L;
    w.decay_exponent = 2;  // claimed, not actually attained
    w.label = "sharp-cutoff";
    w.v = [L](double x) { return std::abs(x) <= L ? 1.0 : 0.0; };
    w.vhat_closed = [L](std::complex<double> z) -> std::complex<double> {
        if (std::abs(z) < 1e-8) {
            // 2 sin(Lz)/z  ~  2L (1 - (Lz)^2/6)
            const std::complex<double> lz = L * z;
            return 2.0 * L * (1.0 - lz * lz / 6.0);
        }
        return 2.0 * std::sin(L * z) / z;
    };
    w.knots = {-L, L};
    return w;
}

WeightSpec scaled_weight(const WeightSpec& w, double factor) {
    WeightSpec s = w;
    s.label = w.label + "*" + std::to_string(factor);
    auto base_v = w.v;
    s.v = [base_v, factor](double x) { return factor * base_v(x); };
    if (w.vhat_closed) {
        auto base_t = w.vhat_closed;
        s.vhat_closed = [base_t, factor](std::complex<double> z) { return factor * base_t(z); };
    }
    return s;
}

double weight_transform(const WeightSpec& w, double y, double quad_tol) {
    if (quad_tol <= 0.0) throw RangeError("weight_transform: quad_tol must be positive");
    const double L = w.log_support;
    // Even real V: Vhat(y) = 2 int_0^L cos(xy) V(x) dx.
    std::vector<double> pts{0.0, L};
    for (double k : w.knots)
        if (k > 0.0 && k < L) pts.push_back(k);
    // Split panels so each holds a bounded number of oscillations of cos(xy).
    const double osc = std::abs(y);
    if (osc * L > 4.0) {
        const double step = 3.0 / osc;
        for (double x = step; x < L; x += step) pts.push_back(x);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    KahanSum total;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        total.add(integrate_adaptive(
            [&](double x) { return std::cos(x * y) * w.v(x); }, pts[i], pts[i + 1],
            0.5 * quad_tol * (pts[i + 1] - pts[i]) / L, 2000));
    }
    return 2.0 * total.result();
}

std::complex<double> weight_transform_line(const WeightSpec& w, std::complex<double> z,
                                           double quad_tol) {
    const double L = w.log_support;
    std::vector<double> pts{-L, L};
    for (double k : w.knots)
        if (k > -L && k < L) pts.push_back(k);
    const double osc = std::abs(z.imag());
    if (osc * L > 4.0) {
        const double step = 3.0 / osc;
        for (double x = -L + step; x < L; x += step) pts.push_back(x);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    KahanComplexSum total;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        total.add(integrate_adaptive_complex(
            [&](double x) { return std::exp(x * z) * w.v(x); }, pts[i], pts[i + 1],
            0.5 * quad_tol * (pts[i + 1] - pts[i]) / L, 2000));
    }
    return total.result();
}

PropertyReport check_properties(const WeightSpec& w, int samples) {
    if (samples < 100) throw RangeError("check_properties: samples must be >= 100");
    PropertyReport rep;
    const double L = w.log_support;

    // --- condition (i): even, supported in [-L, L], bounded -----------------
    rep.even_ok = true;
    rep.support_ok = true;
    double sup = 0.0;
    const int n1 = 4 * samples;
    for (int i = 0; i <= n1; ++i) {
        const double x = -2.0 * L + 4.0 * L * i / n1;
        const double vx = w.v(x);
        const double vmx = w.v(-x);
        sup = std::max(sup, std::abs(vx));
        if (std::abs(vx - vmx) > 1e-12 * std::max(1.0, std::abs(vx))) rep.even_ok = false;
        if (std::abs(x) > L * (1.0 + 1e-12) && vx != 0.0) rep.support_ok = false;
    }
    rep.sup_abs = sup;
    rep.bounded_ok = std::isfinite(sup);

    // --- condition (ii): |Vhat(z/i)| <= C X^{Re z} / |Im z|^m ---------------
    // Certified on the lines Re z in {0, 1/L, 1/2} with Im z up to 1e3.
    const int m = w.decay_exponent;
    rep.decay_ok = true;
    rep.decay_growth = 0.0;
    for (double re : {0.0, 1.0 / L, 0.5}) {
        const double xpow = std::exp(re * L);  // X^{Re z}
        double c_inner = 0.0, c_outer = 0.0;
        for (int i = 0; i < samples; ++i) {
            const double im = std::pow(10.0, 3.0 * (i + 1.0) / samples);  // (1, 1e3]
            const std::complex<double> z{re, im};
            std::complex<double> vh;
            if (w.has_closed_transform())
                vh = w.vhat_closed(z / std::complex<double>(0.0, 1.0));
            else
                vh = weight_transform_line(w, z, 1e-9 * xpow);
            const double c = std::abs(vh) * std::pow(im, m) / xpow;
            (im <= 31.622776601683793 ? c_inner : c_outer) = std::max(
                im <= 31.622776601683793 ? c_inner : c_outer, c);
        }
        rep.decay_constant[re] = std::max(c_inner, c_outer);
        if (c_inner > 0.0) rep.decay_growth = std::max(rep.decay_growth, c_outer / c_inner);
    }
    if (rep.decay_growth > 2.0) rep.decay_ok = false;

    // --- condition (iii): (1/L) |Vhat(y/L)| <= C / (1 + y^2) ----------------
    const double y_split = 30.0, y_max = 60.0;
    double c_all = 0.0, c_tail = 0.0, c_inner = 0.0, c_outer = 0.0, small_sup = 0.0;
    const int n3 = 8 * samples;
    for (int i = 1; i <= n3; ++i) {
        const double y = y_max * i / n3;
        double vh;
        if (w.has_closed_transform())
            vh = w.vhat_closed(std::complex<double>(y / L, 0.0)).real();
        else
            vh = weight_transform(w, y / L, 1e-10 * L);
        const double scaled = std::abs(vh) / L;
        const double c = scaled * (1.0 + y * y);
        c_all = std::max(c_all, c);
        if (y >= 2.0) c_tail = std::max(c_tail, c);
        if (y < 2.0) small_sup = std::max(small_sup, scaled);
        (y <= y_split ? c_inner : c_outer) = std::max(y <= y_split ? c_inner : c_outer, c);
    }
    rep.envelope_constant = c_all;
    rep.envelope_constant_tail = c_tail;
    rep.small_y_sup = small_sup;
    rep.envelope_growth = c_inner > 0.0 ? c_outer / c_inner : 0.0;
    rep.envelope_ok = rep.envelope_growth <= 1.5;
    return rep;
}

double fourier_inversion_check(const WeightSpec& w, std::uint64_t p, double truncation,
                               double quad_tol) {
    if (truncation <= 0.0) throw RangeError("fourier_inversion_check: truncation must be > 0");
    const double lp = std::log(static_cast<double>(p));
    const double L = w.log_support;
    auto vhat = [&](double y) {
        if (w.has_closed_transform())
            return w.vhat_closed(std::complex<double>(y, 0.0)).real();
        return weight_transform(w, y, quad_tol);
    };
    // Integrand oscillates at combined frequency ~ L + log p; pre-split.
    const double freq = L + lp;
    const double step = std::max(1e-3, 2.5 / freq);
    std::vector<double> pts;
    for (double y = 0.0; y < truncation; y += step) pts.push_back(y);
    pts.push_back(truncation);
    KahanSum total;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        total.add(integrate_adaptive(
            [&](double y) { return std::cos(y * lp) * vhat(y); }, pts[i], pts[i + 1],
            quad_tol * (pts[i + 1] - pts[i]) / truncation, 400));
    }
    // Even integrand: full integral = 2 * [0, B].
    const double inv = 2.0 * total.result() / (2.0 * M_PI);
    return inv - w.v(lp);
}

}  // namespace meanlab
