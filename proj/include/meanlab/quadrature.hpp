#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "meanlab/errors.hpp"
#include "meanlab/kahan.hpp"

namespace meanlab {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
// Column 0: |node|, column 1: Gauss weight (0 for Kronrod-only nodes),
// column 2: Kronrod weight.
inline constexpr double kG7K15[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0,               0.204432940075298},
    {0.586087235467691, 0.0,               0.169004726639267},
    {0.864864423359769, 0.0,               0.104790010322250},
    {0.991455371120813, 0.0,               0.022935322010529},
};

template <class Func>
double quad_g7k15(const Func& f, double a, double b, double& err) {
    const double mid = 0.5 * (a + b);
    const double h = b - mid;
    const double y0 = f(mid);
    double g7 = kG7K15[0][1] * y0;
    double k15 = kG7K15[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        const double dx = h * kG7K15[i][0];
        const double yi = f(mid + dx) + f(mid - dx);
        g7 += kG7K15[i][1] * yi;
        k15 += kG7K15[i][2] * yi;
    }
    g7 *= h;
    k15 *= h;
    err = std::abs(g7 - k15);
    err = 200.0 * err * std::sqrt(err > 0 ? err : 0.0);
    return k15;
}

template <class Func>
std::complex<double> quad_g7k15_complex(const Func& f, double a, double b, double& err) {
    const double mid = 0.5 * (a + b);
    const double h = b - mid;
    const std::complex<double> y0 = f(mid);
    std::complex<double> g7 = kG7K15[0][1] * y0;
    std::complex<double> k15 = kG7K15[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        const double dx = h * kG7K15[i][0];
        const std::complex<double> yi = f(mid + dx) + f(mid - dx);
        g7 += kG7K15[i][1] * yi;
        k15 += kG7K15[i][2] * yi;
    }
    g7 *= h;
    k15 *= h;
    err = std::abs(g7 - k15);
    err = 200.0 * err * std::sqrt(err > 0 ? err : 0.0);
    return k15;
}

// Adaptive bisection on a panel stack. abs_tol is an absolute target for the
// whole interval; panels are split until their error estimates sum below it.
template <class Func>
double integrate_adaptive(const Func& f, double a, double b, double abs_tol,
                          int max_panels = 4000) {
    struct Panel {
        double a, b;
    };
    std::vector<Panel> stack{{a, b}};
    KahanSum total;
    double err_total = 0.0;
    int used = 0;
    while (!stack.empty()) {
        const Panel p = stack.back();
        stack.pop_back();
        double err;
        const double val = quad_g7k15(f, p.a, p.b, err);
        const double local_tol = abs_tol * (p.b - p.a) / (b - a);
        if (err <= std::max(local_tol, 1e-300) || ++used >= max_panels ||
            (p.b - p.a) < 1e-14 * (std::abs(p.a) + std::abs(p.b) + 1.0)) {
            total.add(val);
            err_total += err;
            continue;
        }
        const double mid = 0.5 * (p.a + p.b);
        stack.push_back({p.a, mid});
        stack.push_back({mid, p.b});
    }
    if (err_total > 10.0 * abs_tol && used >= max_panels)
        throw QuadratureError("adaptive quadrature did not converge", err_total);
    return total.result();
}

template <class Func>
std::complex<double> integrate_adaptive_complex(const Func& f, double a, double b,
                                                double abs_tol, int max_panels = 4000) {
    struct Panel {
        double a, b;
    };
    std::vector<Panel> stack{{a, b}};
    KahanComplexSum total;
    double err_total = 0.0;
    int used = 0;
    while (!stack.empty()) {
        const Panel p = stack.back();
        stack.pop_back();
        double err;
        const std::complex<double> val = quad_g7k15_complex(f, p.a, p.b, err);
        const double local_tol = abs_tol * (p.b - p.a) / (b - a);
        if (err <= std::max(local_tol, 1e-300) || ++used >= max_panels ||
            (p.b - p.a) < 1e-14 * (std::abs(p.a) + std::abs(p.b) + 1.0)) {
            total.add(val);
            err_total += err;
            continue;
        }
        const double mid = 0.5 * (p.a + p.b);
        stack.push_back({p.a, mid});
        stack.push_back({mid, p.b});
    }
    if (err_total > 10.0 * abs_tol && used >= max_panels)
        throw QuadratureError("adaptive quadrature did not converge", err_total);
    return total.result();
}

// Integrates over [a, b] split at the supplied knots (kinks of the
// integrand). Knots outside (a, b) are ignored.
template <class Func>
double integrate_with_knots(const Func& f, double a, double b,
                            const std::vector<double>& knots, double abs_tol) {
    std::vector<double> pts{a, b};
    for (double k : knots)
        if (k > a && k < b) pts.push_back(k);
    std::sort(pts.begin(), pts.end());
    KahanSum total;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (pts[i + 1] - pts[i] < 1e-15) continue;
        total.add(integrate_adaptive(f, pts[i], pts[i + 1],
                                     abs_tol * (pts[i + 1] - pts[i]) / (b - a)));
    }
    return total.result();
}

// Integrates f over [a, b] where f has an integrable (logarithmic)
// singularity at one endpoint. Panels are graded geometrically toward the
// singular end over `levels` halvings; the innermost sliver is dropped,
// which for a log singularity contributes O(width * |log width|).
template <class Func>
std::complex<double> integrate_graded_complex(const Func& f, double a, double b,
                                              bool singular_at_a, int levels,
                                              double abs_tol) {
    KahanComplexSum total;
    double width = b - a;
    double lo = a, hi = b;
    for (int lev = 0; lev < levels; ++lev) {
        const double mid = singular_at_a ? lo + 0.5 * (hi - lo) : hi - 0.5 * (hi - lo);
        double s0 = singular_at_a ? mid : lo;
        double s1 = singular_at_a ? hi : mid;
        total.add(integrate_adaptive_complex(f, s0, s1, abs_tol / levels, 200));
        if (singular_at_a)
            hi = mid;
        else
            lo = mid;
        if (hi - lo < 1e-13 * width) break;
    }
    return total.result();
}

}  // namespace meanlab
