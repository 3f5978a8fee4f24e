#include "meanlab/zeta.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <vector>

#include "meanlab/errors.hpp"
#include "meanlab/kahan.hpp"
#include "meanlab/special.hpp"

namespace meanlab {

namespace {

constexpr double kTwoPi = 6.2831853071795864769;

}  // namespace

double riemann_siegel_theta(double t) {
    if (t < 10.0) throw std::domain_error("riemann_siegel_theta: t must be >= 10");
    const double lt = std::log(t / kTwoPi);
    const double t2 = t * t;
    double corr = 1.0 / (48.0 * t);
    corr += 7.0 / (5760.0 * t * t2);
    corr += 31.0 / (80640.0 * t * t2 * t2);
    corr += 127.0 / (430080.0 * t * t2 * t2 * t2);
    corr += 511.0 / (1216512.0 * t * t2 * t2 * t2 * t2);
    return 0.5 * t * lt - 0.5 * t - M_PI / 8.0 + corr;
}

double theta_any(double t) {
    if (t < 0.0) throw std::domain_error("theta_any: t must be >= 0");
    if (t >= 10.0) return riemann_siegel_theta(t);
    if (t == 0.0) return 0.0;
    const std::complex<double> lg = log_gamma_complex({0.25, 0.5 * t});
    return lg.imag() - 0.5 * t * std::log(M_PI);
}

double theta_derivative(double t) {
    if (t < 10.0) throw std::domain_error("theta_derivative: t must be >= 10");
    return 0.5 * std::log(t / kTwoPi) - 1.0 / (48.0 * t * t) - 7.0 / (1920.0 * t * t * t * t);
}

// ---------------------------------------------------------------------------
// Euler-Maclaurin zeta
// ---------------------------------------------------------------------------

namespace {

// B_{2k} / (2k)! for k = 1..12
constexpr double kBernFact[] = {
    8.3333333333333333e-02,  -1.3888888888888889e-03, 3.3068783068783069e-05,
    -8.2671957671957672e-07, 2.0876756987868099e-08,  -5.2841901386874932e-10,
    1.3382536530684679e-11,  -3.3896802963225829e-13, 8.5860620562778446e-15,
    -2.1748686985580619e-16, 5.5090028283602295e-18,  -1.3954464685812522e-19,
};

}  // namespace

std::complex<double> zeta_em(std::complex<double> s, double* err_est) {
    const double at = std::abs(s.imag());
    const int N = std::max<int>(24, static_cast<int>(0.6 * at) + 8);
    KahanComplexSum sum;
    KahanSum abs_sum;
    const double sigma = s.real();
    const double t = s.imag();
    for (int n = 1; n < N; ++n) {
        const double ln = std::log(static_cast<double>(n));
        const std::complex<double> term = std::polar(std::exp(-sigma * ln), -t * ln);
        sum.add(term);
        abs_sum.add(std::abs(term.real()) + std::abs(term.imag()));
    }
    const double lnN = std::log(static_cast<double>(N));
    const std::complex<double> NmS = std::polar(std::exp(-sigma * lnN), -t * lnN);  // N^{-s}
    sum.add(NmS * static_cast<double>(N) / (s - 1.0));
    sum.add(0.5 * NmS);

    // Correction terms B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{1-s-2k}
    std::complex<double> rising = s;                       // s(s+1)...(s+2k-2)
    std::complex<double> npow = NmS / static_cast<double>(N);  // N^{-s-1}
    const double n2 = 1.0 / (static_cast<double>(N) * N);
    double last = 0.0;
    for (int k = 1; k <= 12; ++k) {
        const std::complex<double> term = kBernFact[k - 1] * rising * npow;
        sum.add(term);
        last = std::abs(term);
        rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
        npow *= n2;
    }
    if (err_est) *err_est = 2.0 * last + 4e-16 * abs_sum.result();
    return sum.result();
}

// ---------------------------------------------------------------------------
// Riemann-Siegel Z
// ---------------------------------------------------------------------------

namespace {

// Riemann-Siegel remainder kernel Psi(p) = cos(2 pi (p^2 - p - 1/16))/cos(2 pi p)
// written in v = p - 1/2:  Psi = -cos(2 pi v^2 - 5 pi/8)/cos(2 pi v).
//
// A single global Taylor expansion is numerically useless past |v| = 1/4
// (the denominator's sec-type coefficient growth amplifies rounding by 4^n),
// so derivatives are taken from a LOCAL expansion at each evaluation point.
// Near the removable singularities v = +-1/4 the expansion is centered at
// the quarter point exactly and the common zero is divided out.
namespace psi_kernel {

constexpr int kCoeffs = 30;

// Taylor coefficients of Psi(center + w) = sum q_k w^k.
inline void local_coeffs(double center, std::array<double, kCoeffs>& q) {
    const double c = center;
    // numerator -cos(A + B w + C w^2), A = 2 pi c^2 - 5 pi/8, B = 4 pi c, C = 2 pi
    const double A = kTwoPi * c * c - 5.0 * M_PI / 8.0;
    const double B = 2.0 * kTwoPi * c;
    std::array<std::complex<double>, kCoeffs> e{};  // exp(i B w) * exp(i C w^2)
    std::array<std::complex<double>, kCoeffs> a{};
    a[0] = 1.0;
    for (int j = 1; j < kCoeffs; ++j) a[j] = a[j - 1] * std::complex<double>(0.0, B) / double(j);
    std::complex<double> bm = 1.0;  // (iC)^m / m!
    for (int m = 0; 2 * m < kCoeffs; ++m) {
        for (int j = 0; 2 * m + j < kCoeffs; ++j) e[2 * m + j] += bm * a[j];
        bm *= std::complex<double>(0.0, kTwoPi) / double(m + 1);
    }
    const std::complex<double> eiA = std::polar(1.0, A);
    std::array<double, kCoeffs> num{}, den{};
    for (int k = 0; k < kCoeffs; ++k) num[k] = -(eiA * e[k]).real();
    // denominator cos(2 pi c + 2 pi w); the -1 from cos(pi + 2 pi v) sits in num
    const std::complex<double> eic = std::polar(1.0, kTwoPi * c);
    std::complex<double> ik = 1.0;  // (i 2 pi)^k / k!
    for (int k = 0; k < kCoeffs; ++k) {
        den[k] = (eic * ik).real();
        ik *= std::complex<double>(0.0, kTwoPi) / double(k + 1);
    }
    int shift = 0;
    if (std::abs(den[0]) < 0.4) {
        // centered at a quarter point: both series vanish at w = 0
        shift = 1;
    }
    for (int k = 0; k + shift < kCoeffs; ++k) {
        double acc = num[k + shift];
        for (int j = 1; j <= k; ++j) acc -= den[j + shift] * q[k - j];
        q[k] = acc / den[shift];
    }
    for (int k = kCoeffs - shift; k < kCoeffs; ++k) q[k] = 0.0;
}

// Psi^{(j)}(1/2 + v) for j = 0..max_k.
inline void derivatives(double v, int max_k, double* out) {
    double center = v;
    if (std::abs(v - 0.25) < 0.08)
        center = 0.25;
    else if (std::abs(v + 0.25) < 0.08)
        center = -0.25;
    std::array<double, kCoeffs> q;
    local_coeffs(center, q);
    const double w = v - center;
    if (w == 0.0) {
        double fact = 1.0;
        for (int j = 0; j <= max_k; ++j) {
            out[j] = q[j] * fact;
            fact *= double(j + 1);
        }
        return;
    }
    for (int j = 0; j <= max_k; ++j) {
        // sum_m q_{m+j} (m+j)!/m! w^m, Horner from the top
        double acc = 0.0;
        for (int m = kCoeffs - 1 - j; m >= 0; --m) {
            double ff = 1.0;
            for (int i = 1; i <= j; ++i) ff *= double(m + i);
            acc = acc * w + q[m + j] * ff;
        }
        out[j] = acc;
    }
}

}  // namespace psi_kernel

// log n and 1/sqrt(n) for the Riemann-Siegel main sum.
struct MainSumTables {
    std::vector<double> logn, rsqrt;
    explicit MainSumTables(std::size_t n) : logn(n + 1), rsqrt(n + 1) {
        for (std::size_t i = 1; i <= n; ++i) {
            logn[i] = std::log(static_cast<double>(i));
            rsqrt[i] = 1.0 / std::sqrt(static_cast<double>(i));
        }
    }
};

const MainSumTables& main_sum_tables() {
    static const MainSumTables t(4096);
    return t;
}

double hardy_Z_rs(double t) {
    const double a = std::sqrt(t / kTwoPi);
    const int N = static_cast<int>(a);
    const double p = a - N;
    const double theta = riemann_siegel_theta(t);
    const auto& tab = main_sum_tables();

    KahanSum main;
    for (int n = 1; n <= N; ++n)
        main.add(tab.rsqrt[n] * std::cos(theta - t * tab.logn[n]));

    const double v = p - 0.5;
    double psi[10];
    psi_kernel::derivatives(v, 9, psi);
    const double pi2 = M_PI * M_PI;
    const double c0 = psi[0];
    const double c1 = -psi[3] / (96.0 * pi2);
    const double c2 = psi[2] / (64.0 * pi2) + psi[6] / (18432.0 * pi2 * pi2);
    const double c3 = -psi[1] / (64.0 * pi2) - psi[5] / (3840.0 * pi2 * pi2) -
                      psi[9] / (5308416.0 * pi2 * pi2 * pi2);
    const double corr = c0 + (c1 + (c2 + c3 / a) / a) / a;
    const double sign = (N % 2 == 1) ? 1.0 : -1.0;  // (-1)^{N-1}
    return 2.0 * main.result() + sign * corr / std::sqrt(a);
}

}  // namespace

double hardy_Z(double t) {
    if (t < 10.0) throw std::domain_error("hardy_Z: t must be >= 10");
    return hardy_Z_any(t);
}

double hardy_Z_any(double t) {
    if (t < kHardySwitch) {
        const double theta = theta_any(t);
        const std::complex<double> z = zeta_em({0.5, t});
        return (std::polar(1.0, theta) * z).real();
    }
    return hardy_Z_rs(t);
}

// ---------------------------------------------------------------------------
// log continuation and the public zeta()
// ---------------------------------------------------------------------------

namespace {

// Continues log zeta horizontally from sigma = 3 down to `sigma` at height t,
// accumulating principal-log ratio steps. Steps halve when the argument
// moves too fast (near-line zeros).
std::complex<double> continue_log_from_right(double sigma, double t) {
    std::complex<double> cur = zeta_em({3.0, t});
    std::complex<double> lg = std::log(cur);
    double s_cur = 3.0;
    double step = 0.25;
    const double min_step = 1e-6;
    while (s_cur > sigma + 1e-15) {
        const double s_next = std::max(sigma, s_cur - step);
        const std::complex<double> nxt = zeta_em({s_next, t});
        const std::complex<double> ratio = nxt / cur;
        const double dphi = std::abs(std::arg(ratio));
        if (dphi > 1.2 && step > min_step) {
            step = std::max(min_step, 0.5 * step);
            continue;
        }
        lg += std::log(ratio);
        cur = nxt;
        s_cur = s_next;
        if (dphi < 0.3 && step < 0.25) step *= 2.0;
    }
    return lg;
}

}  // namespace

ZetaPoint zeta(double sigma, double t) {
    if (sigma < 0.5 || sigma > 4.0) throw RangeError("zeta: sigma must be in [1/2, 4]");
    if (t < 0.0 || t > 1e7) throw RangeError("zeta: t must be in [0, 1e7]");
    ZetaPoint pt;
    pt.sigma = sigma;
    pt.t = t;
    pt.value = zeta_em({sigma, t}, &pt.err_est);
    pt.precision_loss = std::abs(pt.value) < 1e-12;
    if (sigma >= 3.0 || t < 1.0) {
        // Principal log; for sigma >= 3 this is already the continued branch.
        pt.log_value = std::log(pt.value);
    } else {
        pt.log_value = continue_log_from_right(sigma, t);
    }
    return pt;
}

double S_of_t(double t, const ZeroTable& zeros) {
    zeros.require_coverage(t, "S_of_t");
    const double n = static_cast<double>(zeros.count_below(t));
    return n - theta_any(t) / M_PI - 1.0;
}

std::complex<double> log_zeta(double sigma, double t, const ZeroTable& zeros) {
    if (sigma < 0.5 || sigma > 4.0) throw RangeError("log_zeta: sigma must be in [1/2, 4]");
    zeros.require_coverage(t + 2.0, "log_zeta");
    if (sigma == 0.5) {
        if (zeros.nearest_gap(t) < 1e-9)
            throw SingularPointError("log_zeta: t coincides with a tabulated ordinate");
        double absz;
        if (t >= 10.0)
            absz = std::abs(hardy_Z(t));
        else
            absz = std::abs(zeta_em({0.5, t}));
        return {std::log(absz), M_PI * S_of_t(t, zeros)};
    }
    if (sigma >= 3.0) return std::log(zeta_em({sigma, t}));
    return continue_log_from_right(sigma, t);
}

}  // namespace meanlab
