#include "meanlab/special.hpp"

#include <cmath>
#include <stdexcept>

namespace meanlab {

namespace {

constexpr double kBern[] = {
    1.0 / 6,     -1.0 / 30,    1.0 / 42,      -1.0 / 30,    5.0 / 66,
    -691.0 / 2730, 7.0 / 6,    -3617.0 / 510, 43867.0 / 798, -174611.0 / 330,
};
constexpr double kLog2Pi = 1.8378770664093454836;

}  // namespace

std::complex<double> log_gamma_complex(std::complex<double> z) {
    if (z.real() <= 0.0) throw std::domain_error("log_gamma_complex: Re(z) must be > 0");
    std::complex<double> shift = 0.0;
    while (std::abs(z) < 12.0) {
        shift -= std::log(z);
        z += 1.0;
    }
    std::complex<double> res = (z - 0.5) * std::log(z) - z + 0.5 * kLog2Pi;
    const std::complex<double> z2inv = 1.0 / (z * z);
    std::complex<double> zpow = 1.0 / z;
    for (int k = 0; k < 10; ++k) {
        res += kBern[k] / ((2.0 * k + 2.0) * (2.0 * k + 1.0)) * zpow;
        zpow *= z2inv;
    }
    return res + shift;
}

namespace {

// E1(i x) by the modified Lentz continued fraction; valid for x >= 2.
std::complex<double> e1_imag_axis(double x) {
    const std::complex<double> z(0.0, x);
    const double tiny = 1e-300;
    std::complex<double> b = z + 1.0;
    std::complex<double> c = 1.0 / tiny;
    std::complex<double> d = 1.0 / b;
    std::complex<double> h = d;
    for (int i = 1; i <= 200; ++i) {
        const double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const std::complex<double> del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-z);
}

void si_ci_small(double x, double& si, double& ci) {
    // power series; x <= 4
    double term = x;
    double s = x;
    for (int k = 1; k <= 24; ++k) {
        term *= -x * x / ((2.0 * k) * (2.0 * k + 1.0));
        s += term / (2.0 * k + 1.0);
        if (std::abs(term) < 1e-18) break;
    }
    si = s;
    double termc = 1.0;
    double sc = 0.0;
    for (int k = 1; k <= 24; ++k) {
        termc *= -x * x / ((2.0 * k - 1.0) * (2.0 * k));
        sc += termc / (2.0 * k);
        if (std::abs(termc) < 1e-18) break;
    }
    ci = 0.57721566490153286061 + std::log(x) + sc;
}

void si_ci_asymptotic(double x, double& si, double& ci) {
    // f(x) ~ sum (-1)^k (2k)!/x^{2k+1}, g(x) ~ sum (-1)^k (2k+1)!/x^{2k+2}
    double f = 0.0, g = 0.0;
    double fact = 1.0;  // (2k)!
    double xp = 1.0 / x;
    const double x2 = 1.0 / (x * x);
    for (int k = 0; k <= 8; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        f += sign * fact * xp;
        g += sign * fact * (2.0 * k + 1.0) * xp / x;
        fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
        xp *= x2;
    }
    const double cx = std::cos(x), sx = std::sin(x);
    si = M_PI_2 - f * cx - g * sx;
    ci = f * sx - g * cx;
}

}  // namespace

double sin_integral(double x) {
    if (x < 0.0) return -sin_integral(-x);
    if (x == 0.0) return 0.0;
    double si, ci;
    if (x <= 4.0) {
        si_ci_small(x, si, ci);
    } else if (x < 250.0) {
        const std::complex<double> e1 = e1_imag_axis(x);
        si = M_PI_2 + e1.imag();
    } else {
        si_ci_asymptotic(x, si, ci);
    }
    return si;
}

double cos_integral(double x) {
    if (x <= 0.0) throw std::domain_error("cos_integral: x must be > 0");
    double si, ci;
    if (x <= 4.0) {
        si_ci_small(x, si, ci);
    } else if (x < 250.0) {
        const std::complex<double> e1 = e1_imag_axis(x);
        ci = -e1.real();
    } else {
        si_ci_asymptotic(x, si, ci);
    }
    return ci;
}

double cos_over_u2_integral(double c, double U) {
    c = std::abs(c);
    if (c == 0.0) return std::isinf(U) ? 1.0 : 1.0 - 1.0 / U;
    if (std::isinf(U)) return std::cos(c) - c * (M_PI_2 - sin_integral(c));
    return std::cos(c) - std::cos(c * U) / U - c * (sin_integral(c * U) - sin_integral(c));
}

double cos_poly2_integral(double a, double b, double U) {
    a = std::abs(a);
    auto q = [b](double u) {
        const double w = 1.0 - b * u;
        return w * w;
    };
    if (a * U < 1e-4) {
        // cos(au) ~ 1 - (au)^2/2 over the whole range
        auto prim = [&](double u) {
            const double w = 1.0 - b * u;
            double head = (b == 0.0) ? u : -(w * w * w) / (3.0 * b);
            // -a^2/2 * int u^2 (1-bu)^2 du
            const double u3 = u * u * u, u4 = u3 * u, u5 = u4 * u;
            head -= 0.5 * a * a * (u3 / 3.0 - b * u4 / 2.0 + b * b * u5 / 5.0);
            return head;
        };
        return prim(U) - prim(1.0);
    }
    auto prim = [&](double u) {
        const double s = std::sin(a * u), cc = std::cos(a * u);
        const double qp = -2.0 * b * (1.0 - b * u);
        const double qpp = 2.0 * b * b;
        return q(u) * s / a + qp * cc / (a * a) - qpp * s / (a * a * a);
    };
    return prim(U) - prim(1.0);
}

}  // namespace meanlab
