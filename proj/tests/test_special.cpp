#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "golden_values.hpp"
#include "meanlab/quadrature.hpp"
#include "meanlab/special.hpp"

using namespace meanlab;

TEST_SUITE_BEGIN("special");

TEST_CASE("log gamma on the real axis") {
    CHECK(log_gamma_complex({5.0, 0.0}).real() ==
          doctest::Approx(std::log(24.0)).epsilon(1e-14));
    CHECK(log_gamma_complex({0.5, 0.0}).real() ==
          doctest::Approx(0.5 * std::log(M_PI)).epsilon(1e-14));
    CHECK(log_gamma_complex({1.0, 0.0}).real() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("log gamma off axis: |Gamma(1+i)|^2 = pi/sinh(pi)") {
    const auto lg = log_gamma_complex({1.0, 1.0});
    const double norm2 = std::exp(2.0 * lg.real());
    CHECK(norm2 == doctest::Approx(M_PI / std::sinh(M_PI)).epsilon(1e-13));
}

TEST_CASE("sine and cosine integrals against the oracle") {
    CHECK(sin_integral(1.0) == doctest::Approx(golden::kSi_1).epsilon(1e-13));
    CHECK(sin_integral(2.76) == doctest::Approx(golden::kSi_2_76).epsilon(1e-13));
    CHECK(sin_integral(4.0) == doctest::Approx(golden::kSi_4).epsilon(1e-13));
    CHECK(sin_integral(10.0) == doctest::Approx(golden::kSi_10).epsilon(1e-13));
    CHECK(sin_integral(100.0) == doctest::Approx(golden::kSi_100).epsilon(1e-13));
    CHECK(sin_integral(10000.0) == doctest::Approx(golden::kSi_10000).epsilon(1e-13));
    CHECK(cos_integral(0.208) == doctest::Approx(golden::kCi_0_208).epsilon(1e-13));
    CHECK(cos_integral(1.0) == doctest::Approx(golden::kCi_1).epsilon(1e-13));
    CHECK(cos_integral(2.76) == doctest::Approx(golden::kCi_2_76).epsilon(1e-13));
    CHECK(cos_integral(10.0) == doctest::Approx(golden::kCi_10).epsilon(1e-12));
    CHECK(cos_integral(100.0) == doctest::Approx(golden::kCi_100).epsilon(1e-11));
    CHECK(sin_integral(-1.0) == doctest::Approx(-golden::kSi_1).epsilon(1e-13));
    CHECK(sin_integral(1e8) == doctest::Approx(M_PI_2).epsilon(1e-8));
}

TEST_CASE("seam continuity of the Si/Ci branches") {
    for (double x : {4.0, 250.0}) {
        CHECK(std::abs(sin_integral(x * (1 - 1e-9)) - sin_integral(x * (1 + 1e-9))) < 1e-8);
        CHECK(std::abs(cos_integral(x * (1 - 1e-9)) - cos_integral(x * (1 + 1e-9))) < 1e-8);
    }
}

TEST_CASE("cos/u^2 antiderivative against quadrature") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> cdist(0.0, 40.0), udist(1.5, 30.0);
    for (int i = 0; i < 25; ++i) {
        const double c = cdist(rng), U = udist(rng);
        const double exact = cos_over_u2_integral(c, U);
        const double quad = integrate_adaptive(
            [c](double u) { return std::cos(c * u) / (u * u); }, 1.0, U, 1e-11, 4000);
        CHECK(std::abs(exact - quad) < 1e-9);
    }
    // U = infinity variant
    const double inf_val = cos_over_u2_integral(2.0, INFINITY);
    const double big = cos_over_u2_integral(2.0, 1e7);
    CHECK(std::abs(inf_val - big) < 1e-6);
    CHECK(cos_over_u2_integral(0.0, INFINITY) == doctest::Approx(1.0));
}

TEST_CASE("cos*(1-bu)^2 antiderivative against quadrature") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> adist(0.0, 50.0), bdist(0.0, 1.0), udist(1.1, 4.0);
    for (int i = 0; i < 25; ++i) {
        const double a = adist(rng), b = bdist(rng), U = udist(rng);
        const double exact = cos_poly2_integral(a, b, U);
        const double quad = integrate_adaptive(
            [a, b](double u) {
                const double q = 1.0 - b * u;
                return std::cos(a * u) * q * q;
            },
            1.0, U, 1e-11, 4000);
        CHECK(std::abs(exact - quad) < 1e-9);
    }
    // tiny-frequency branch
    CHECK(cos_poly2_integral(1e-9, 0.5, 2.0) ==
          doctest::Approx(cos_poly2_integral(0.0, 0.5, 2.0)).epsilon(1e-9));
}

TEST_CASE("adaptive quadrature sanity") {
    const double v = integrate_adaptive([](double x) { return std::log(x); }, 0.0, 1.0, 1e-10,
                                        4000);
    CHECK(v == doctest::Approx(-1.0).epsilon(1e-7));
    const double w = integrate_adaptive([](double x) { return std::exp(-x * x); }, -8.0, 8.0,
                                        1e-12, 4000);
    CHECK(w == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
}

TEST_SUITE_END();
