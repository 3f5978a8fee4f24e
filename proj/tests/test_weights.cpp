#include <doctest.h>

#include <cmath>
#include <random>

#include "golden_values.hpp"
#include "meanlab/errors.hpp"
#include "meanlab/weights.hpp"

using namespace meanlab;

TEST_SUITE_BEGIN("weights");

TEST_CASE("fejer weight basics") {
    auto w = fejer_weight(1e6);
    const double L = std::log(1e6);
    CHECK(w.value(0.0) == 1.0);
    CHECK(w.value(L) == 0.0);
    CHECK(w.value(L + 1.0) == 0.0);
    CHECK(w.value(0.5 * L) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(w.decay_exponent == 2);
    // Vhat(0) = log X, removable singularity patched
    CHECK(w.vhat_closed({0.0, 0.0}).real() == doctest::Approx(L).epsilon(1e-14));
    CHECK(weight_transform(w, 0.0, 1e-10) == doctest::Approx(L).epsilon(1e-10));
    CHECK_THROWS_AS(fejer_weight(2.0), RangeError);
}

TEST_CASE("numeric transform matches the closed form") {
    auto w = fejer_weight(std::exp(10.0));  // X = e^10, L = 10
    const double num = weight_transform(w, 1.0, 1e-11);
    const double closed = w.vhat_closed({1.0, 0.0}).real();
    CHECK(std::abs(num - closed) < 1e-10);

    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> uni(-10.0, 10.0);
    auto fj = fejer_weight(1e4);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double y = uni(rng);
        const double a = weight_transform(fj, y, 1e-12);
        const double b = fj.vhat_closed({y, 0.0}).real();
        worst = std::max(worst,
                         std::abs(a - b) / (std::abs(b) + 1e-6 * fj.log_support));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("transform evenness") {
    auto w = fejer_weight(1e5);
    for (double y : {0.3, 1.7, 4.4, 9.9}) {
        CHECK(std::abs(weight_transform(w, y, 1e-12) - weight_transform(w, -y, 1e-12)) <
              1e-12 * w.log_support);
    }
}

TEST_CASE("property certification: fejer passes") {
    auto w = fejer_weight(1e6);
    auto rep = check_properties(w, 100);
    CHECK(rep.even_ok);
    CHECK(rep.support_ok);
    CHECK(rep.bounded_ok);
    CHECK(rep.sup_abs == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.decay_ok);
    CHECK(rep.envelope_ok);
    // (1/L) Vhat(y/L) = 4 sin^2(y/2)/y^2: bounded by 1 near 0, and the fitted
    // envelope constant over |y| >= 2 stays below 4(1+pi^2)/pi^2 ~ 4.4053.
    CHECK(rep.small_y_sup <= 1.0 + 1e-9);
    CHECK(rep.envelope_constant_tail <= 4.45);
    CHECK(rep.envelope_constant_tail > 3.5);
}

TEST_CASE("property certification: sharp cutoff fails the envelope") {
    auto w = sharp_cutoff_weight(1e6);
    auto rep = check_properties(w, 100);
    CHECK(rep.even_ok);
    CHECK(rep.support_ok);
    CHECK_FALSE(rep.envelope_ok);
    CHECK_FALSE(rep.decay_ok);  // transform decays like 1/y, not 1/y^2
}

TEST_CASE("property certification: scaling doubles the constants") {
    auto w = fejer_weight(1e5);
    auto w2 = scaled_weight(w, 2.0);
    auto r1 = check_properties(w, 100);
    auto r2 = check_properties(w2, 100);
    CHECK(r2.even_ok);
    CHECK(r2.envelope_ok);
    CHECK(r2.decay_ok);
    CHECK(r2.sup_abs == doctest::Approx(2.0 * r1.sup_abs).epsilon(1e-12));
    CHECK(r2.envelope_constant == doctest::Approx(2.0 * r1.envelope_constant).epsilon(1e-9));
}

TEST_CASE("fourier inversion check") {
    auto w = fejer_weight(1e6);
    const double L = std::log(1e6);
    SUBCASE("truncation 1 stays within the 1/log X budget and matches the oracle") {
        const double diff = fourier_inversion_check(w, 2, 1.0);
        CHECK(std::abs(diff) <= 10.0 / L);
        CHECK(diff == doctest::Approx(golden::kFejerInversionP2B1).epsilon(1e-6));
    }
    SUBCASE("large truncation recovers V(log p)") {
        const double diff = fourier_inversion_check(w, 2, 1000.0, 1e-8);
        CHECK(std::abs(diff) < 1e-3);
    }
    SUBCASE("prime beyond the support") {
        auto w20 = fejer_weight(20.0);  // log X ~ 3.0
        const double diff = fourier_inversion_check(w20, 31, 400.0, 1e-8);
        CHECK(w20.value(std::log(31.0)) == 0.0);
        CHECK(std::abs(diff) < 0.05);
    }
}

TEST_SUITE_END();
