#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "golden_values.hpp"
#include "meanlab/arith.hpp"
#include "meanlab/errors.hpp"
#include "meanlab/kahan.hpp"
#include "meanlab/weights.hpp"

using namespace meanlab;

namespace {

// Trial-division oracle, independent of the sieve.
bool is_prime_trial(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

WeightSpec flat_weight(double halfwidth) {
    WeightSpec w;
    w.log_support = halfwidth;
    w.label = "flat";
    w.v = [halfwidth](double x) { return std::abs(x) <= halfwidth ? 1.0 : 0.0; };
    w.knots = {-halfwidth, halfwidth};
    return w;
}

}  // namespace

TEST_SUITE_BEGIN("arith");

TEST_CASE("small prime table") {
    auto t = ArithTables::build(10);
    CHECK(t.primes() == std::vector<std::uint64_t>{2, 3, 5, 7});
    CHECK(t.lambda(8) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(t.lambda(6) == 0.0);
    CHECK(t.lambda(9) == doctest::Approx(std::log(3.0)).epsilon(1e-15));
    CHECK(t.lambda(1) == 0.0);
}

TEST_CASE("prime count to 100 against trial division") {
    auto t = ArithTables::build(100);
    std::size_t oracle = 0;
    for (std::uint64_t n = 2; n <= 100; ++n)
        if (is_prime_trial(n)) ++oracle;
    CHECK(oracle == 25);
    CHECK(t.primes().size() == oracle);
    for (std::uint64_t p : t.primes()) CHECK(is_prime_trial(p));
}

TEST_CASE("sieve agrees with trial division to 10^4") {
    auto t = ArithTables::build(10000);
    std::size_t oracle = 0;
    for (std::uint64_t n = 2; n <= 10000; ++n)
        if (is_prime_trial(n)) ++oracle;
    CHECK(t.primes().size() == oracle);
}

TEST_CASE("psi stays in the sqrt corridor") {
    auto t = ArithTables::build(200000);
    for (double N : {100.0, 1000.0, 10000.0, 50000.0, 200000.0}) {
        const double psi = t.psi(static_cast<std::uint64_t>(N));
        CHECK(std::abs(psi - N) < 3.0 * std::sqrt(N) * std::log(N) * std::log(N));
    }
}

TEST_CASE("Lambda additivity: sum over divisors gives log n") {
    auto t = ArithTables::build(10000);
    for (std::uint64_t n : {2ull, 12ull, 97ull, 360ull, 1024ull, 9973ull, 9999ull}) {
        double s = 0.0;
        for (std::uint64_t d = 1; d <= n; ++d)
            if (n % d == 0) s += t.lambda(d);
        CHECK(s == doctest::Approx(std::log(static_cast<double>(n))).epsilon(1e-12));
    }
}

TEST_CASE("prime weight sums") {
    auto t = ArithTables::build(2000);
    auto flat = flat_weight(100.0);
    CHECK(prime_weight_sum(2.0, flat, 2, t) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(prime_weight_sum(10.0, flat, 2, t) ==
          doctest::Approx(golden::kPrimeRecipSum10).epsilon(1e-14));
    CHECK_THROWS_AS(prime_weight_sum(5000.0, flat, 2, t), RangeError);
    CHECK_THROWS_AS(prime_weight_sum(10.0, flat, 3, t), RangeError);
}

TEST_CASE("Fejer prime weight sum matches the high-precision oracle") {
    auto t = ArithTables::build(1000);
    auto fejer = fejer_weight(1e6);
    CHECK(prime_weight_sum(1000.0, fejer, 2, t) ==
          doctest::Approx(golden::kFejerPrimeSum1e3_X1e6).epsilon(1e-13));
}

TEST_CASE("multiplicative f exact values") {
    CHECK(multiplicative_f({1}) == Rational{0, 1});
    CHECK(multiplicative_f({2}) == (Rational{1, 2}));
    CHECK(multiplicative_f({4}) == (Rational{3, 8}));
    CHECK(multiplicative_f({2, 2}) == (Rational{1, 4}));
    CHECK(multiplicative_f({2, 1}) == (Rational{0, 1}));
    CHECK(multiplicative_f({6}) == (Rational{5, 16}));
    CHECK_THROWS_AS(multiplicative_f({0}), RangeError);
}

TEST_CASE("multiplicative f equals the brute-force cosine average") {
    // (1/T0) int_0^{T0} prod_j cos(t log p_j)^{a_j} dt -> f(prod p_j^{a_j})
    struct Case {
        std::vector<std::pair<double, int>> factors;  // (prime, exponent)
        double expect;
    };
    const std::vector<Case> cases = {
        {{{2.0, 2}}, 0.5},
        {{{2.0, 4}}, 3.0 / 8.0},
        {{{2.0, 1}, {3.0, 1}}, 0.0},
        {{{2.0, 2}, {3.0, 2}}, 0.25},
    };
    const double T0 = 1e6;
    const std::int64_t n = 1 << 25;  // Simpson grid, dt ~ 0.03
    for (const auto& c : cases) {
        const double dt = T0 / n;
        KahanSum s;
        for (std::int64_t j = 0; j <= n; ++j) {
            const double t = j * dt;
            double v = 1.0;
            for (auto [p, a] : c.factors) {
                const double cp = std::cos(t * std::log(p));
                for (int i = 0; i < a; ++i) v *= cp;
            }
            const double w = (j == 0 || j == n) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
            s.add(w * v);
        }
        const double avg = s.result() * dt / 3.0 / T0;
        CHECK(std::abs(avg - c.expect) < 5e-3);
    }
}

TEST_CASE("moment constants c_k") {
    CHECK(moment_constant_ck(2) == (Rational{1, 2}));
    CHECK(moment_constant_ck(3) == (Rational{0, 1}));
    CHECK(moment_constant_ck(4) == (Rational{3, 4}));
    // c_k(2k) = (2k-1)!!/2^k
    for (int k = 1; k <= 6; ++k) {
        double dfact = 1.0;
        for (int j = 2 * k - 1; j >= 1; j -= 2) dfact *= j;
        CHECK(moment_constant_ck(2 * k).value() ==
              doctest::Approx(dfact / std::pow(2.0, k)).epsilon(1e-14));
    }
}

TEST_CASE("prime power constant") {
    const double v = prime_power_constant(1e-12);
    CHECK(v == doctest::Approx(golden::kPrimePowerConstant).epsilon(1e-12));
    // cross-check: equals gamma - Mertens constant
    CHECK(v == doctest::Approx(golden::kEulerGamma - golden::kMertens).epsilon(1e-12));
    // monotone refinement
    CHECK(std::abs(prime_power_constant(1e-6) - v) < 1e-6);
    // p = 2 alone contributes log 2 - 1/2; the rest is positive and smaller
    const double p2 = -std::log(1.0 - 0.5) - 0.5;
    CHECK(p2 == doctest::Approx(std::log(2.0) - 0.5).epsilon(1e-15));
    CHECK(v > p2);
    CHECK(v - p2 < 0.2);
}

TEST_CASE("prime power constant against direct summation over primes") {
    auto t = ArithTables::build(100000);
    KahanSum direct;
    for (std::uint64_t p : t.primes()) {
        const double x = 1.0 / static_cast<double>(p);
        direct.add(-std::log1p(-x) - x);
    }
    // tail over p > 1e5 is below ~1/(2e5 log 1e5)
    CHECK(std::abs(direct.result() - prime_power_constant(1e-12)) < 1e-6);
}

TEST_CASE("prime power cosine sum") {
    CHECK(prime_power_cos_sum(0.0, 1e-11) ==
          doctest::Approx(golden::kPrimePowerSquareConstant).epsilon(1e-10));
    // direct double-sum cross-check at delta = 0.3
    auto t = ArithTables::build(100000);
    const double d = 0.3;
    KahanSum direct;
    for (std::uint64_t p : t.primes()) {
        const double lp = std::log(static_cast<double>(p));
        double pm = 1.0 / (static_cast<double>(p) * static_cast<double>(p));
        for (int m = 2; m <= 60; ++m) {
            direct.add(std::cos(m * d * lp) * pm / (m * m));
            pm /= static_cast<double>(p);
            if (pm < 1e-22) break;
        }
    }
    CHECK(std::abs(direct.result() - prime_power_cos_sum(d, 1e-11)) < 1e-6);
}

TEST_CASE("capacity and range errors") {
    CHECK_THROWS_AS(ArithTables::build(1), RangeError);
    CHECK_THROWS_AS(ArithTables::build(500'000'000), CapacityError);
    auto t = ArithTables::build(100);
    CHECK_THROWS_AS(t.lambda(101), RangeError);
}

TEST_CASE("rational normalization") {
    CHECK(Rational::make(6, -4) == (Rational{-3, 2}));
    CHECK(Rational::make(0, 7) == (Rational{0, 1}));
    CHECK((Rational::make(2, 3) * Rational::make(3, 2)) == (Rational{1, 1}));
}

TEST_SUITE_END();
