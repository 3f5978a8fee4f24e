#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "golden_values.hpp"
#include "meanlab/errors.hpp"
#include "meanlab/parallel.hpp"
#include "meanlab/zeros.hpp"
#include "meanlab/zeta.hpp"
#include "test_tables.hpp"

using namespace meanlab;

TEST_SUITE_BEGIN("zeros");

TEST_CASE("first ordinates against the oracle") {
    auto tbl = locate_zeros(100.0);
    REQUIRE(tbl.certified());
    REQUIRE(tbl.ordinates().size() == static_cast<std::size_t>(golden::kZeroCount100));
    CHECK(std::abs(tbl.ordinates()[0] - 14.134725) < 1e-6);
    CHECK(std::abs(tbl.ordinates()[1] - 21.022040) < 1e-6);
    CHECK(std::abs(tbl.ordinates()[2] - 25.010858) < 1e-6);
    for (std::size_t i = 0; i < tbl.ordinates().size(); ++i)
        CHECK(std::abs(tbl.ordinates()[i] - golden::kZeroOrdinates[i]) < 1e-6);
}

TEST_CASE("first hundred zeros, residuals and sign alternation") {
    const auto& tbl = testbed::zeros_to(2100);
    REQUIRE(tbl.ordinates().size() >= 100);
    for (int i = 0; i < 100; ++i)
        CHECK(std::abs(tbl.ordinates()[i] - golden::kZeroOrdinates[i]) < 1e-6);
    for (std::size_t i = 0; i + 1 < 200; ++i) {
        CHECK(std::abs(hardy_Z(tbl.ordinates()[i])) < 1e-6);
        const double mid = 0.5 * (tbl.ordinates()[i] + tbl.ordinates()[i + 1]);
        // simple zeros: Z keeps one sign strictly inside the gap
        CHECK(std::abs(hardy_Z(mid)) > 1e-10);
    }
    // sign alternation between consecutive zeros
    double prev = hardy_Z(0.5 * (tbl.ordinates()[0] + tbl.ordinates()[1]));
    for (std::size_t i = 1; i + 1 < 100; ++i) {
        const double cur = hardy_Z(0.5 * (tbl.ordinates()[i] + tbl.ordinates()[i + 1]));
        CHECK(prev * cur < 0.0);
        prev = cur;
    }
}

TEST_CASE("zero counting function stays within |S| <= 3") {
    const auto& tbl = testbed::zeros_to(2100);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uni(20.0, tbl.height());
    for (int i = 0; i < 1000; ++i) {
        const double t = uni(rng);
        const double n = static_cast<double>(tbl.count_below(t));
        CHECK(std::abs(n - (theta_any(t) / M_PI + 1.0)) <= 3.0);
    }
}

TEST_CASE("locate is deterministic across thread counts") {
    const int saved = max_threads();
    set_max_threads(1);
    auto t1 = locate_zeros(300.0);
    set_max_threads(2);
    auto t2 = locate_zeros(300.0);
    set_max_threads(saved);
    REQUIRE(t1.ordinates().size() == t2.ordinates().size());
    for (std::size_t i = 0; i < t1.ordinates().size(); ++i)
        CHECK(t1.ordinates()[i] == t2.ordinates()[i]);
}

TEST_CASE("height preconditions") {
    CHECK_THROWS_AS(locate_zeros(10.0), RangeError);
    CHECK_THROWS_AS(locate_zeros(2e6), RangeError);
}

TEST_CASE("pair correlation paths agree") {
    const auto& tbl = testbed::zeros_to(2100);
    const double T = 2000.0;
    for (double u : {0.0, 0.3, 1.0, 2.0}) {
        const double fast = pair_correlation_F(u, tbl, T);
        const auto ref = pair_correlation_F_reference(u, tbl, T);
        CHECK(std::abs(ref.imag()) < 1e-9);
        CHECK(std::abs(fast - ref.real()) < 1e-9);
        // banded truncation honors its own tail bound
        for (double band : {50.0, 200.0, 3000.0}) {
            const auto banded = pair_correlation_F_banded(u, tbl, T, band);
            CHECK(std::abs(banded.value - fast) <= banded.tail_bound + 1e-9);
        }
        // full-range band reproduces the exact value
        const auto full = pair_correlation_F_banded(u, tbl, T, T);
        CHECK(std::abs(full.value - fast) < 1e-10);
    }
}

TEST_CASE("pair correlation symmetry and positivity") {
    const auto& tbl = testbed::zeros_to(2100);
    const double T = 2000.0;
    for (double u : {0.1, 0.5, 0.9, 1.5}) {
        const double plus = pair_correlation_F(u, tbl, T);
        const double minus = pair_correlation_F(-u, tbl, T);
        CHECK(plus == minus);  // exact: evaluated at |u|
        CHECK(plus >= -1e-10);
    }
    CHECK(pair_correlation_F(0.0, tbl, T) > 0.0);
    CHECK_THROWS_AS(pair_correlation_F(0.5, tbl, 2100.0 + 5.0), CoverageError);
}

TEST_CASE("unit integral refinement") {
    const auto& tbl = testbed::zeros_to(2100);
    const double T = 2000.0;
    const double a = F_unit_integral(1.0, tbl, T, 64);
    const double b = F_unit_integral(1.0, tbl, T, 128);
    CHECK(std::abs(a - b) < 1e-3);
    CHECK_THROWS_AS(F_unit_integral(1.0, tbl, T, 63), RangeError);
}

TEST_CASE("table round trip is bit exact") {
    const auto& tbl = testbed::zeros_to(2100);
    const std::string path = "test_roundtrip.ztbl";
    save_table(tbl, path);
    auto loaded = load_table(path);
    CHECK(loaded.certified());
    CHECK(loaded.height() == tbl.height());
    REQUIRE(loaded.ordinates().size() == tbl.ordinates().size());
    for (std::size_t i = 0; i < loaded.ordinates().size(); ++i)
        CHECK(loaded.ordinates()[i] == tbl.ordinates()[i]);
    std::remove(path.c_str());
}

TEST_CASE("corrupt files are rejected") {
    const auto& tbl = testbed::zeros_to(2100);
    const std::string path = "test_corrupt.ztbl";
    save_table(tbl, path);

    auto read_all = [&]() {
        std::ifstream in(path, std::ios::binary);
        return std::string((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
    };
    auto write_all = [&](const std::string& buf) {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    };

    const std::string good = read_all();

    SUBCASE("truncated") {
        write_all(good.substr(0, good.size() - 13));
        CHECK_THROWS_AS(load_table(path), CorruptTableError);
    }
    SUBCASE("bad magic") {
        std::string bad = good;
        bad[0] = 'X';
        write_all(bad);
        CHECK_THROWS_AS(load_table(path), CorruptTableError);
    }
    SUBCASE("version bump") {
        std::string bad = good;
        bad[4] = 2;
        write_all(bad);
        CHECK_THROWS_AS(load_table(path), UnsupportedVersionError);
    }
    SUBCASE("bit flip fails the checksum") {
        std::string bad = good;
        bad[40] = static_cast<char>(bad[40] ^ 0x10);
        write_all(bad);
        CHECK_THROWS_AS(load_table(path), ChecksumError);
    }
    std::remove(path.c_str());
}

TEST_CASE("uncertified tables refuse to persist") {
    ZeroTable t(100.0, {14.1347, 21.022}, false);
    CHECK_THROWS_AS(save_table(t, "nope.ztbl"), CertificationError);
}

TEST_SUITE_END();
