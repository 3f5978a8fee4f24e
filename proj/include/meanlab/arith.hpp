#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "meanlab/weights.hpp"

namespace meanlab {

// Exact rational, normalized (den > 0, gcd(num, den) = 1).
struct Rational {
    long long num = 0;
    long long den = 1;

    static Rational make(long long n, long long d);
    Rational operator*(const Rational& o) const;
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// A prime power p^a <= limit together with log p. exponent == 1 entries are
// the primes themselves.
struct PrimePower {
    std::uint64_t n;
    double log_p;
    std::uint32_t exponent;
};

// Sieve-backed tables of Lambda(n) and the primes up to `limit`.
//
// Lambda is held sparsely (log p at every prime power, zero elsewhere);
// a dense array at limit = 1e8 would blow the memory budget, the sparse
// form is ~100 MB there. Immutable after construction; safe for shared
// concurrent reads.
class ArithTables {
  public:
    static ArithTables build(std::uint64_t limit);

    std::uint64_t limit() const { return limit_; }
    const std::vector<std::uint64_t>& primes() const { return primes_; }
    const std::vector<double>& prime_logs() const { return prime_logs_; }
    // Prime powers p^a with a >= 2, ascending in n.
    const std::vector<PrimePower>& higher_powers() const { return higher_powers_; }

    // Lambda(n) in natural-log units: log p for n = p^a, else 0.
    double lambda(std::uint64_t n) const;

    // Chebyshev psi(N) = sum_{n<=N} Lambda(n), compensated.
    double psi(std::uint64_t N) const;

    std::size_t prime_count(std::uint64_t below_or_equal) const;

    // Visits every prime power p^a <= X ascending in p for a = 1, then the
    // higher powers ascending in n. fn(n, log_p, a).
    template <class Fn>
    void for_each_prime_power(std::uint64_t X, Fn&& fn) const {
        for (std::size_t i = 0; i < primes_.size() && primes_[i] <= X; ++i)
            fn(primes_[i], prime_logs_[i], 1u);
        for (const auto& pp : higher_powers_) {
            if (pp.n > X) break;
            fn(pp.n, pp.log_p, pp.exponent);
        }
    }

  private:
    std::uint64_t limit_ = 0;
    std::vector<std::uint64_t> primes_;
    std::vector<double> prime_logs_;
    std::vector<PrimePower> higher_powers_;  // a >= 2, sorted by n
};

// S_V(Y) = sum_{p <= Y} V(log p)^power / p over tabulated primes.
// power in {1, 2, 4}.
double prime_weight_sum(double Y, const WeightSpec& V, int power, const ArithTables& tables);

// f(p^a) = 2^{-a} binom(a, a/2) (zero for odd a), extended multiplicatively;
// `exponents` is the multiset of prime exponents.
Rational multiplicative_f(const std::vector<int>& exponents);

// (two_k)! / (2^{two_k} (two_k/2)!) for even two_k, zero for odd.
Rational moment_constant_ck(int two_k);

// sum_{m>=2} sum_p 1/(m p^m), with a proven tail bound below `tolerance`.
double prime_power_constant(double tolerance);

// sum_p sum_{m>=2} cos(m delta log p) / (m^2 p^m), tail below `tolerance`.
double prime_power_cos_sum(double delta, double tolerance);

}  // namespace meanlab
