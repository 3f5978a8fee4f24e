#include "meanlab/arith.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "meanlab/errors.hpp"
#include "meanlab/kahan.hpp"

namespace meanlab {

namespace {

// ~360 MB of table data; anything larger is outside the desk-scale budget.
constexpr std::uint64_t kLimitCap = 400'000'000;

using i128 = __int128_t;

long long checked_ll(i128 v, const char* what) {
    if (v > static_cast<i128>(0x7fffffffffffffffLL) || v < -static_cast<i128>(0x7fffffffffffffffLL))
        throw std::overflow_error(std::string("rational overflow in ") + what);
    return static_cast<long long>(v);
}

}  // namespace

Rational Rational::make(long long n, long long d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    return Rational{n, d};
}

Rational Rational::operator*(const Rational& o) const {
    // Cross-reduce before multiplying to keep intermediates small.
    const long long g1 = std::gcd(num < 0 ? -num : num, o.den);
    const long long g2 = std::gcd(o.num < 0 ? -o.num : o.num, den);
    const i128 n = static_cast<i128>(num / g1) * (o.num / g2);
    const i128 d = static_cast<i128>(den / g2) * (o.den / g1);
    return Rational{checked_ll(n, "multiply"), checked_ll(d, "multiply")};
}

ArithTables ArithTables::build(std::uint64_t limit) {
    if (limit < 2) throw RangeError("build_tables: limit must be >= 2");
    if (limit > kLimitCap)
        throw CapacityError("build_tables: limit " + std::to_string(limit) +
                            " exceeds memory budget (cap " + std::to_string(kLimitCap) + ")");

    ArithTables t;
    t.limit_ = limit;

    // Base primes to sqrt(limit).
    const std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit))) + 2;
    std::vector<bool> base(root + 1, true);
    std::vector<std::uint64_t> base_primes;
    for (std::uint64_t i = 2; i <= root; ++i) {
        if (!base[i]) continue;
        base_primes.push_back(i);
        for (std::uint64_t j = i * i; j <= root; j += i) base[j] = false;
    }

    // Segmented sieve over [2, limit].
    const std::uint64_t seg_len = 1u << 22;
    std::vector<bool> seg;
    const double approx = limit > 10 ? static_cast<double>(limit) / (std::log(static_cast<double>(limit)) - 1.1)
                                     : 8.0;
    t.primes_.reserve(static_cast<std::size_t>(approx * 1.05) + 16);
    for (std::uint64_t lo = 2; lo <= limit; lo += seg_len) {
        const std::uint64_t hi = std::min(limit, lo + seg_len - 1);
        seg.assign(hi - lo + 1, true);
        for (std::uint64_t p : base_primes) {
            if (p * p > hi) break;
            std::uint64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
            for (std::uint64_t j = start; j <= hi; j += p) seg[j - lo] = false;
        }
        for (std::uint64_t n = lo; n <= hi; ++n)
            if (seg[n - lo]) t.primes_.push_back(n);
    }

    t.prime_logs_.resize(t.primes_.size());
    for (std::size_t i = 0; i < t.primes_.size(); ++i)
        t.prime_logs_[i] = std::log(static_cast<double>(t.primes_[i]));

    // Higher prime powers p^a <= limit, a >= 2.
    for (std::size_t i = 0; i < t.primes_.size(); ++i) {
        const std::uint64_t p = t.primes_[i];
        if (p > limit / p) break;
        std::uint64_t n = p * p;
        std::uint32_t a = 2;
        while (true) {
            t.higher_powers_.push_back({n, t.prime_logs_[i], a});
            if (n > limit / p) break;
            n *= p;
            ++a;
        }
    }
    std::sort(t.higher_powers_.begin(), t.higher_powers_.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.n < b.n; });
    return t;
}

double ArithTables::lambda(std::uint64_t n) const {
    if (n > limit_) throw RangeError("lambda: n exceeds table limit");
    if (n < 2) return 0.0;
    auto it = std::lower_bound(primes_.begin(), primes_.end(), n);
    if (it != primes_.end() && *it == n) return prime_logs_[it - primes_.begin()];
    auto hp = std::lower_bound(higher_powers_.begin(), higher_powers_.end(), n,
                               [](const PrimePower& pp, std::uint64_t v) { return pp.n < v; });
    if (hp != higher_powers_.end() && hp->n == n) return hp->log_p;
    return 0.0;
}

double ArithTables::psi(std::uint64_t N) const {
    if (N > limit_) throw RangeError("psi: N exceeds table limit");
    KahanSum s;
    for_each_prime_power(N, [&](std::uint64_t, double lp, std::uint32_t) { s.add(lp); });
    return s.result();
}

std::size_t ArithTables::prime_count(std::uint64_t below_or_equal) const {
    if (below_or_equal > limit_) throw RangeError("prime_count: bound exceeds table limit");
    return std::upper_bound(primes_.begin(), primes_.end(), below_or_equal) - primes_.begin();
}

double prime_weight_sum(double Y, const WeightSpec& V, int power, const ArithTables& tables) {
    if (Y < 2.0) throw RangeError("prime_weight_sum: Y must be >= 2");
    if (Y > static_cast<double>(tables.limit()))
        throw RangeError("prime_weight_sum: Y exceeds table limit");
    if (power != 1 && power != 2 && power != 4)
        throw RangeError("prime_weight_sum: power must be 1, 2 or 4");
    KahanSum s;
    const auto& primes = tables.primes();
    const auto& logs = tables.prime_logs();
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (static_cast<double>(primes[i]) > Y) break;
        const double v = V.value(logs[i]);
        double vp = v;
        if (power >= 2) vp *= v;
        if (power == 4) vp *= vp;
        s.add(vp / static_cast<double>(primes[i]));
    }
    return s.result();
}

Rational multiplicative_f(const std::vector<int>& exponents) {
    Rational f{1, 1};
    for (int a : exponents) {
        if (a < 1) throw RangeError("multiplicative_f: exponents must be >= 1");
        if (a % 2 == 1) return Rational{0, 1};
        // 2^{-a} * binom(a, a/2)
        i128 binom = 1;
        for (int j = 1; j <= a / 2; ++j) binom = binom * (a / 2 + j) / j;
        const i128 pow2 = static_cast<i128>(1) << a;
        f = f * Rational::make(checked_ll(binom, "multiplicative_f"),
                               checked_ll(pow2, "multiplicative_f"));
    }
    return f;
}

Rational moment_constant_ck(int two_k) {
    if (two_k < 1) throw RangeError("moment_constant_ck: two_k must be >= 1");
    if (two_k % 2 == 1) return Rational{0, 1};
    // (2k)!/(2^{2k} k!) = prod_{j=1}^{k} (2j-1)/2
    Rational c{1, 1};
    for (int j = 1; j <= two_k / 2; ++j) c = c * Rational::make(2 * j - 1, 2);
    return c;
}

namespace {

// zeta(x) for real x >= 2 to ~1e-15: truncated series plus Euler-Maclaurin tail.
double zeta_real(double x) {
    const int N = 100;
    KahanSum s;
    for (int n = 1; n < N; ++n) s.add(std::pow(n, -x));
    const double Ninv = 1.0 / N;
    const double nx = std::pow(N, -x);
    s.add(nx * N / (x - 1.0));       // N^{1-x}/(x-1)
    s.add(0.5 * nx);                 // N^{-x}/2
    s.add(x * nx * Ninv / 12.0);     // B2 term
    s.add(-x * (x + 1.0) * (x + 2.0) * nx * Ninv * Ninv * Ninv / 720.0);  // B4 term
    return s.result();
}

// zeta(s) for complex s with Re(s) >= 2: Dirichlet sum with Euler-Maclaurin
// correction, enough for the prime-zeta recursions here.
std::complex<double> zeta_complex_sigma2(std::complex<double> s) {
    const int N = std::max<int>(64, static_cast<int>(2.0 * std::abs(s.imag())) + 8);
    KahanComplexSum sum;
    for (int n = 1; n < N; ++n)
        sum.add(std::exp(-s * std::log(static_cast<double>(n))));
    const std::complex<double> nls = std::exp(-s * std::log(static_cast<double>(N)));
    sum.add(nls * static_cast<double>(N) / (s - 1.0));
    sum.add(0.5 * nls);
    std::complex<double> term = s * nls / static_cast<double>(N) / 12.0;
    sum.add(term);
    // B4 correction
    term = -s * (s + 1.0) * (s + 2.0) * nls / std::pow(static_cast<double>(N), 3) / 720.0;
    sum.add(term);
    term = s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * nls /
           std::pow(static_cast<double>(N), 5) / 30240.0;
    sum.add(term);
    return sum.result();
}

constexpr int kMobius[65] = {0, 1,  -1, -1, 0, -1, 1,  -1, 0, 0, 1,  -1, 0, -1, 1,  1, 0,
                             -1, 0,  -1, 0, 1, 1,  -1, 0, 0, 1, 0,  0, -1, -1, -1, 0, 1,
                             1,  1,  0, -1, 1, 1,  0, -1, -1, -1, 0, 0, 1,  -1, 0, 0, 0,
                             1,  0,  -1, 0, 1, 0,  1, 1, -1, 0, -1, 1, 0,  0};

// Prime zeta P(m) = sum_p p^{-m} via the Moebius-log-zeta recursion.
double prime_zeta_real(int m) {
    double acc = 0.0;
    for (int k = 1; k * m <= 64; ++k) {
        if (kMobius[k] == 0) continue;
        acc += kMobius[k] * std::log(zeta_real(static_cast<double>(k) * m)) / k;
    }
    return acc;
}

std::complex<double> prime_zeta_complex(std::complex<double> s) {
    std::complex<double> acc = 0.0;
    for (int k = 1; k * s.real() <= 64.0; ++k) {
        if (kMobius[k] == 0) continue;
        // Re(ks) >= 2 throughout, so zeta(ks) is near 1 and the principal
        // log carries no branch ambiguity.
        acc += static_cast<double>(kMobius[k]) *
               std::log(zeta_complex_sigma2(static_cast<double>(k) * s)) / static_cast<double>(k);
    }
    return acc;
}

}  // namespace

double prime_power_constant(double tolerance) {
    if (tolerance <= 0.0) throw RangeError("prime_power_constant: tolerance must be > 0");
    // sum_{m>=2} P(m)/m with P(m) <= 2^{1-m}; the tail past M is bounded by
    // sum_{m>M} 2^{1-m}/m < 2^{1-M}/M, driven below tolerance.
    int M = 10;
    while (std::pow(2.0, 1.0 - M) / M >= 0.5 * tolerance && M < 64) ++M;
    KahanSum s;
    for (int m = 2; m <= M; ++m) s.add(prime_zeta_real(m) / m);
    return s.result();
}

double prime_power_cos_sum(double delta, double tolerance) {
    if (tolerance <= 0.0) throw RangeError("prime_power_cos_sum: tolerance must be > 0");
    // sum_m Re P(m(1 - i delta)) / m^2, same geometric tail as above.
    int M = 10;
    while (std::pow(2.0, 1.0 - M) / (M * M) >= 0.5 * tolerance && M < 64) ++M;
    KahanSum s;
    for (int m = 2; m <= M; ++m) {
        const std::complex<double> sm(static_cast<double>(m), -static_cast<double>(m) * delta);
        s.add(prime_zeta_complex(sm).real() / (m * m));
    }
    return s.result();
}

}  // namespace meanlab
