#include "meanlab/polyeval.hpp"

#include <algorithm>
#include <cstdlib>
#include <array>
#include <cmath>
#include <fstream>
#include <mutex>

#include "meanlab/errors.hpp"
#include "meanlab/kahan.hpp"
#include "meanlab/parallel.hpp"
#include "meanlab/quadrature.hpp"

namespace meanlab {

namespace {

void finish_terms(TermList& t) {
    KahanSum sabs, ssq;
    double mx = 0.0;
    for (std::size_t i = 0; i < t.coeff.size(); ++i) {
        sabs.add(std::abs(t.coeff[i]));
        ssq.add(t.coeff[i] * t.coeff[i]);
        mx = std::max(mx, t.logn[i]);
    }
    t.sum_abs = sabs.result();
    t.sum_sq = ssq.result();
    t.max_logn = mx;
}

}  // namespace

TermList weighted_vm_terms(double X, const WeightSpec& V, const ArithTables& tables) {
    return weighted_vm_terms_sigma(X, V, 0.5, tables);
}

TermList weighted_vm_terms_sigma(double X, const WeightSpec& V, double sigma,
                                 const ArithTables& tables) {
    if (X < 2.0) throw RangeError("weighted_vm_terms: X must be >= 2");
    if (X > static_cast<double>(tables.limit()))
        throw RangeError("weighted_vm_terms: X exceeds table limit");
    TermList t;
    t.description = "weighted-vm X=" + std::to_string(X) + " V=" + V.label;
    t.length = X;
    tables.for_each_prime_power(static_cast<std::uint64_t>(X),
                                [&](std::uint64_t n, double lp, std::uint32_t a) {
                                    // Lambda(n)/log n = 1/a at n = p^a
                                    const double logn = a * lp;
                                    const double c =
                                        V.value(logn) / (a * std::exp(sigma * logn));
                                    if (c != 0.0) {
                                        t.coeff.push_back(c);
                                        t.logn.push_back(logn);
                                    }
                                });
    finish_terms(t);
    return t;
}

TermList logderiv_terms(double X, const ArithTables& tables) {
    if (X < 2.0) throw RangeError("logderiv_terms: X must be >= 2");
    if (X > static_cast<double>(tables.limit()))
        throw RangeError("logderiv_terms: X exceeds table limit");
    const double LX = std::log(X);
    TermList t;
    t.description = "logderiv X=" + std::to_string(X);
    t.length = X;
    tables.for_each_prime_power(static_cast<std::uint64_t>(X),
                                [&](std::uint64_t n, double lp, std::uint32_t a) {
                                    const double logn = a * lp;
                                    const double c =
                                        lp * (1.0 - logn / LX) / std::sqrt(static_cast<double>(n));
                                    if (c != 0.0) {
                                        t.coeff.push_back(c);
                                        t.logn.push_back(logn);
                                    }
                                });
    finish_terms(t);
    return t;
}

std::complex<double> eval_terms(const TermList& terms, double t) {
    KahanComplexSum s;
    for (std::size_t i = 0; i < terms.coeff.size(); ++i)
        s.add(std::polar(terms.coeff[i], -t * terms.logn[i]));
    return s.result();
}

std::complex<double> eval_weighted_vm(double t, double X, const WeightSpec& V,
                                      const ArithTables& tables) {
    return eval_terms(weighted_vm_terms(X, V, tables), t);
}

std::complex<double> eval_logderiv(double t, double X, const ArithTables& tables) {
    return eval_terms(logderiv_terms(X, tables), t);
}

// ---------------------------------------------------------------------------
// Goldston kernels
// ---------------------------------------------------------------------------

double goldston_f(double u) {
    // (pi/2) u cot(pi u/2); removable at 0, zero at 1.
    const double z = 0.5 * M_PI * u;
    if (std::abs(u) < 1e-2) {
        const double z2 = z * z;
        return 1.0 - z2 / 3.0 - z2 * z2 / 45.0 - 2.0 * z2 * z2 * z2 / 945.0;
    }
    return z * std::cos(z) / std::sin(z);
}

double goldston_Px(double t, double x, const ArithTables& tables) {
    if (x < 4.0) throw RangeError("goldston_Px: x must be >= 4");
    if (x > static_cast<double>(tables.limit()))
        throw RangeError("goldston_Px: x exceeds table limit");
    const double Lx = std::log(x);
    // Lambda(n)/log n = 1/a at n = p^a
    KahanSum acc;
    tables.for_each_prime_power(
        static_cast<std::uint64_t>(x), [&](std::uint64_t n, double lp, std::uint32_t a) {
            const double logn = a * lp;
            acc.add(std::sin(t * logn) * goldston_f(logn / Lx) /
                    (a * std::sqrt(static_cast<double>(n))));
        });
    return -acc.result() / M_PI;
}

namespace {

// g(v) = int_0^inf u /((u^2+v^2) sinh u) du = pi/(2v) - D(v) where
// D(v) = int_0^inf (1 - u/sinh u)/(u^2+v^2) du is smooth on [0, inf).
// D is tabulated on [0, 40] with step 1/64 and cubic (Catmull-Rom)
// interpolation; past 40 the asymptotic moment series takes over.
class HKernelTable {
  public:
    static constexpr double kStep = 1.0 / 64.0;
    static constexpr double kVMax = 40.0;

    HKernelTable() {
        const int n = static_cast<int>(kVMax / kStep) + 1;
        d_.resize(n + 3);
        for (int i = 0; i < n + 3; ++i) {
            const double v = std::min(kVMax + 2 * kStep, i * kStep);
            d_[i] = d_integral(v);
        }
    }

    double g(double v) const {
        v = std::abs(v);
        if (v == 0.0) return 0.0;  // not used; h(0) = 0 by convention
        if (v > kVMax) {
            // g(v) ~ (I1 - I3/v^2 + I5/v^4 - I7/v^6)/v^2,
            // I_k = int u^k/sinh u du = 2 Gamma(k+1)(1-2^{-k-1}) zeta(k+1)
            const double i1 = 2.467401100272339655;    // pi^2/4
            const double i3 = 12.17625382094765810;    // pi^4/8
            const double i5 = 240.3310578722043554;    // pi^6/4
            const double i7 = 10082.68326067348375;    // 2*5040*(255/256)*zeta(8)
            const double w = 1.0 / (v * v);
            return w * (i1 - w * (i3 - w * (i5 - w * i7)));
        }
        const double s = v / kStep;
        const int i = std::min(static_cast<int>(s), static_cast<int>(d_.size()) - 3);
        const double f = s - i;
        // Catmull-Rom over d_[i-1..i+2]
        const double p0 = d_[i == 0 ? 0 : i - 1], p1 = d_[i], p2 = d_[i + 1], p3 = d_[i + 2];
        double dm = i == 0 ? (p2 - p1) : 0.5 * (p2 - p0);
        const double dp = 0.5 * (p3 - p1);
        const double a = 2 * p1 - 2 * p2 + dm + dp;
        const double b = -3 * p1 + 3 * p2 - 2 * dm - dp;
        const double dval = ((a * f + b) * f + dm) * f + p1;
        return M_PI_2 / v - dval;
    }

  private:
    static double d_integral(double v) {
        // Integrand (1 - u/sinh u)/(u^2+v^2): ~1/6 at 0, ~1/(u^2+v^2) large u.
        auto f = [v](double u) {
            double q;
            if (u < 1e-4) {
                q = u * u / 6.0 - 7.0 * u * u * u * u / 360.0;
            } else {
                q = 1.0 - u / std::sinh(u);
            }
            return q / (u * u + v * v);
        };
        const double U = 50.0;
        double val = integrate_adaptive(f, 0.0, 1.0, 1e-13, 2000) +
                     integrate_adaptive(f, 1.0, 10.0, 1e-13, 2000) +
                     integrate_adaptive(f, 10.0, U, 1e-13, 2000);
        // closed tail: int_U^inf du/(u^2+v^2), the 1 - u/sinh u factor = 1 - O(e^{-U})
        val += v > 0 ? (M_PI_2 - std::atan(U / v)) / v : 1.0 / U;
        return val;
    }

    std::vector<double> d_;
};

const HKernelTable& h_table() {
    static const HKernelTable t;
    return t;
}

}  // namespace

double goldston_h_inner(double v) {
    if (v <= 0.0) throw RangeError("goldston_h_inner: v must be > 0");
    return h_table().g(v);
}

double goldston_h(double v) {
    if (v == 0.0) return 0.0;
    return std::sin(v) * h_table().g(v);
}

double goldston_Zx(double t, double x, const ZeroTable& zeros, double envelope_eps) {
    if (x < 4.0) throw RangeError("goldston_Zx: x must be >= 4");
    zeros.require_coverage(t + 50.0, "goldston_Zx");
    const double Lx = std::log(x);
    // |h(v)| <= C_h/(1+v^2) with C_h ~ pi^2/4; truncate where the envelope
    // falls below envelope_eps.
    const double c_h = 2.5;
    const double v_cut = std::sqrt(std::max(1.0, c_h / envelope_eps - 1.0));
    const double window = v_cut / Lx;
    const auto& g = zeros.ordinates();
    KahanSum s;
    // positive ordinates, gamma in [t - window, t + window]
    auto lo = std::lower_bound(g.begin(), g.end(), t - window);
    for (auto it = lo; it != g.end() && *it <= t + window; ++it)
        s.add(goldston_h((t - *it) * Lx));
    // mirrored ordinates -gamma: v = (t + gamma) log x
    for (auto it = g.begin(); it != g.end() && *it <= window - t; ++it)
        s.add(goldston_h((t + *it) * Lx));
    return s.result() / M_PI;
}

double selberg_lambda_x(double lambda_n, double log_n, double x) {
    const double lx = std::log(x);
    if (log_n <= lx) return lambda_n;
    return lambda_n * (2.0 * lx - log_n) / lx;
}

double selberg_S_approx(double t, double x, const ArithTables& tables) {
    if (x < 2.0) throw RangeError("selberg_S_approx: x must be >= 2");
    const double x2 = x * x;
    if (x2 > static_cast<double>(tables.limit()))
        throw RangeError("selberg_S_approx: x^2 exceeds table limit");
    const double lx = std::log(x);
    const double sigma = 0.5 + 1.0 / lx;
    KahanSum im;
    tables.for_each_prime_power(
        static_cast<std::uint64_t>(x2), [&](std::uint64_t n, double lp, std::uint32_t a) {
            const double logn = a * lp;
            const double lam_x = selberg_lambda_x(lp, logn, x);
            if (lam_x == 0.0) return;
            const double mag = lam_x / (std::exp(sigma * logn) * logn);
            im.add(-mag * std::sin(t * logn));  // Im n^{-it} = -sin(t log n)
        });
    return im.result() / M_PI;
}

// ---------------------------------------------------------------------------
// Grid evaluation (rotor path)
// ---------------------------------------------------------------------------

namespace {

// Eight-wide double vector for the rotor hop; GCC lowers it to the widest
// SIMD the target offers.
typedef double Vec __attribute__((vector_size(64)));

inline Vec load_vec(const double* p) {
    Vec v;
    __builtin_memcpy(&v, p, sizeof(Vec));
    return v;
}
inline void store_vec(double* p, Vec v) { __builtin_memcpy(p, &v, sizeof(Vec)); }

// 64-byte aligned accumulator row (keeps the hop loads/stores on one line).
struct AlignedRow {
    double* p = nullptr;
    std::size_t n = 0;
    AlignedRow() = default;
    explicit AlignedRow(std::size_t size) : n(size) {
        p = static_cast<double*>(std::aligned_alloc(64, ((size * 8 + 63) / 64) * 64));
        std::fill(p, p + size, 0.0);
    }
    AlignedRow(const AlignedRow&) = delete;
    AlignedRow& operator=(const AlignedRow&) = delete;
    AlignedRow(AlignedRow&& o) noexcept : p(o.p), n(o.n) { o.p = nullptr; }
    AlignedRow& operator=(AlignedRow&& o) noexcept {
        std::swap(p, o.p);
        std::swap(n, o.n);
        return *this;
    }
    ~AlignedRow() { std::free(p); }
};

}  // namespace

SampledPolynomial eval_grid(const TermList& terms, double T, std::int64_t count) {
    if (count < 2) throw RangeError("eval_grid: count must be >= 2");
    const double span = T;
    const double dt = span / static_cast<double>(count);
    if (dt * terms.max_logn > M_PI / 4.0 + 1e-12)
        throw GuardError("eval_grid: resolution guard dt*logX <= pi/4 violated (dt*logX = " +
                         std::to_string(dt * terms.max_logn) + ")");

    SampledPolynomial sp;
    sp.T = T;
    sp.span = span;
    sp.count = count;
    sp.dt = dt;
    sp.max_logn = terms.max_logn;
    sp.spec = terms.description;
    const std::int64_t nv = count + 1;
    sp.values.assign(static_cast<std::size_t>(nv), {0.0, 0.0});

    const std::int64_t n_terms = static_cast<std::int64_t>(terms.coeff.size());
    constexpr int kTile = 512;  // renormalization cadence
    constexpr int kHop = 8;     // rotor advances in r^kHop strides (SIMD width)

    std::vector<AlignedRow> slot_re(kReductionSlots), slot_im(kReductionSlots);

    parallel_slots(kReductionSlots, [&](int s) {
        auto [lo, hi] = slot_stripe(n_terms, s);
        slot_re[s] = AlignedRow(static_cast<std::size_t>(nv));
        slot_im[s] = AlignedRow(static_cast<std::size_t>(nv));
        auto& are = slot_re[s];
        auto& aim = slot_im[s];
        if (lo >= hi) return;

        constexpr std::int64_t kChunk = 4096;
        std::vector<double> wr(kChunk), wi(kChunk), cm(kChunk);
        // r^k, k = 0..kHop-1, and the hop rotor r^kHop per term
        std::vector<double> pr(kChunk * kHop), pi(kChunk * kHop), hr(kChunk), hi_(kChunk);
        for (std::int64_t c0 = lo; c0 < hi; c0 += kChunk) {
            const std::int64_t c1 = std::min(hi, c0 + kChunk);
            const int m = static_cast<int>(c1 - c0);
            for (int i = 0; i < m; ++i) {
                const double logn = terms.logn[c0 + i];
                const double coeff = terms.coeff[c0 + i];
                const double ph0 = -T * logn;
                wr[i] = coeff * std::cos(ph0);
                wi[i] = coeff * std::sin(ph0);
                cm[i] = std::abs(coeff);
                const double rr = std::cos(dt * logn), ri = -std::sin(dt * logn);
                double ar = 1.0, ai = 0.0;
                for (int k = 0; k < kHop; ++k) {
                    pr[i * kHop + k] = ar;
                    pi[i * kHop + k] = ai;
                    const double t2 = ar * rr - ai * ri;
                    ai = ar * ri + ai * rr;
                    ar = t2;
                }
                hr[i] = ar;  // r^kHop
                hi_[i] = ai;
            }
            double* __restrict__ arp = are.p;
            double* __restrict__ aip = aim.p;
            for (std::int64_t j0 = 0; j0 < nv; j0 += kTile) {
                const std::int64_t j1 = std::min(nv, j0 + kTile);
                int i = 0;
                // two interleaved terms per pass share the accumulator
                // loads/stores and run independent rotor chains
                for (; i + 2 <= m; i += 2) {
                    double w0r = wr[i], w0i = wi[i], w1r = wr[i + 1], w1i = wi[i + 1];
                    const double h0r = hr[i], h0i = hi_[i], h1r = hr[i + 1], h1i = hi_[i + 1];
                    Vec pr0, pi0, pr1, pi1;
                    for (int k = 0; k < kHop; ++k) {
                        pr0[k] = pr[i * kHop + k];
                        pi0[k] = pi[i * kHop + k];
                        pr1[k] = pr[(i + 1) * kHop + k];
                        pi1[k] = pi[(i + 1) * kHop + k];
                    }
                    std::int64_t j = j0;
                    for (; j + kHop <= j1; j += kHop) {
                        Vec ar = load_vec(arp + j), ai = load_vec(aip + j);
                        ar += w0r * pr0 - w0i * pi0 + w1r * pr1 - w1i * pi1;
                        ai += w0r * pi0 + w0i * pr0 + w1r * pi1 + w1i * pr1;
                        store_vec(arp + j, ar);
                        store_vec(aip + j, ai);
                        double t2 = w0r * h0r - w0i * h0i;
                        w0i = w0r * h0i + w0i * h0r;
                        w0r = t2;
                        t2 = w1r * h1r - w1i * h1i;
                        w1i = w1r * h1i + w1i * h1r;
                        w1r = t2;
                    }
                    for (; j < j1; ++j) {
                        arp[j] += w0r + w1r;
                        aip[j] += w0i + w1i;
                        double t2 = w0r * pr0[1] - w0i * pi0[1];
                        w0i = w0r * pi0[1] + w0i * pr0[1];
                        w0r = t2;
                        t2 = w1r * pr1[1] - w1i * pi1[1];
                        w1i = w1r * pi1[1] + w1i * pr1[1];
                        w1r = t2;
                    }
                    wr[i] = w0r;
                    wi[i] = w0i;
                    wr[i + 1] = w1r;
                    wi[i + 1] = w1i;
                }
                for (; i < m; ++i) {
                    double w_r = wr[i], w_i = wi[i];
                    const double h_r = hr[i], h_i = hi_[i];
                    Vec prv, piv;
                    for (int k = 0; k < kHop; ++k) {
                        prv[k] = pr[i * kHop + k];
                        piv[k] = pi[i * kHop + k];
                    }
                    std::int64_t j = j0;
                    for (; j + kHop <= j1; j += kHop) {
                        Vec ar = load_vec(arp + j), ai = load_vec(aip + j);
                        ar += w_r * prv - w_i * piv;
                        ai += w_r * piv + w_i * prv;
                        store_vec(arp + j, ar);
                        store_vec(aip + j, ai);
                        const double t2 = w_r * h_r - w_i * h_i;
                        w_i = w_r * h_i + w_i * h_r;
                        w_r = t2;
                    }
                    for (; j < j1; ++j) {
                        arp[j] += w_r;
                        aip[j] += w_i;
                        const double t2 = w_r * prv[1] - w_i * piv[1];
                        w_i = w_r * piv[1] + w_i * prv[1];
                        w_r = t2;
                    }
                    wr[i] = w_r;
                    wi[i] = w_i;
                }
                // Renormalize rotor magnitudes to |coeff| (unit-modulus drift).
                for (int i = 0; i < m; ++i) {
                    const double mag = std::sqrt(wr[i] * wr[i] + wi[i] * wi[i]);
                    if (mag > 0.0 && cm[i] > 0.0) {
                        const double fix = cm[i] / mag;
                        wr[i] *= fix;
                        wi[i] *= fix;
                    }
                }
            }
        }
    });

    // Ordered reduction across slots.
    for (std::int64_t j = 0; j < nv; ++j) {
        KahanSum re, im;
        for (int s = 0; s < kReductionSlots; ++s) {
            re.add(slot_re[s].p[j]);
            im.add(slot_im[s].p[j]);
        }
        sp.values[static_cast<std::size_t>(j)] = {re.result(), im.result()};
    }
    return sp;
}

Part part_from_string(const std::string& s) {
    if (s == "re") return Part::re;
    if (s == "im") return Part::im;
    if (s == "abs") return Part::abs;
    throw RangeError("part must be one of re|im|abs, got '" + s + "'");
}

const char* part_name(Part p) {
    switch (p) {
        case Part::re: return "re";
        case Part::im: return "im";
        default: return "abs";
    }
}

double mean_power(const SampledPolynomial& sp, int two_k, Part part, double* err_est) {
    if (two_k < 1) throw RangeError("mean_power: two_k must be >= 1");
    if (part == Part::abs && two_k % 2 != 0)
        throw RangeError("mean_power: abs part needs even two_k");
    if (sp.dt * two_k * sp.max_logn > M_PI / 2.0 + 1e-12)
        throw GuardError("mean_power: resolution guard dt*two_k*logX <= pi/2 violated");
    if (sp.count % 4 != 0) throw GuardError("mean_power: count must be divisible by 4");

    auto sample = [&](std::int64_t j) {
        const std::complex<double> v = sp.values[static_cast<std::size_t>(j)];
        double base;
        switch (part) {
            case Part::re: base = v.real(); break;
            case Part::im: base = v.imag(); break;
            default: base = std::abs(v);
        }
        double p = 1.0;
        for (int i = 0; i < two_k; ++i) p *= base;
        return p;
    };

    auto simpson = [&](std::int64_t stride) {
        KahanSum s;
        const std::int64_t n = sp.count / stride;
        for (std::int64_t j = 0; j <= n; ++j) {
            const double w = (j == 0 || j == n) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
            s.add(w * sample(j * stride));
        }
        return s.result() * (sp.dt * stride) / 3.0;
    };

    const double full = simpson(1);
    const double half = simpson(2);
    if (err_est) *err_est = std::abs(full - half) / 15.0;
    return full / sp.span;
}

void write_grid_csv(const SampledPolynomial& sp, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_grid_csv: cannot open " + path);
    out << "t,re,im\n";
    out.precision(17);
    for (std::int64_t j = 0; j <= sp.count; ++j) {
        const auto v = sp.values[static_cast<std::size_t>(j)];
        out << (sp.T + j * sp.dt) << ',' << v.real() << ',' << v.imag() << '\n';
    }
}

}  // namespace meanlab
