#include "meanlab/zeros.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "meanlab/errors.hpp"
#include "meanlab/kahan.hpp"
#include "meanlab/parallel.hpp"
#include "meanlab/zeta.hpp"

namespace meanlab {

ZeroTable::ZeroTable(double height, std::vector<double> ordinates, bool certified,
                     std::map<std::string, std::string> meta)
    : height_(height), ordinates_(std::move(ordinates)), certified_(certified),
      meta_(std::move(meta)) {}

std::size_t ZeroTable::count_below(double t) const {
    return std::upper_bound(ordinates_.begin(), ordinates_.end(), t) - ordinates_.begin();
}

double ZeroTable::nearest_gap(double t) const {
    if (ordinates_.empty()) return std::abs(t);
    auto it = std::lower_bound(ordinates_.begin(), ordinates_.end(), t);
    double gap = std::numeric_limits<double>::infinity();
    if (it != ordinates_.end()) gap = std::min(gap, std::abs(*it - t));
    if (it != ordinates_.begin()) gap = std::min(gap, std::abs(*(it - 1) - t));
    return gap;
}

void ZeroTable::require_coverage(double t, const char* who) const {
    if (!certified_)
        throw CoverageError(std::string(who) + ": zero table is not certified");
    if (t > height_)
        throw CoverageError(std::string(who) + ": needs zeros to height " + std::to_string(t) +
                            " but table stops at " + std::to_string(height_));
}

// ---------------------------------------------------------------------------
// Zero location
// ---------------------------------------------------------------------------

namespace {

// Gram point g_n: theta(g_n) = n pi, Newton on theta.
double gram_point(long long n, double guess) {
    double t = guess;
    const double target = static_cast<double>(n) * M_PI;
    for (int it = 0; it < 60; ++it) {
        const double f = theta_any(t) - target;
        const double d = t >= 10.0 ? theta_derivative(t)
                                   : (theta_any(t + 5e-7) - theta_any(t - 5e-7)) / 1e-6;
        double step = f / d;
        if (!std::isfinite(step)) break;
        step = std::clamp(step, -2.0, 2.0);
        t -= step;
        if (t < 7.0) t = 7.0;  // stay on the increasing branch
        if (std::abs(step) < 1e-12 * std::max(1.0, t)) break;
    }
    return t;
}

struct GramScan {
    std::vector<double> points;  // Gram points g_{n0}..g_{n1}
    long long n0 = 0;
};

}  // namespace

ZeroTable locate_zeros(double height, const LocateOptions& opts) {
    if (height < 50.0 || height > 1e6)
        throw RangeError("locate_zeros: height must be in [50, 1e6]");

    // Gram indices -1 .. n_end with g_{n_end} comfortably past `height`.
    const long long n_end =
        static_cast<long long>(std::ceil(theta_any(height) / M_PI)) + 12;

    // Gram points, parallel over contiguous index ranges.
    std::vector<double> gram(static_cast<std::size_t>(n_end + 2));
    parallel_slots(kReductionSlots, [&](int s) {
        auto [lo, hi] = slot_stripe(n_end + 2, s);
        for (long long i = lo; i < hi; ++i) {
            const long long n = i - 1;
            // Initial guess by inverting theta ~ (t/2) log(t/2pi) - t/2 - pi/8.
            double guess = 9.7;
            if (n >= 0) {
                double t = std::max(12.0, 2.0 * M_PI * std::exp(1.0));
                for (int k = 0; k < 40; ++k) {
                    const double d = 0.5 * std::log(t / (2.0 * M_PI));
                    const double f = 0.5 * t * std::log(t / (2.0 * M_PI)) - 0.5 * t - M_PI / 8.0 -
                                     static_cast<double>(n) * M_PI;
                    const double step = f / std::max(d, 0.05);
                    t -= step;
                    if (t < 10.0) t = 10.0;
                    if (std::abs(step) < 1e-9 * t) break;
                }
                guess = t;
            }
            gram[static_cast<std::size_t>(i)] = gram_point(n, guess);
        }
    });

    // Z at every Gram point.
    std::vector<double> zg(gram.size());
    parallel_slots(kReductionSlots, [&](int s) {
        auto [lo, hi] = slot_stripe(static_cast<std::int64_t>(gram.size()), s);
        for (std::int64_t i = lo; i < hi; ++i) zg[i] = hardy_Z_any(gram[i]);
    });

    // Sign-change counting per Gram interval with progressive subdivision.
    const std::size_t n_intervals = gram.size() - 1;
    std::vector<std::vector<double>> brackets(n_intervals);  // bracket left ends + rights
    auto scan_interval = [&](std::size_t i, int depth) {
        // Samples Z at 2^depth+1 points across [g_i, g_{i+1}], returns bracket pairs.
        const double a = gram[i], b = gram[i + 1];
        const int pieces = 1 << depth;
        std::vector<double> xs(pieces + 1), zs(pieces + 1);
        for (int j = 0; j <= pieces; ++j) {
            xs[j] = a + (b - a) * j / pieces;
            zs[j] = (j == 0) ? zg[i] : (j == pieces ? zg[i + 1] : hardy_Z_any(xs[j]));
        }
        std::vector<double> found;
        for (int j = 0; j < pieces; ++j)
            if (zs[j] == 0.0 || (zs[j] > 0) != (zs[j + 1] > 0)) {
                found.push_back(xs[j]);
                found.push_back(xs[j + 1]);
            }
        return found;
    };

    parallel_slots(kReductionSlots, [&](int s) {
        auto [lo, hi] = slot_stripe(static_cast<std::int64_t>(n_intervals), s);
        for (std::int64_t i = lo; i < hi; ++i) brackets[i] = scan_interval(i, 2);
    });

    // Turing-style certification sweep: at a "good" Gram point g_n (Rosser
    // sign condition) the cumulative zero count must equal n + 1. Blocks
    // between good points that come up short get deeper subdivision.
    auto is_good = [&](std::size_t i) {
        const long long n = static_cast<long long>(i) - 1;
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        return sign * zg[i] > 0.0;
    };

    std::vector<std::size_t> counts(n_intervals);
    for (std::size_t i = 0; i < n_intervals; ++i) counts[i] = brackets[i].size() / 2;

    std::ostringstream bad_blocks;
    std::size_t block_start = 0;  // index of last good Gram point
    std::size_t cum_expected = 0; // zeros expected up to block_start: n0 + 1 at good points
    (void)cum_expected;
    for (std::size_t i = 1; i < gram.size(); ++i) {
        if (!is_good(i)) continue;
        if (!is_good(block_start)) { block_start = i; continue; }
        // zeros expected strictly inside (g_{block_start}, g_i]: i - block_start
        std::size_t have = 0;
        for (std::size_t j = block_start; j < i; ++j) have += counts[j];
        const std::size_t want = i - block_start;
        int depth = 3;
        while (have < want && depth <= opts.max_subdivision) {
            for (std::size_t j = block_start; j < i; ++j) {
                brackets[j] = scan_interval(j, depth);
                counts[j] = brackets[j].size() / 2;
            }
            have = 0;
            for (std::size_t j = block_start; j < i; ++j) have += counts[j];
            ++depth;
        }
        if (have != want) {
            bad_blocks << " [gram " << (static_cast<long long>(block_start) - 1) << ".."
                       << (static_cast<long long>(i) - 1) << ": found " << have << ", expected "
                       << want << "]";
        }
        block_start = i;
    }
    if (bad_blocks.tellp() > 0)
        throw CertificationError("locate_zeros: count mismatch in Gram blocks:" +
                                 bad_blocks.str());

    // Refine every bracket by bisection on Z.
    std::vector<std::vector<double>> per_interval(n_intervals);
    parallel_slots(kReductionSlots, [&](int s) {
        auto [lo, hi] = slot_stripe(static_cast<std::int64_t>(n_intervals), s);
        for (std::int64_t i = lo; i < hi; ++i) {
            auto& br = brackets[i];
            for (std::size_t k = 0; k + 1 < br.size(); k += 2) {
                double a = br[k], b = br[k + 1];
                double fa = hardy_Z_any(a);
                for (int it = 0; it < 80 && (b - a) > opts.bisect_tol; ++it) {
                    const double m = 0.5 * (a + b);
                    const double fm = hardy_Z_any(m);
                    if (fm == 0.0) { a = b = m; break; }
                    if ((fa > 0) != (fm > 0)) {
                        b = m;
                    } else {
                        a = m;
                        fa = fm;
                    }
                }
                per_interval[i].push_back(0.5 * (a + b));
            }
        }
    });

    std::vector<double> ordinates;
    for (auto& v : per_interval)
        for (double g : v) ordinates.push_back(g);
    // Already ascending by construction (intervals ascend, zeros within too).

    // Final certificate at the last good Gram point >= height.
    std::size_t anchor = 0;
    for (std::size_t i = gram.size(); i-- > 0;) {
        if (gram[i] >= height && is_good(i)) { anchor = i; }
        if (gram[i] < height) break;
    }
    bool certified = false;
    if (anchor > 0) {
        const long long n_anchor = static_cast<long long>(anchor) - 1;
        const std::size_t found =
            std::upper_bound(ordinates.begin(), ordinates.end(), gram[anchor]) - ordinates.begin();
        certified = (found == static_cast<std::size_t>(n_anchor + 1));
        if (!certified)
            throw CertificationError(
                "locate_zeros: certificate mismatch at gram " + std::to_string(n_anchor) +
                ": found " + std::to_string(found) + ", expected " + std::to_string(n_anchor + 1));
    } else {
        throw CertificationError("locate_zeros: no good Gram point beyond requested height");
    }

    // Keep ordinates <= height only; the certificate above pins their count.
    ordinates.erase(std::upper_bound(ordinates.begin(), ordinates.end(), height),
                    ordinates.end());

    std::map<std::string, std::string> meta;
    meta["builder"] = "gram-scan-v1";
    meta["bisect_tol"] = std::to_string(opts.bisect_tol);
    meta["anchor_gram_index"] = std::to_string(static_cast<long long>(anchor) - 1);
    return ZeroTable(height, std::move(ordinates), certified, std::move(meta));
}

// ---------------------------------------------------------------------------
// Pair correlation
// ---------------------------------------------------------------------------

namespace {

void check_pair_inputs(const ZeroTable& zeros, double T) {
    if (T < 100.0) throw RangeError("pair_correlation_F: T must be >= 100");
    zeros.require_coverage(T, "pair_correlation_F");
}

}  // namespace

double pair_correlation_F(double u, const ZeroTable& zeros, double T) {
    check_pair_inputs(zeros, T);
    u = std::abs(u);  // F is even in u; evaluate at |u| so symmetry is exact
    const auto& g = zeros.ordinates();
    const std::size_t n = zeros.count_below(T);
    const double v = u * std::log(T);

    std::vector<double> zr(n), zi(n);
    parallel_slots(kReductionSlots, [&](int s) {
        auto [lo, hi] = slot_stripe(static_cast<std::int64_t>(n), s);
        for (std::int64_t j = lo; j < hi; ++j) {
            zr[j] = std::cos(v * g[j]);
            zi[j] = std::sin(v * g[j]);
        }
    });

    std::array<KahanSum, kReductionSlots> partial;
    parallel_slots(kReductionSlots, [&](int s) {
        auto [lo, hi] = slot_stripe(static_cast<std::int64_t>(n), s);
        KahanSum acc;
        for (std::int64_t j = lo; j < hi; ++j) {
            const double gj = g[j], rj = zr[j], ij = zi[j];
            double row = 0.0;
            for (std::size_t k = j + 1; k < n; ++k) {
                const double d = g[k] - gj;
                const double w = 4.0 / (4.0 + d * d);
                row += w * (rj * zr[k] + ij * zi[k]);
            }
            acc.add(row);
        }
        partial[s] = acc;
    });
    KahanSum total;
    for (int s = 0; s < kReductionSlots; ++s) total.merge(partial[s]);
    const double pair_sum = 2.0 * total.result() + static_cast<double>(n);  // diagonal w(0)=1
    return 2.0 * M_PI / (T * std::log(T)) * pair_sum;
}

std::complex<double> pair_correlation_F_reference(double u, const ZeroTable& zeros, double T) {
    check_pair_inputs(zeros, T);
    const auto& g = zeros.ordinates();
    const std::size_t n = zeros.count_below(T);
    const double lt = std::log(T);
    KahanComplexSum total;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            const double d = g[j] - g[k];
            const double w = 4.0 / (4.0 + d * d);
            total.add(std::polar(w, u * lt * d));
        }
    return 2.0 * M_PI / (T * lt) * total.result();
}

BandedF pair_correlation_F_banded(double u, const ZeroTable& zeros, double T, double band) {
    check_pair_inputs(zeros, T);
    u = std::abs(u);
    const auto& g = zeros.ordinates();
    const std::size_t n = zeros.count_below(T);
    const double v = u * std::log(T);
    std::vector<double> zr(n), zi(n);
    for (std::size_t j = 0; j < n; ++j) {
        zr[j] = std::cos(v * g[j]);
        zi[j] = std::sin(v * g[j]);
    }
    KahanSum total;
    std::size_t in_band = 0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 1; k < n && g[k] - g[j] <= band; ++k) {
            const double d = g[k] - g[j];
            total.add((4.0 / (4.0 + d * d)) * (zr[j] * zr[k] + zi[j] * zi[k]));
            ++in_band;
        }
    }
    const double prefactor = 2.0 * M_PI / (T * std::log(T));
    const double pair_sum = 2.0 * total.result() + static_cast<double>(n);
    const std::size_t skipped = n * (n - 1) - 2 * in_band;
    const double tail =
        prefactor * static_cast<double>(skipped) * (4.0 / (4.0 + band * band));
    return {prefactor * pair_sum, tail};
}

double F_unit_integral(double b, const ZeroTable& zeros, double T, int intervals) {
    if (b < 0.0) throw RangeError("F_unit_integral: b must be >= 0");
    if (intervals < 2 || intervals % 2 != 0)
        throw RangeError("F_unit_integral: intervals must be even and >= 2");
    check_pair_inputs(zeros, T);
    const double h = 1.0 / intervals;
    KahanSum s;
    for (int j = 0; j <= intervals; ++j) {
        const double fu = pair_correlation_F(b + j * h, zeros, T);
        const double wgt = (j == 0 || j == intervals) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
        s.add(wgt * fu);
    }
    return s.result() * h / 3.0;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

// CRC-64/ECMA-182, table driven.
struct Crc64Table {
    std::uint64_t t[256];
    Crc64Table() {
        const std::uint64_t poly = 0x42F0E1EBA9EA3693ull;
        for (int i = 0; i < 256; ++i) {
            std::uint64_t c = static_cast<std::uint64_t>(i) << 56;
            for (int b = 0; b < 8; ++b) c = (c & 0x8000000000000000ull) ? (c << 1) ^ poly : c << 1;
            t[i] = c;
        }
    }
};

std::uint64_t crc64(const unsigned char* data, std::size_t len, std::uint64_t crc = 0) {
    static const Crc64Table table;
    for (std::size_t i = 0; i < len; ++i)
        crc = (crc << 8) ^ table.t[static_cast<unsigned char>((crc >> 56) ^ data[i])];
    return crc;
}

static_assert(std::endian::native == std::endian::little,
              "zero-table serialization assumes a little-endian host");

template <class T>
void put(std::string& buf, T v) {
    char raw[sizeof(T)];
    std::memcpy(raw, &v, sizeof(T));
    buf.append(raw, sizeof(T));
}

template <class T>
T get(const std::string& buf, std::size_t& off) {
    if (off + sizeof(T) > buf.size()) throw CorruptTableError("zero table file truncated");
    T v;
    std::memcpy(&v, buf.data() + off, sizeof(T));
    off += sizeof(T);
    return v;
}

}  // namespace

void save_table(const ZeroTable& zeros, const std::string& path) {
    if (!zeros.certified())
        throw CertificationError("save_table: refusing to persist an uncertified table");
    std::string buf;
    buf.reserve(24 + 8 * zeros.ordinates().size());
    buf.append("ZTBL", 4);
    put<std::uint32_t>(buf, 1);
    put<std::uint64_t>(buf, zeros.ordinates().size());
    put<double>(buf, zeros.height());
    for (double g : zeros.ordinates()) put<double>(buf, g);
    const std::uint64_t crc =
        crc64(reinterpret_cast<const unsigned char*>(buf.data()), buf.size());
    put<std::uint64_t>(buf, crc);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("save_table: cannot open " + path);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw std::runtime_error("save_table: write failed for " + path);
}

ZeroTable load_table(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_table: cannot open " + path);
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (buf.size() < 4 + 4 + 8 + 8 + 8) throw CorruptTableError("zero table file truncated");
    if (buf.compare(0, 4, "ZTBL") != 0) throw CorruptTableError("bad magic, not a zero table");
    std::size_t off = 4;
    const auto version = get<std::uint32_t>(buf, off);
    if (version != 1)
        throw UnsupportedVersionError("unsupported zero table version " + std::to_string(version));
    const auto count = get<std::uint64_t>(buf, off);
    const auto height = get<double>(buf, off);
    if (buf.size() != off + count * 8 + 8) throw CorruptTableError("zero table length mismatch");
    const std::uint64_t want =
        crc64(reinterpret_cast<const unsigned char*>(buf.data()), buf.size() - 8);
    std::size_t crc_off = buf.size() - 8;
    const auto have = get<std::uint64_t>(buf, crc_off);
    if (want != have) throw ChecksumError("zero table checksum mismatch");
    std::vector<double> ord(count);
    for (std::uint64_t i = 0; i < count; ++i) ord[i] = get<double>(buf, off);
    for (std::uint64_t i = 1; i < count; ++i)
        if (!(ord[i] > ord[i - 1])) throw CorruptTableError("ordinates not strictly increasing");
    std::map<std::string, std::string> meta;
    meta["source"] = path;
    return ZeroTable(height, std::move(ord), true, std::move(meta));
}

}  // namespace meanlab
