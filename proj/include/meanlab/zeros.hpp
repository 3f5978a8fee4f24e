#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace meanlab {

// Certified table of critical-line zero ordinates in (14, height].
class ZeroTable {
  public:
    ZeroTable() = default;
    ZeroTable(double height, std::vector<double> ordinates, bool certified,
              std::map<std::string, std::string> meta = {});

    double height() const { return height_; }
    bool certified() const { return certified_; }
    const std::vector<double>& ordinates() const { return ordinates_; }
    const std::map<std::string, std::string>& meta() const { return meta_; }

    // N(t): number of tabulated ordinates <= t.
    std::size_t count_below(double t) const;
    // Distance from t to the nearest tabulated ordinate.
    double nearest_gap(double t) const;

    void require_coverage(double t, const char* who) const;

  private:
    double height_ = 0.0;
    std::vector<double> ordinates_;
    bool certified_ = false;
    std::map<std::string, std::string> meta_;
};

// Options for the zero locator.
struct LocateOptions {
    int max_subdivision = 20;   // halvings per Gram interval
    double bisect_tol = 1e-10;  // absolute bracket width target
};

// Gram-point bracketing of sign changes of Z with Turing-style count
// certification against N(height). Throws CertificationError (message lists
// the unresolved Gram blocks) when counts cannot be reconciled.
ZeroTable locate_zeros(double height, const LocateOptions& opts = {});

// Montgomery pair correlation
//   F(u,T) = (2pi/(T log T)) sum_{0<g1,g2<=T} T^{iu(g1-g2)} w(g1-g2),
//   w(x) = 4/(4+x^2).
// Exact evaluation through the factorization T^{iu(g1-g2)} = z1 conj(z2);
// real and even in u by construction.
double pair_correlation_F(double u, const ZeroTable& zeros, double T);

// Plain O(n^2) sum with per-pair complex exponentials; the cross-check path.
std::complex<double> pair_correlation_F_reference(double u, const ZeroTable& zeros, double T);

// Banded truncation at |g1-g2| <= band; `tail_bound` is the rigorous
// absolute bound w(band) * (skipped pair count) * prefactor.
struct BandedF {
    double value;
    double tail_bound;
};
BandedF pair_correlation_F_banded(double u, const ZeroTable& zeros, double T, double band);

// int_b^{b+1} F(u,T) du, composite Simpson with `intervals` subintervals.
double F_unit_integral(double b, const ZeroTable& zeros, double T, int intervals = 128);

// Binary zero-table file: "ZTBL", u32 version, u64 count, f64 height,
// count x f64 ascending ordinates, trailing CRC64. Little-endian.
void save_table(const ZeroTable& zeros, const std::string& path);
ZeroTable load_table(const std::string& path);

}  // namespace meanlab
