#pragma once

#include <complex>

namespace meanlab {

// Compensated (Kahan-Neumaier) accumulator. Long prime sums must come out
// identical across chunked reductions, so every reduction in the library
// funnels through this instead of a bare double.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double value) {
        const double t = sum + value;
        if (std::abs(sum) >= std::abs(value))
            comp += (sum - t) + value;
        else
            comp += (value - t) + sum;
        sum = t;
    }
    KahanSum& operator+=(double value) {
        add(value);
        return *this;
    }
    // Merges another compensated partial; used by ordered chunk reductions.
    void merge(const KahanSum& other) {
        add(other.sum);
        comp += other.comp;
    }
    double result() const { return sum + comp; }
};

struct KahanComplexSum {
    KahanSum re, im;

    void add(std::complex<double> z) {
        re.add(z.real());
        im.add(z.imag());
    }
    KahanComplexSum& operator+=(std::complex<double> z) {
        add(z);
        return *this;
    }
    void merge(const KahanComplexSum& other) {
        re.merge(other.re);
        im.merge(other.im);
    }
    std::complex<double> result() const { return {re.result(), im.result()}; }
};

}  // namespace meanlab
