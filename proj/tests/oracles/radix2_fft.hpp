#pragma once
// Textbook iterative radix-2 FFT and a Welch estimator on top of it. Kept
// independent of the library's FFT backend.

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace oracle {

inline void fft_inplace(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("radix-2 FFT needs a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = -2.0 * M_PI / static_cast<double>(len);
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> w(std::cos(angle * k), std::sin(angle * k));
                const auto u = a[i + k];
                const auto v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

struct WelchResult {
    std::vector<double> frequency;
    std::vector<double> density;
};

// Hann window, 50% overlap, mean removed per segment, one-sided, DC dropped.
inline WelchResult welch(const std::vector<double>& x, double fs, std::size_t seg) {
    std::vector<double> window(seg);
    double power = 0.0;
    for (std::size_t i = 0; i < seg; ++i) {
        window[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * static_cast<double>(i) / static_cast<double>(seg));
        power += window[i] * window[i];
    }
    std::vector<double> acc(seg / 2 + 1, 0.0);
    std::size_t count = 0;
    for (std::size_t start = 0; start + seg <= x.size(); start += seg / 2) {
        double mean = 0.0;
        for (std::size_t i = 0; i < seg; ++i) mean += x[start + i];
        mean /= static_cast<double>(seg);
        std::vector<std::complex<double>> buf(seg);
        for (std::size_t i = 0; i < seg; ++i) buf[i] = (x[start + i] - mean) * window[i];
        fft_inplace(buf);
        for (std::size_t k = 0; k <= seg / 2; ++k) acc[k] += std::norm(buf[k]);
        ++count;
    }
    WelchResult r;
    for (std::size_t k = 1; k <= seg / 2; ++k) {
        const double one_sided = (k == seg / 2) ? 1.0 : 2.0;
        r.frequency.push_back(static_cast<double>(k) * fs / static_cast<double>(seg));
        r.density.push_back(one_sided * acc[k] / (static_cast<double>(count) * fs * power));
    }
    return r;
}

inline double band_mean(const WelchResult& r, double lo, double hi) {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < r.frequency.size(); ++i) {
        if (r.frequency[i] >= lo && r.frequency[i] < hi) {
            sum += r.density[i];
            ++n;
        }
    }
    return n ? sum / static_cast<double>(n) : 0.0;
}

}  // namespace oracle
