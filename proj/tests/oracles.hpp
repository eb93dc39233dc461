// Independent reference implementations used as test oracles. Everything here
// evaluates the defining formulas literally (double loops, explicit index
// ranges, naive DFT) and stays decoupled from the library's computation paths.
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace oracle {

// ---- moments: two-pass, mean-centered, population convention ---------------

struct Moments {
    double mean = 0, stddev = 0, skewness = 0, kurtosis = 0;
};

inline Moments moments(std::span<const double> xs) {
    Moments m;
    const std::size_t n = xs.size();
    if (n == 0) return m;
    for (double x : xs) m.mean += x;
    m.mean /= static_cast<double>(n);
    double m2 = 0, m3 = 0, m4 = 0;
    for (double x : xs) {
        const double d = x - m.mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= static_cast<double>(n);
    m3 /= static_cast<double>(n);
    m4 /= static_cast<double>(n);
    m.stddev = std::sqrt(m2);
    if (m.stddev > 0) {
        m.skewness = m3 / (m2 * m.stddev);
        m.kurtosis = m4 / (m2 * m2);
    }
    return m;
}

// ---- jitter on inter-event periods T (1-based formulas written literally) --

inline double mean_of(std::span<const double> v) {
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double jitter_abs(std::span<const double> T) {
    const std::size_t N = T.size();
    double s = 0;
    for (std::size_t i = 1; i <= N - 1; ++i) s += std::abs(T[i - 1] - T[i]);
    return s / static_cast<double>(N - 1);
}

inline double jitter_rel(std::span<const double> T) { return jitter_abs(T) / mean_of(T); }

inline double jitter_ppq5(std::span<const double> T) {
    const std::size_t N = T.size();
    double s = 0;
    for (std::size_t i = 3; i <= N - 2; ++i) {
        const double avg =
            (T[i - 3] + T[i - 2] + T[i - 1] + T[i] + T[i + 1]) / 5.0;  // T_{i-2}..T_{i+2}, 1-based
        s += std::abs(T[i - 1] - avg);
    }
    return s / static_cast<double>(N - 4) / mean_of(T);
}

inline double jitter_std(std::span<const double> T) {
    std::vector<double> d;
    for (std::size_t i = 0; i + 1 < T.size(); ++i) d.push_back(std::abs(T[i] - T[i + 1]));
    double mu = mean_of(d);
    double ss = 0;
    for (double x : d) ss += (x - mu) * (x - mu);
    return std::sqrt(ss / static_cast<double>(d.size()));
}

// ---- shimmer on peak-to-peak amplitudes A ----------------------------------

inline double shimmer_abs(std::span<const double> A) {
    const std::size_t N = A.size();
    double s = 0;
    for (std::size_t i = 1; i <= N - 1; ++i) s += std::abs(20.0 * std::log10(A[i] / A[i - 1]));
    return s / static_cast<double>(N - 1);
}

inline double shimmer_rel(std::span<const double> A) { return shimmer_abs(A) / mean_of(A); }

inline double shimmer_apq5(std::span<const double> A) {
    const std::size_t N = A.size();
    double s = 0;
    for (std::size_t i = 3; i <= N - 2; ++i) {
        const double avg = (A[i - 3] + A[i - 2] + A[i - 1] + A[i] + A[i + 1]) / 5.0;
        s += std::abs(A[i - 1] - avg);
    }
    return s / static_cast<double>(N - 4) / mean_of(A);
}

inline double shimmer_std(std::span<const double> A) {
    std::vector<double> d;
    for (std::size_t i = 0; i + 1 < A.size(); ++i)
        d.push_back(std::abs(20.0 * std::log10(A[i + 1] / A[i])));
    double mu = mean_of(d);
    double ss = 0;
    for (double x : d) ss += (x - mu) * (x - mu);
    return std::sqrt(ss / static_cast<double>(d.size()));
}

// ---- long-interval rate (f22) ----------------------------------------------

inline double long_interval_rate(std::span<const double> T, double segment_len_s) {
    long c = 0;
    for (double t : T)
        if (t >= 3.0 && t <= 10.0) ++c;
    return static_cast<double>(c) / (segment_len_s / 60.0);
}

// ---- spectra: naive DFT bin powers -----------------------------------------

inline double dft_bin_power(std::span<const double> x, std::size_t k) {
    std::complex<double> acc(0, 0);
    const double w = -2.0 * M_PI * static_cast<double>(k) / static_cast<double>(x.size());
    for (std::size_t n = 0; n < x.size(); ++n)
        acc += x[n] * std::complex<double>(std::cos(w * n), std::sin(w * n));
    return std::norm(acc);
}

// Relative band energy with inclusive edges, bins by center frequency. The
// band side is a naive DFT; the total side uses the time-domain energy.
inline double band_energy(std::span<const double> x, double rate_hz, double lo, double hi,
                          bool remove_mean) {
    std::vector<double> sig(x.begin(), x.end());
    if (remove_mean) {
        const double mu = mean_of(sig);
        for (double& v : sig) v -= mu;
    }
    double total = 0;
    for (double v : sig) total += v * v;
    total *= static_cast<double>(sig.size());
    if (total <= 0) return 0;

    const double bin_hz = rate_hz / static_cast<double>(sig.size());
    const std::size_t k_max = sig.size() / 2;
    double band = 0;
    for (std::size_t k = 0; k <= k_max; ++k) {
        const double f = static_cast<double>(k) * bin_hz;
        if (f < lo - 1e-12 || f > hi + 1e-12) continue;
        const bool half = k == 0 || (sig.size() % 2 == 0 && k == k_max);
        band += (half ? 1.0 : 2.0) * dft_bin_power(sig, k);
    }
    return band / total;
}

// ---- frame scoring ----------------------------------------------------------

struct PRF {
    double precision = 0, recall = 0, f1 = 0;
    long support = 0;
};

inline PRF prf_for_class(std::span<const int> truth, std::span<const int> pred, int cls) {
    long tp = 0, fp = 0, fn = 0;
    PRF r;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] == cls) ++r.support;
        if (truth[i] == cls && pred[i] == cls) ++tp;
        if (truth[i] != cls && pred[i] == cls) ++fp;
        if (truth[i] == cls && pred[i] != cls) ++fn;
    }
    r.precision = tp + fp > 0 ? double(tp) / double(tp + fp) : 0.0;
    r.recall = tp + fn > 0 ? double(tp) / double(tp + fn) : 0.0;
    r.f1 = r.precision + r.recall > 0 ? 2 * r.precision * r.recall / (r.precision + r.recall) : 0.0;
    return r;
}

}  // namespace oracle
