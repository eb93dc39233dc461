#include "jmfar/features.hpp"

#include <algorithm>
#include <cmath>

#include "jmfar/errors.hpp"

namespace jmfar {

namespace {

constexpr double kTachogramGridHz = 4.0;
constexpr double kEnvelopeBandLoHz = 1.0;
constexpr double kEnvelopeBandHiHz = 1.5;
constexpr double kTachBandLoHz = 0.017;
constexpr double kTachBandHiHz = 0.020;
constexpr double kTachWideLoHz = 0.0;
constexpr double kTachWideHiHz = 0.02;
constexpr double kLongIntervalMinS = 3.0;
constexpr double kLongIntervalMaxS = 10.0;

bool mark(bool* degenerate) {
    if (degenerate) *degenerate = true;
    return true;
}

// |X_k|^2 of the N-point DFT via Goertzel.
double goertzel_power(std::span<const double> x, std::size_t k) {
    const double w = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(x.size());
    const double coeff = 2.0 * std::cos(w);
    double s1 = 0.0, s2 = 0.0;
    for (double v : x) {
        const double s0 = v + coeff * s1 - s2;
        s2 = s1;
        s1 = s0;
    }
    return s1 * s1 + s2 * s2 - coeff * s1 * s2;
}

double amplitude_db_step(double a_from, double a_to) {
    return std::abs(20.0 * std::log10(a_to / a_from));
}

std::vector<double> amplitudes_of(std::span<const JmEvent> events) {
    std::vector<double> a;
    a.reserve(events.size());
    for (const JmEvent& e : events) {
        if (e.amplitude <= 0.0) throw InvalidEvent("shimmer: event amplitude must be positive");
        a.push_back(e.amplitude);
    }
    return a;
}

double population_std(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    double mean = 0.0;
    for (double v : xs) mean += v;
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double v : xs) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(xs.size()));
}

// Five-point perturbation quotient numerator term, written as a sum of
// differences so constant sequences give exactly zero.
double five_point_deviation(std::span<const double> v, std::size_t c) {
    double acc = 0.0;
    for (std::size_t j = c - 2; j <= c + 2; ++j) acc += v[c] - v[j];
    return std::abs(acc / 5.0);
}

}  // namespace

std::string feature_name(int slot) { return "f" + std::to_string(feature_number(slot)); }

FeatureMask variant_mask(Variant v) {
    FeatureMask m{};
    switch (v) {
        case Variant::Jmfar:
            m.fill(true);
            break;
        case Variant::JmfarNs:
            m.fill(true);
            m[feature_slot(13)] = false;
            m[feature_slot(23)] = false;
            m[feature_slot(24)] = false;
            break;
        case Variant::JmfarSel:
            for (int f : {6, 7, 8, 11, 12, 13, 15, 17, 18, 19, 20, 22}) m[feature_slot(f)] = true;
            break;
    }
    return m;
}

int mask_active_count(const FeatureMask& m) {
    return static_cast<int>(std::count(m.begin(), m.end(), true));
}

FeatureMask mask_from_name(const std::string& name) {
    if (name == "jmfar") return variant_mask(Variant::Jmfar);
    if (name == "jmfar-sel") return variant_mask(Variant::JmfarSel);
    if (name == "jmfar-ns") return variant_mask(Variant::JmfarNs);
    if (name.size() == kNumFeatures &&
        std::all_of(name.begin(), name.end(), [](char c) { return c == '0' || c == '1'; })) {
        FeatureMask m{};
        for (int i = 0; i < kNumFeatures; ++i) m[i] = name[i] == '1';
        return m;
    }
    throw ConfigError("unknown variant or mask: " + name);
}

std::string mask_to_string(const FeatureMask& m) {
    std::string s(kNumFeatures, '0');
    for (int i = 0; i < kNumFeatures; ++i)
        if (m[i]) s[i] = '1';
    return s;
}

std::vector<double> FeatureVector::active_values() const {
    std::vector<double> out;
    out.reserve(kNumFeatures);
    for (int i = 0; i < kNumFeatures; ++i)
        if (mask[i]) out.push_back(values[i]);
    return out;
}

Tachogram make_tachogram(std::span<const JmEvent> events) {
    Tachogram t;
    t.times_s.reserve(events.size());
    for (const JmEvent& e : events) t.times_s.push_back(e.timestamp_s);
    if (t.times_s.size() >= 2) {
        t.intervals_s.reserve(t.times_s.size() - 1);
        for (std::size_t i = 0; i + 1 < t.times_s.size(); ++i) {
            const double dt = t.times_s[i + 1] - t.times_s[i];
            if (dt <= 0.0) throw InvalidInput("tachogram: timestamps must be strictly increasing");
            t.intervals_s.push_back(dt);
        }
    }
    return t;
}

double jm_rate(const SegmentBuffer& buf) {
    if (buf.segment_len_s <= 0.0) throw InvalidInput("jm_rate: segment length must be positive");
    return static_cast<double>(buf.events.size()) / buf.segment_len_s;
}

MomentStats moment_stats(std::span<const double> xs) {
    MomentStats st;
    if (xs.empty()) {
        st.degenerate = true;
        return st;
    }
    // Single pass over values shifted by the first element; the shift removes
    // the large common offset before the power sums, central moments are
    // unaffected.
    const double x0 = xs[0];
    const double n = static_cast<double>(xs.size());
    double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
    for (double x : xs) {
        const double d = x - x0;
        const double d2 = d * d;
        s1 += d;
        s2 += d2;
        s3 += d2 * d;
        s4 += d2 * d2;
    }
    const double m = s1 / n;
    const double m2 = s2 / n - m * m;
    const double m3 = s3 / n - 3.0 * m * (s2 / n) + 2.0 * m * m * m;
    const double m4 =
        s4 / n - 4.0 * m * (s3 / n) + 6.0 * m * m * (s2 / n) - 3.0 * m * m * m * m;

    st.mean = x0 + m;
    st.stddev = m2 > 0.0 ? std::sqrt(m2) : 0.0;
    if (st.stddev > 0.0) {
        st.skewness = m3 / (m2 * st.stddev);
        st.kurtosis = m4 / (m2 * m2);
    } else {
        st.degenerate = true;
    }
    return st;
}

double band_energy_ratio(std::span<const double> x, double rate_hz, double f_lo, double f_hi,
                         bool remove_mean) {
    const std::size_t n = x.size();
    if (n < 2 || rate_hz <= 0.0) return 0.0;

    std::vector<double> centered;
    std::span<const double> sig = x;
    if (remove_mean) {
        double mean = 0.0;
        for (double v : x) mean += v;
        mean /= static_cast<double>(n);
        centered.resize(n);
        for (std::size_t i = 0; i < n; ++i) centered[i] = x[i] - mean;
        sig = centered;
    }

    // Parseval: sum_k |X_k|^2 == N * sum_n x_n^2.
    double sum_sq = 0.0;
    for (double v : sig) sum_sq += v * v;
    const double total = static_cast<double>(n) * sum_sq;
    if (total <= 0.0) return 0.0;

    // Bins by center frequency k*rate/N, band edges inclusive.
    const double bin_hz = rate_hz / static_cast<double>(n);
    const std::size_t k_max = n / 2;
    auto k_lo = static_cast<long long>(std::ceil(f_lo / bin_hz - 1e-9));
    auto k_hi = static_cast<long long>(std::floor(f_hi / bin_hz + 1e-9));
    k_lo = std::max(k_lo, 0LL);
    k_hi = std::min(k_hi, static_cast<long long>(k_max));

    double band = 0.0;
    for (long long k = k_lo; k <= k_hi; ++k) {
        if (k == 0) {
            band += goertzel_power(sig, 0);
        } else {
            const bool nyquist = (n % 2 == 0) && (k == static_cast<long long>(k_max));
            band += (nyquist ? 1.0 : 2.0) * goertzel_power(sig, static_cast<std::size_t>(k));
        }
    }
    return std::clamp(band / total, 0.0, 1.0);
}

double envelope_band_energy(const EnvelopeSignal& env, bool* degenerate) {
    if (env.rate_hz < 3.0) throw ConfigError("envelope_band_energy: rate below 3 Hz");
    if (env.values.size() < 2) {
        mark(degenerate);
        return 0.0;
    }
    double mean = 0.0;
    for (double v : env.values) mean += v;
    mean /= static_cast<double>(env.values.size());
    double ss = 0.0;
    for (double v : env.values) ss += (v - mean) * (v - mean);
    if (ss <= 0.0) {
        mark(degenerate);
        return 0.0;
    }
    return band_energy_ratio(env.values, env.rate_hz, kEnvelopeBandLoHz, kEnvelopeBandHiHz,
                             /*remove_mean=*/true);
}

double jitter_abs(const Tachogram& t, bool* degenerate) {
    const auto& p = t.intervals_s;
    if (p.size() < 2) {
        mark(degenerate);
        return 0.0;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) acc += std::abs(p[i] - p[i + 1]);
    return acc / static_cast<double>(p.size() - 1);
}

double jitter_rel(const Tachogram& t, bool* degenerate) {
    const auto& p = t.intervals_s;
    if (p.size() < 2) {
        mark(degenerate);
        return 0.0;
    }
    double mean = 0.0;
    for (double v : p) mean += v;
    mean /= static_cast<double>(p.size());
    if (mean <= 0.0) {
        mark(degenerate);
        return 0.0;
    }
    return jitter_abs(t, degenerate) / mean;
}

double jitter_ppq5(const Tachogram& t, bool* degenerate) {
    const auto& p = t.intervals_s;
    if (p.size() < 5) {
        mark(degenerate);
        return 0.0;
    }
    double mean = 0.0;
    for (double v : p) mean += v;
    mean /= static_cast<double>(p.size());
    if (mean <= 0.0) {
        mark(degenerate);
        return 0.0;
    }
    double acc = 0.0;
    for (std::size_t c = 2; c + 2 < p.size(); ++c) acc += five_point_deviation(p, c);
    return acc / static_cast<double>(p.size() - 4) / mean;
}

double jitter_std(const Tachogram& t, bool* degenerate) {
    const auto& p = t.intervals_s;
    if (p.size() < 2) {
        mark(degenerate);
        return 0.0;
    }
    std::vector<double> diffs;
    diffs.reserve(p.size() - 1);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) diffs.push_back(std::abs(p[i] - p[i + 1]));
    return population_std(diffs);
}

double shimmer_abs(std::span<const JmEvent> events, bool* degenerate) {
    const std::vector<double> a = amplitudes_of(events);
    if (a.size() < 2) {
        mark(degenerate);
        return 0.0;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) acc += amplitude_db_step(a[i], a[i + 1]);
    return acc / static_cast<double>(a.size() - 1);
}

double shimmer_rel(std::span<const JmEvent> events, bool* degenerate) {
    const std::vector<double> a = amplitudes_of(events);
    if (a.size() < 2) {
        mark(degenerate);
        return 0.0;
    }
    double mean = 0.0;
    for (double v : a) mean += v;
    mean /= static_cast<double>(a.size());
    return shimmer_abs(events, degenerate) / mean;
}

double shimmer_apq5(std::span<const JmEvent> events, bool* degenerate) {
    const std::vector<double> a = amplitudes_of(events);
    if (a.size() < 5) {
        mark(degenerate);
        return 0.0;
    }
    double mean = 0.0;
    for (double v : a) mean += v;
    mean /= static_cast<double>(a.size());
    double acc = 0.0;
    for (std::size_t c = 2; c + 2 < a.size(); ++c) acc += five_point_deviation(a, c);
    return acc / static_cast<double>(a.size() - 4) / mean;
}

double shimmer_std(std::span<const JmEvent> events, bool* degenerate) {
    const std::vector<double> a = amplitudes_of(events);
    if (a.size() < 2) {
        mark(degenerate);
        return 0.0;
    }
    std::vector<double> steps;
    steps.reserve(a.size() - 1);
    for (std::size_t i = 0; i + 1 < a.size(); ++i)
        steps.push_back(amplitude_db_step(a[i], a[i + 1]));
    return population_std(steps);
}

double long_interval_rate(const Tachogram& t, double segment_len_s) {
    if (segment_len_s <= 0.0)
        throw InvalidInput("long_interval_rate: segment length must be positive");
    long count = 0;
    for (double v : t.intervals_s)
        if (v >= kLongIntervalMinS && v <= kLongIntervalMaxS) ++count;
    return static_cast<double>(count) / (segment_len_s / 60.0);
}

std::vector<double> interpolate_tachogram(const Tachogram& t, double segment_start_s,
                                          double segment_len_s, double grid_hz) {
    const auto n_grid = static_cast<std::size_t>(std::lround(segment_len_s * grid_hz));
    std::vector<double> grid(n_grid, 0.0);
    const std::size_t m = t.intervals_s.size();
    if (m == 0) return grid;
    const double t_first = t.times_s.front();
    const double t_last = t.times_s[m - 1];

    std::size_t seg = 0;
    for (std::size_t j = 0; j < n_grid; ++j) {
        const double tj = segment_start_s + static_cast<double>(j) / grid_hz;
        if (tj < t_first || tj > t_last) continue;
        while (seg + 1 < m && t.times_s[seg + 1] < tj) ++seg;
        const double t0 = t.times_s[seg];
        if (tj <= t0 || seg + 1 >= m) {
            grid[j] = t.intervals_s[seg];
        } else {
            const double t1 = t.times_s[seg + 1];
            const double w = (tj - t0) / (t1 - t0);
            grid[j] = (1.0 - w) * t.intervals_s[seg] + w * t.intervals_s[seg + 1];
        }
    }
    return grid;
}

std::pair<double, double> tachogram_band_energies(const Tachogram& t, double segment_start_s,
                                                  double segment_len_s, bool* degenerate) {
    if (t.times_s.size() < 8 || t.intervals_s.size() < 2) {
        mark(degenerate);
        return {0.0, 0.0};
    }
    const auto n_grid = static_cast<std::size_t>(std::lround(segment_len_s * kTachogramGridHz));
    if (n_grid < 4) {
        mark(degenerate);
        return {0.0, 0.0};
    }

    std::vector<double> grid =
        interpolate_tachogram(t, segment_start_s, segment_len_s, kTachogramGridHz);

    double ss = 0.0;
    for (double v : grid) ss += v * v;
    if (ss <= 0.0) {
        mark(degenerate);
        return {0.0, 0.0};
    }

    // The f23 band is only 3 mHz wide; the natural bin spacing of the grid
    // (1/300 Hz) cannot resolve it, so the transform is zero-padded until a
    // ~0.018 Hz modulation line lands inside the band's bins.
    std::size_t nfft = 2048;
    while (nfft < 2 * grid.size()) nfft <<= 1;
    grid.resize(nfft, 0.0);

    // Spectrum with the mean retained: the near-1 s offset is informative.
    const double narrow = band_energy_ratio(grid, kTachogramGridHz, kTachBandLoHz, kTachBandHiHz,
                                            /*remove_mean=*/false);
    const double wide = band_energy_ratio(grid, kTachogramGridHz, kTachWideLoHz, kTachWideHiHz,
                                          /*remove_mean=*/false);
    return {narrow, wide};
}

FeatureVector extract_features(const SegmentBuffer& buf, const FeatureMask& mask) {
    FeatureVector fv;
    fv.mask = mask;
    fv.segment_start_s = buf.segment_start_s;
    if (buf.partial) fv.flags |= flags::kPartialSegment;

    auto active = [&](int fnum) { return mask[feature_slot(fnum)]; };
    auto set = [&](int fnum, double v) { fv.values[feature_slot(fnum)] = v; };

    if (active(4)) set(4, jm_rate(buf));

    if (active(5) || active(6) || active(7) || active(8)) {
        std::vector<double> amps;
        amps.reserve(buf.events.size());
        for (const JmEvent& e : buf.events) amps.push_back(e.amplitude);
        const MomentStats st = moment_stats(amps);
        if (st.degenerate) fv.flags |= flags::kAmplitudeStats;
        if (active(5)) set(5, st.mean);
        if (active(6)) set(6, st.stddev);
        if (active(7)) set(7, st.skewness);
        if (active(8)) set(8, st.kurtosis);
    }

    if (active(9) || active(10) || active(11) || active(12)) {
        std::vector<double> durs;
        durs.reserve(buf.events.size());
        for (const JmEvent& e : buf.events) durs.push_back(e.duration_s);
        const MomentStats st = moment_stats(durs);
        if (st.degenerate) fv.flags |= flags::kDurationStats;
        if (active(9)) set(9, st.mean);
        if (active(10)) set(10, st.stddev);
        if (active(11)) set(11, st.skewness);
        if (active(12)) set(12, st.kurtosis);
    }

    if (active(13)) {
        bool deg = false;
        set(13, envelope_band_energy(buf.envelope, &deg));
        if (deg) fv.flags |= flags::kEnvelopeSpectrum;
    }

    const bool needs_tachogram = active(14) || active(15) || active(16) || active(17) ||
                                 active(22) || active(23) || active(24);
    if (needs_tachogram) {
        const Tachogram tach = make_tachogram(buf.events);
        bool jitter_deg = false;
        if (active(14)) set(14, jitter_abs(tach, &jitter_deg));
        if (active(15)) set(15, jitter_rel(tach, &jitter_deg));
        if (active(16)) set(16, jitter_ppq5(tach, &jitter_deg));
        if (active(17)) set(17, jitter_std(tach, &jitter_deg));
        if (jitter_deg) fv.flags |= flags::kJitter;

        if (active(22)) set(22, long_interval_rate(tach, buf.segment_len_s));

        if (active(23) || active(24)) {
            bool deg = false;
            const auto [narrow, wide] =
                tachogram_band_energies(tach, buf.segment_start_s, buf.segment_len_s, &deg);
            if (active(23)) set(23, narrow);
            if (active(24)) set(24, wide);
            if (deg) fv.flags |= flags::kTachogram;
        }
    }

    if (active(18) || active(19) || active(20) || active(21)) {
        bool shimmer_deg = false;
        if (active(18)) set(18, shimmer_abs(buf.events, &shimmer_deg));
        if (active(19)) set(19, shimmer_rel(buf.events, &shimmer_deg));
        if (active(20)) set(20, shimmer_apq5(buf.events, &shimmer_deg));
        if (active(21)) set(21, shimmer_std(buf.events, &shimmer_deg));
        if (shimmer_deg) fv.flags |= flags::kShimmer;
    }

    return fv;
}

}  // namespace jmfar
