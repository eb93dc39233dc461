#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jmfar/types.hpp"

namespace jmfar {

// Segment feature set f4..f24, stored in 21 slots (slot i holds f(i+4)).
inline constexpr int kNumFeatures = 21;

using FeatureMask = std::array<bool, kNumFeatures>;

constexpr int feature_number(int slot) { return slot + 4; }
constexpr int feature_slot(int number) { return number - 4; }
std::string feature_name(int slot);  // "f4".."f24"

enum class Variant { Jmfar, JmfarSel, JmfarNs };

FeatureMask variant_mask(Variant v);
int mask_active_count(const FeatureMask& m);

// Accepts "jmfar", "jmfar-sel", "jmfar-ns" or a 21-character bit string
// (slot order f4..f24). Throws ConfigError on anything else.
FeatureMask mask_from_name(const std::string& name);
std::string mask_to_string(const FeatureMask& m);

// Degenerate-segment flags. A flagged vector is still a valid classifier
// input; silent or near-empty segments are normal.
namespace flags {
inline constexpr uint32_t kAmplitudeStats = 1u << 0;
inline constexpr uint32_t kDurationStats = 1u << 1;
inline constexpr uint32_t kEnvelopeSpectrum = 1u << 2;
inline constexpr uint32_t kJitter = 1u << 3;
inline constexpr uint32_t kShimmer = 1u << 4;
inline constexpr uint32_t kTachogram = 1u << 5;
inline constexpr uint32_t kPartialSegment = 1u << 6;
}  // namespace flags

struct FeatureVector {
    std::array<double, kNumFeatures> values{};  // inactive slots stay exactly 0
    FeatureMask mask{};
    uint32_t flags = 0;
    double segment_start_s = 0.0;

    // Values of active slots only, in slot order; this is the classifier input.
    std::vector<double> active_values() const;
};

// Everything known about one analysis segment.
struct SegmentBuffer {
    std::vector<JmEvent> events;   // events with onset inside the segment
    EnvelopeSignal envelope;       // slice covering the segment
    double segment_start_s = 0.0;
    double segment_len_s = 300.0;
    bool partial = false;          // trailing segment shorter than nominal length
};

// Inter-event periods indexed by event time.
struct Tachogram {
    std::vector<double> times_s;      // all event timestamps
    std::vector<double> intervals_s;  // times_s[i+1] - times_s[i]
};

Tachogram make_tachogram(std::span<const JmEvent> events);

struct MomentStats {
    double mean = 0.0;
    double stddev = 0.0;    // population
    double skewness = 0.0;  // m3 / sigma^3
    double kurtosis = 0.0;  // m4 / sigma^4, non-excess
    bool degenerate = false;
};

// f4: events per second.
double jm_rate(const SegmentBuffer& buf);

// f5-f8 on amplitudes, f9-f12 on durations.
MomentStats moment_stats(std::span<const double> xs);

// f13: energy in [1.0, 1.5] Hz relative to total energy of the mean-removed
// envelope. Returns 0 and sets *degenerate for a zero-energy envelope.
double envelope_band_energy(const EnvelopeSignal& env, bool* degenerate = nullptr);

// f14-f17. Jitter variants need at least 3 events (PPQ5: 6); below that they
// return 0 and set *degenerate.
double jitter_abs(const Tachogram& t, bool* degenerate = nullptr);
double jitter_rel(const Tachogram& t, bool* degenerate = nullptr);
double jitter_ppq5(const Tachogram& t, bool* degenerate = nullptr);
double jitter_std(const Tachogram& t, bool* degenerate = nullptr);

// f18-f21. Shimmer variants need at least 2 events (APQ5: 5). Any event with
// amplitude <= 0 raises InvalidEvent.
double shimmer_abs(std::span<const JmEvent> events, bool* degenerate = nullptr);
double shimmer_rel(std::span<const JmEvent> events, bool* degenerate = nullptr);
double shimmer_apq5(std::span<const JmEvent> events, bool* degenerate = nullptr);
double shimmer_std(std::span<const JmEvent> events, bool* degenerate = nullptr);

// f22: intervals with 3 s <= T <= 10 s (closed bounds), per minute of segment.
double long_interval_rate(const Tachogram& t, double segment_len_s);

// Linear interpolation of the inter-event periods onto a uniform grid
// spanning the segment; zero outside the event span. Each interval is
// anchored at its starting event.
std::vector<double> interpolate_tachogram(const Tachogram& t, double segment_start_s,
                                          double segment_len_s, double grid_hz);

// f23, f24: relative energies of the tachogram spectrum in [0.017, 0.020] Hz
// and [0.0, 0.02] Hz, computed from the 4 Hz interpolated grid with the mean
// retained and the transform zero-padded for sub-band resolution. Needs at
// least 8 events.
std::pair<double, double> tachogram_band_energies(const Tachogram& t, double segment_start_s,
                                                  double segment_len_s,
                                                  bool* degenerate = nullptr);

// Computes exactly the masked features; unmasked slots are zero. Degenerate
// sub-results set flags, never abort.
FeatureVector extract_features(const SegmentBuffer& buf, const FeatureMask& mask);

// Relative spectral energy of x in [f_lo, f_hi] (band edges inclusive, bins
// assigned by center frequency). Shared by f13 and the tachogram features;
// exposed for reuse and testing.
double band_energy_ratio(std::span<const double> x, double rate_hz, double f_lo, double f_hi,
                         bool remove_mean);

}  // namespace jmfar
