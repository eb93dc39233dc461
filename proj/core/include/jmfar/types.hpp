#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace jmfar {

// Raw PCM audio, 16-bit signed, mono.
struct RawAudio {
    std::vector<int16_t> samples;
    int sample_rate_hz = 44100;

    bool empty() const { return samples.empty(); }
    double duration_s() const {
        return sample_rate_hz > 0 ? static_cast<double>(samples.size()) / sample_rate_hz : 0.0;
    }
};

// Uniformly sampled, non-negative sound envelope of one recording.
struct EnvelopeSignal {
    std::vector<double> values;
    double rate_hz = 100.0;
    double origin_time_s = 0.0;

    bool empty() const { return values.empty(); }
    double duration_s() const {
        return rate_hz > 0 ? static_cast<double>(values.size()) / rate_hz : 0.0;
    }
    double time_at(std::size_t i) const { return origin_time_s + static_cast<double>(i) / rate_hz; }
};

// One detected jaw movement.
struct JmEvent {
    double timestamp_s = 0.0;  // onset, seconds from recording start
    double amplitude = 0.0;    // peak-to-peak, envelope units
    double duration_s = 0.0;
};

enum class Activity : int { Grazing = 0, Rumination = 1, Other = 2 };
inline constexpr int kNumActivities = 3;

const char* to_string(Activity a);

// Case-insensitive parse of {grazing, rumination, other}. Throws InvalidInput.
Activity activity_from_string(const std::string& s);

// Labeled time interval; used both for ground truth and predictions.
struct ActivityBlock {
    double start_s = 0.0;
    double end_s = 0.0;
    Activity label = Activity::Other;

    double duration_s() const { return end_s - start_s; }
};

}  // namespace jmfar
