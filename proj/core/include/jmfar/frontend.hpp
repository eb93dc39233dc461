#pragma once

#include <vector>

#include "jmfar/types.hpp"

namespace jmfar {

// Signal front end: conditioning, envelope extraction and jaw-movement
// candidate detection with a time-varying threshold.
struct DetectorConfig {
    double decimated_rate_hz = 100.0;   // envelope storage rate
    double lowpass_cutoff_hz = 10.0;    // envelope smoothing cutoff
    double threshold_alpha = 1.0;       // multiplier on the running envelope mean
    double threshold_floor = 0.05;      // additive floor, envelope units
    double min_event_duration_s = 0.1;
    double refractory_s = 0.3;          // minimum separation between event onsets
    double mean_window_s = 10.0;        // horizon of the running-mean tracker
};

// First-order DC blocker; removes offset and slow drift. Same length and rate
// as the input.
RawAudio detrend(const RawAudio& audio);

// Full-wave rectification, 2nd-order low-pass at cfg.lowpass_cutoff_hz, then
// decimation to cfg.decimated_rate_hz by averaging over each factor-length
// window. Output values are clamped at zero.
EnvelopeSignal compute_envelope(const RawAudio& audio, const DetectorConfig& cfg);

// Contiguous supra-threshold runs of the envelope become events. The threshold
// is threshold_alpha * (exponential running mean) + threshold_floor. Runs
// shorter than min_event_duration_s are dropped; a run starting within
// refractory_s of the previous onset is merged into that event. Event
// amplitude is max - min of the envelope over the event span.
std::vector<JmEvent> detect_events(const EnvelopeSignal& env, const DetectorConfig& cfg);

}  // namespace jmfar
