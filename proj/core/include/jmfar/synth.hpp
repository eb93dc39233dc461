#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "jmfar/frontend.hpp"
#include "jmfar/types.hpp"

namespace jmfar {

// Statistical model of one activity's jaw-movement stream. Defaults below are
// tuned so the generated classes show the expected contrasts: grazing with
// broad, high amplitudes and irregular search gaps; rumination with narrow,
// low amplitudes and periodic swallowing pauses; "other" sparse and irregular.
struct ActivityModel {
    Activity label = Activity::Other;
    double jm_rate_hz = 1.0;  // 1 / mean inter-event period
    double period_jitter_cv = 0.2;
    double amplitude_mean = 1.0;
    double amplitude_cv = 0.3;
    double duration_mean_s = 0.4;
    double duration_cv = 0.2;
    // Periodic pauses (rumination swallowing-regurgitation). 0 disables.
    double pause_period_s = 0.0;
    double pause_len_s = 0.0;
    double pause_jitter_s = 0.0;
    // Poisson long gaps (grazing feed search), uniform length in [min, max].
    double long_gap_rate_per_min = 0.0;
    double long_gap_min_s = 3.0;
    double long_gap_max_s = 10.0;
};

ActivityModel grazing_model();
ActivityModel rumination_model();
ActivityModel other_model();

// Deterministic per seed; empirical statistics match the model up to sampling
// error.
std::vector<JmEvent> generate_event_stream(const ActivityModel& model, double duration_s,
                                           uint32_t seed);

// Each event becomes a raised-cosine bump of the event's amplitude and
// duration; overlapping bumps superpose.
EnvelopeSignal render_envelope(std::span<const JmEvent> events, double rate_hz,
                               double duration_s);

// Additive white Gaussian noise at the given SNR (relative to the envelope's
// own power), clamped at zero. Infinite SNR returns the input unchanged.
EnvelopeSignal add_envelope_noise(const EnvelopeSignal& env, double snr_db, uint32_t seed);

// Bump train modulating a fixed carrier tone, compensated so the front-end
// envelope amplitude matches the event amplitude times `gain`.
RawAudio render_audio(std::span<const JmEvent> events, int sample_rate_hz, double duration_s,
                      double gain);

struct SynthRecording {
    RawAudio audio;  // empty unless audio rendering was requested
    EnvelopeSignal envelope;
    std::vector<JmEvent> events;       // ground truth
    std::vector<ActivityBlock> blocks; // ground truth, tiles the recording
};

struct CorpusEntry {
    ActivityModel model;
    double duration_s = 300.0;
};

struct CorpusOptions {
    double envelope_rate_hz = 100.0;
    double noise_snr_db = 0.0;    // <= 0 disables noise
    bool render_audio = false;
    int audio_rate_hz = 8000;
    double audio_gain = 6000.0;   // int16 full-scale fraction per amplitude unit
};

// Concatenates the parts into a single recording; one ground-truth block per
// part, blocks tile the recording.
SynthRecording generate_recording(std::span<const CorpusEntry> parts, uint32_t seed,
                                  const CorpusOptions& opts = {});

// One recording per entry, deterministic per seed.
std::vector<SynthRecording> generate_corpus(std::span<const CorpusEntry> entries, uint32_t seed,
                                            const CorpusOptions& opts = {});

}  // namespace jmfar
