#include "jmfar/synth.hpp"

#include <algorithm>
#include <cmath>

#include "jmfar/errors.hpp"
#include "jmfar/rng.hpp"

namespace jmfar {

namespace {

constexpr double kCarrierHz = 500.0;

double clamped_positive(Rng& rng, double mean, double cv, double floor_frac) {
    return mean * std::max(floor_frac, 1.0 + cv * rng.normal());
}

// Quantize to 2^-20 s (~1 us). Sums of such multiples stay exact in doubles
// over any realistic recording, so a zero-variance model yields exactly
// constant inter-event periods.
double q20(double x) { return std::nearbyint(x * 1048576.0) / 1048576.0; }

}  // namespace

ActivityModel grazing_model() {
    ActivityModel m;
    m.label = Activity::Grazing;
    m.jm_rate_hz = 1.0;
    m.period_jitter_cv = 0.25;
    m.amplitude_mean = 1.0;
    m.amplitude_cv = 0.45;
    m.duration_mean_s = 0.45;
    m.duration_cv = 0.35;
    m.long_gap_rate_per_min = 1.0;
    m.long_gap_min_s = 3.0;
    m.long_gap_max_s = 6.5;
    return m;
}

ActivityModel rumination_model() {
    ActivityModel m;
    m.label = Activity::Rumination;
    m.jm_rate_hz = 1.05;
    m.period_jitter_cv = 0.08;
    m.amplitude_mean = 0.4;
    m.amplitude_cv = 0.15;
    m.duration_mean_s = 0.42;
    m.duration_cv = 0.12;
    m.pause_period_s = 50.0;  // bolus of ~50 chews between swallowing pauses
    m.pause_len_s = 4.5;
    m.pause_jitter_s = 1.0;
    return m;
}

ActivityModel other_model() {
    ActivityModel m;
    m.label = Activity::Other;
    m.jm_rate_hz = 0.2;
    m.period_jitter_cv = 1.0;
    m.amplitude_mean = 0.7;
    m.amplitude_cv = 0.8;
    m.duration_mean_s = 0.3;
    m.duration_cv = 0.5;
    return m;
}

std::vector<JmEvent> generate_event_stream(const ActivityModel& model, double duration_s,
                                           uint32_t seed) {
    if (duration_s <= 0.0) throw InvalidInput("generate_event_stream: duration must be positive");
    if (model.jm_rate_hz <= 0.0 || model.jm_rate_hz > 100.0)
        throw InvalidInput("generate_event_stream: jm_rate_hz out of range");
    Rng rng(seed);
    const double period = 1.0 / model.jm_rate_hz;

    double next_pause = model.pause_period_s > 0.0
                            ? model.pause_period_s + model.pause_jitter_s * rng.normal()
                            : -1.0;
    double next_gap = model.long_gap_rate_per_min > 0.0
                          ? rng.exponential(60.0 / model.long_gap_rate_per_min)
                          : -1.0;

    std::vector<JmEvent> events;
    double t = q20(period * (0.5 + 0.5 * rng.uniform()));
    while (true) {
        if (next_pause >= 0.0 && t >= next_pause) {
            t += q20(model.pause_len_s);
            next_pause += model.pause_period_s + model.pause_jitter_s * rng.normal();
        }
        if (next_gap >= 0.0 && t >= next_gap) {
            t += q20(rng.uniform(model.long_gap_min_s, model.long_gap_max_s));
            next_gap = t + rng.exponential(60.0 / model.long_gap_rate_per_min);
        }

        const double p =
            q20(period * std::max(0.2, 1.0 + model.period_jitter_cv * rng.normal()));
        JmEvent ev;
        ev.timestamp_s = t;
        ev.amplitude = clamped_positive(rng, model.amplitude_mean, model.amplitude_cv, 0.05);
        ev.duration_s = std::min(
            0.9 * p, clamped_positive(rng, model.duration_mean_s, model.duration_cv, 0.3));
        if (ev.timestamp_s + ev.duration_s >= duration_s) break;
        events.push_back(ev);
        t += p;
    }
    return events;
}

EnvelopeSignal render_envelope(std::span<const JmEvent> events, double rate_hz,
                               double duration_s) {
    if (rate_hz <= 0.0 || duration_s < 0.0) throw InvalidInput("render_envelope: bad arguments");
    EnvelopeSignal env;
    env.rate_hz = rate_hz;
    env.values.assign(static_cast<std::size_t>(std::llround(duration_s * rate_hz)), 0.0);

    // Raised-cosine bump spanning [timestamp, timestamp + duration].
    for (const JmEvent& e : events) {
        const auto first = static_cast<long long>(std::ceil(e.timestamp_s * rate_hz));
        const auto last =
            static_cast<long long>(std::floor((e.timestamp_s + e.duration_s) * rate_hz));
        for (long long i = std::max(0LL, first);
             i <= last && i < static_cast<long long>(env.values.size()); ++i) {
            const double phase = (static_cast<double>(i) / rate_hz - e.timestamp_s) / e.duration_s;
            env.values[static_cast<std::size_t>(i)] +=
                e.amplitude * 0.5 * (1.0 - std::cos(2.0 * M_PI * phase));
        }
    }
    return env;
}

EnvelopeSignal add_envelope_noise(const EnvelopeSignal& env, double snr_db, uint32_t seed) {
    if (env.empty() || !std::isfinite(snr_db)) return env;
    double power = 0.0;
    for (double v : env.values) power += v * v;
    power /= static_cast<double>(env.values.size());
    if (power <= 0.0) return env;

    const double sigma = std::sqrt(power / std::pow(10.0, snr_db / 10.0));
    Rng rng(seed);
    EnvelopeSignal out = env;
    for (double& v : out.values) v = std::max(0.0, v + sigma * rng.normal());
    return out;
}

RawAudio render_audio(std::span<const JmEvent> events, int sample_rate_hz, double duration_s,
                      double gain) {
    if (sample_rate_hz <= 0) throw InvalidInput("render_audio: bad sample rate");
    RawAudio audio;
    audio.sample_rate_hz = sample_rate_hz;
    audio.samples.assign(static_cast<std::size_t>(std::llround(duration_s * sample_rate_hz)), 0);

    // The front end takes the rectified mean of the carrier (2/pi for a sine);
    // pre-scaling by pi/2 makes the recovered envelope match event amplitudes.
    const double comp = M_PI / 2.0;
    for (const JmEvent& e : events) {
        const auto first = static_cast<long long>(std::ceil(e.timestamp_s * sample_rate_hz));
        const auto last =
            static_cast<long long>(std::floor((e.timestamp_s + e.duration_s) * sample_rate_hz));
        for (long long i = std::max(0LL, first);
             i <= last && i < static_cast<long long>(audio.samples.size()); ++i) {
            const double t = static_cast<double>(i) / sample_rate_hz;
            const double phase = (t - e.timestamp_s) / e.duration_s;
            const double bump = e.amplitude * 0.5 * (1.0 - std::cos(2.0 * M_PI * phase));
            const double s = static_cast<double>(audio.samples[static_cast<std::size_t>(i)]) +
                             comp * gain * bump * std::sin(2.0 * M_PI * kCarrierHz * t);
            audio.samples[static_cast<std::size_t>(i)] =
                static_cast<int16_t>(std::clamp(std::nearbyint(s), -32768.0, 32767.0));
        }
    }
    return audio;
}

SynthRecording generate_recording(std::span<const CorpusEntry> parts, uint32_t seed,
                                  const CorpusOptions& opts) {
    if (parts.empty()) throw InvalidInput("generate_recording: no parts given");
    SynthRecording rec;
    double offset = 0.0;
    for (std::size_t p = 0; p < parts.size(); ++p) {
        const auto part_seed = mix_seed(seed, static_cast<uint32_t>(p) + 17);
        const auto events = generate_event_stream(parts[p].model, parts[p].duration_s, part_seed);
        for (JmEvent e : events) {
            e.timestamp_s += offset;
            rec.events.push_back(e);
        }
        rec.blocks.push_back({offset, offset + parts[p].duration_s, parts[p].model.label});
        offset += parts[p].duration_s;
    }
    rec.envelope = render_envelope(rec.events, opts.envelope_rate_hz, offset);
    if (opts.noise_snr_db > 0.0)
        rec.envelope = add_envelope_noise(rec.envelope, opts.noise_snr_db, mix_seed(seed, 0xa0));
    if (opts.render_audio)
        rec.audio = render_audio(rec.events, opts.audio_rate_hz, offset, opts.audio_gain);
    return rec;
}

std::vector<SynthRecording> generate_corpus(std::span<const CorpusEntry> entries, uint32_t seed,
                                            const CorpusOptions& opts) {
    if (entries.empty()) throw InvalidInput("generate_corpus: no entries given");
    std::vector<SynthRecording> out;
    out.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const CorpusEntry one[] = {entries[i]};
        out.push_back(generate_recording(one, mix_seed(seed, static_cast<uint32_t>(i)), opts));
    }
    return out;
}

}  // namespace jmfar
