#include "jmfar/frontend.hpp"

#include <algorithm>
#include <cmath>

#include "jmfar/errors.hpp"

namespace jmfar {

namespace {

constexpr double kDetrendCutoffHz = 5.0;

int16_t clamp_i16(double v) {
    const double r = std::nearbyint(v);
    if (r > 32767.0) return 32767;
    if (r < -32768.0) return -32768;
    return static_cast<int16_t>(r);
}

// One 2nd-order low-pass section (Butterworth, direct form II transposed).
struct Biquad {
    double b0 = 1, b1 = 0, b2 = 0, a1 = 0, a2 = 0;
    double z1 = 0, z2 = 0;

    static Biquad lowpass(double fc, double fs) {
        const double w0 = 2.0 * M_PI * fc / fs;
        const double q = 1.0 / std::sqrt(2.0);
        const double alpha = std::sin(w0) / (2.0 * q);
        const double cw = std::cos(w0);
        const double a0 = 1.0 + alpha;
        Biquad f;
        f.b0 = (1.0 - cw) / 2.0 / a0;
        f.b1 = (1.0 - cw) / a0;
        f.b2 = f.b0;
        f.a1 = -2.0 * cw / a0;
        f.a2 = (1.0 - alpha) / a0;
        return f;
    }

    double process(double x) {
        const double y = b0 * x + z1;
        z1 = b1 * x - a1 * y + z2;
        z2 = b2 * x - a2 * y;
        return y;
    }
};

}  // namespace

RawAudio detrend(const RawAudio& audio) {
    if (audio.empty()) throw InvalidInput("detrend: empty audio");
    if (audio.sample_rate_hz <= 0) throw InvalidInput("detrend: non-positive sample rate");

    // y[n] = x[n] - x[n-1] + r*y[n-1]; r from a 5 Hz pole. Priming x[-1] with
    // x[0] keeps constant inputs at exactly zero from the first sample.
    const double r = std::exp(-2.0 * M_PI * kDetrendCutoffHz / audio.sample_rate_hz);
    RawAudio out;
    out.sample_rate_hz = audio.sample_rate_hz;
    out.samples.resize(audio.samples.size());

    double prev_x = audio.samples[0];
    double prev_y = 0.0;
    for (std::size_t i = 0; i < audio.samples.size(); ++i) {
        const double x = audio.samples[i];
        const double y = x - prev_x + r * prev_y;
        out.samples[i] = clamp_i16(y);
        prev_x = x;
        prev_y = y;
    }
    return out;
}

EnvelopeSignal compute_envelope(const RawAudio& audio, const DetectorConfig& cfg) {
    if (cfg.decimated_rate_hz <= 0 || cfg.lowpass_cutoff_hz <= 0)
        throw ConfigError("compute_envelope: rates must be positive");
    if (cfg.lowpass_cutoff_hz > cfg.decimated_rate_hz / 2.0)
        throw ConfigError("compute_envelope: cutoff above decimated Nyquist");
    if (cfg.decimated_rate_hz > audio.sample_rate_hz)
        throw ConfigError("compute_envelope: decimated rate above the input rate");
    if (audio.sample_rate_hz < 2.0 * cfg.lowpass_cutoff_hz)
        throw InvalidInput("compute_envelope: sample rate below 2x cutoff");

    const int factor =
        std::max(1, static_cast<int>(std::lround(audio.sample_rate_hz / cfg.decimated_rate_hz)));

    EnvelopeSignal env;
    env.rate_hz = cfg.decimated_rate_hz;
    env.origin_time_s = 0.0;
    env.values.reserve(audio.samples.size() / factor);

    Biquad lp = Biquad::lowpass(cfg.lowpass_cutoff_hz, audio.sample_rate_hz);
    double acc = 0.0;
    int in_window = 0;
    for (int16_t s : audio.samples) {
        acc += lp.process(std::abs(static_cast<double>(s)));
        if (++in_window == factor) {
            env.values.push_back(std::max(0.0, acc / factor));
            acc = 0.0;
            in_window = 0;
        }
    }
    return env;
}

std::vector<JmEvent> detect_events(const EnvelopeSignal& env, const DetectorConfig& cfg) {
    if (cfg.threshold_alpha < 0.0 || cfg.threshold_floor < 0.0 ||
        cfg.min_event_duration_s <= 0.0 || cfg.refractory_s < 0.0 || cfg.mean_window_s <= 0.0)
        throw ConfigError("detect_events: threshold and timing parameters must be positive");
    if (env.empty()) return {};
    if (env.rate_hz < 20.0)
        throw ConfigError("detect_events: envelope rate below 20 Hz cannot resolve events");

    const double dt = 1.0 / env.rate_hz;
    const double beta = std::min(1.0, dt / cfg.mean_window_s);
    const std::size_t min_run = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(cfg.min_event_duration_s * env.rate_hz)));

    std::vector<JmEvent> events;
    std::vector<std::size_t> onsets;  // sample index of each accepted onset

    double mean = env.values[0];
    std::size_t run_start = 0;
    bool in_run = false;

    auto close_run = [&](std::size_t run_end) {
        if (run_end - run_start < min_run) return;
        const double onset_t = env.time_at(run_start);
        if (!events.empty() &&
            onset_t - events.back().timestamp_s < cfg.refractory_s) {
            // Within the refractory window of the previous onset: extend that
            // event across the gap instead of opening a new one.
            JmEvent& prev = events.back();
            const std::size_t prev_start = onsets.back();
            double lo = env.values[prev_start], hi = env.values[prev_start];
            for (std::size_t i = prev_start; i < run_end; ++i) {
                lo = std::min(lo, env.values[i]);
                hi = std::max(hi, env.values[i]);
            }
            prev.duration_s = (run_end - prev_start) * dt;
            prev.amplitude = hi - lo;
            return;
        }
        double lo = env.values[run_start], hi = env.values[run_start];
        for (std::size_t i = run_start; i < run_end; ++i) {
            lo = std::min(lo, env.values[i]);
            hi = std::max(hi, env.values[i]);
        }
        JmEvent ev;
        ev.timestamp_s = onset_t;
        ev.duration_s = (run_end - run_start) * dt;
        ev.amplitude = hi - lo;
        if (ev.amplitude > 0.0) {
            events.push_back(ev);
            onsets.push_back(run_start);
        }
    };

    for (std::size_t i = 0; i < env.values.size(); ++i) {
        const double threshold = cfg.threshold_alpha * mean + cfg.threshold_floor;
        const bool supra = env.values[i] > threshold;
        if (supra && !in_run) {
            run_start = i;
            in_run = true;
        } else if (!supra && in_run) {
            close_run(i);
            in_run = false;
        }
        mean = (1.0 - beta) * mean + beta * env.values[i];
    }
    if (in_run) close_run(env.values.size());
    return events;
}

}  // namespace jmfar
