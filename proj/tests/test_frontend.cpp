#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "jmfar/errors.hpp"
#include "jmfar/frontend.hpp"
#include "jmfar/rng.hpp"
#include "jmfar/synth.hpp"

using namespace jmfar;

namespace {

RawAudio make_audio(int rate, std::size_t n) {
    RawAudio a;
    a.sample_rate_hz = rate;
    a.samples.assign(n, 0);
    return a;
}

EnvelopeSignal bump_train(const std::vector<double>& onsets, double amp, double dur,
                          double total_s, double rate = 100.0) {
    std::vector<JmEvent> ev;
    for (double t : onsets) ev.push_back({t, amp, dur});
    return render_envelope(ev, rate, total_s);
}

}  // namespace

TEST_SUITE("frontend") {

TEST_CASE("detrend: constant input becomes zero, zero stays zero") {
    RawAudio a = make_audio(8000, 16000);
    for (auto& s : a.samples) s = 1234;
    const RawAudio out = detrend(a);
    for (int16_t s : out.samples) CHECK(s == 0);

    const RawAudio zeros = detrend(make_audio(8000, 100));
    for (int16_t s : zeros.samples) CHECK(s == 0);
}

TEST_CASE("detrend: empty input rejected") {
    CHECK_THROWS_AS(detrend(make_audio(8000, 0)), InvalidInput);
}

TEST_CASE("detrend: ramp settles to the analytic steady state") {
    // Ramp 0 -> full scale over 60 s. For y[n] = x[n]-x[n-1]+r*y[n-1] the
    // steady state is slope/(1-r) with r = exp(-2*pi*5/fs).
    const int fs = 8000;
    const double total_s = 60.0;
    RawAudio a = make_audio(fs, static_cast<std::size_t>(fs * total_s));
    const double slope = 32767.0 / static_cast<double>(a.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i)
        a.samples[i] = static_cast<int16_t>(std::lround(slope * static_cast<double>(i)));

    const double r = std::exp(-2.0 * M_PI * 5.0 / fs);
    const double expected = slope / (1.0 - r);
    CHECK(expected < 1e-3 * 32767.0);

    const RawAudio out = detrend(a);
    for (std::size_t w = 2; w + 1 < 60; ++w) {  // every 1 s window after settling
        double mean = 0.0;
        for (std::size_t i = w * fs; i < (w + 1) * fs; ++i) mean += out.samples[i];
        mean /= fs;
        CHECK(std::abs(mean) < 1e-3 * 32767.0);
        CHECK(std::abs(mean - expected) < 1.0);  // quantization slack
    }
}

TEST_CASE("envelope: zero audio gives zero envelope") {
    DetectorConfig cfg;
    const EnvelopeSignal env = compute_envelope(make_audio(44100, 44100), cfg);
    CHECK(env.rate_hz == 100.0);
    for (double v : env.values) CHECK(v == 0.0);
}

TEST_CASE("envelope: rectified sine settles at 2/pi of its amplitude") {
    DetectorConfig cfg;
    RawAudio a = make_audio(44100, 44100 * 3);
    const double amp = 10000.0;
    for (std::size_t i = 0; i < a.samples.size(); ++i)
        a.samples[i] =
            static_cast<int16_t>(std::lround(amp * std::sin(2.0 * M_PI * 500.0 * i / 44100.0)));
    const EnvelopeSignal env = compute_envelope(a, cfg);
    const double expected = amp * 2.0 / M_PI;
    for (std::size_t i = 100; i < env.values.size(); ++i) {  // past the 1 s transient
        CHECK(env.values[i] > expected * 0.98);
        CHECK(env.values[i] < expected * 1.02);
    }
}

TEST_CASE("envelope: length contract and rate") {
    DetectorConfig cfg;
    const EnvelopeSignal env = compute_envelope(make_audio(44100, 100000), cfg);
    CHECK(env.values.size() == 100000 / 441);
}

TEST_CASE("envelope: rectification symmetry") {
    DetectorConfig cfg;
    Rng rng(3);
    RawAudio a = make_audio(8000, 16000);
    for (auto& s : a.samples) s = static_cast<int16_t>(rng.uniform(-20000, 20000));
    RawAudio neg = a;
    for (auto& s : neg.samples) s = static_cast<int16_t>(-s);
    const EnvelopeSignal e1 = compute_envelope(a, cfg);
    const EnvelopeSignal e2 = compute_envelope(neg, cfg);
    for (std::size_t i = 0; i < e1.values.size(); ++i)
        CHECK(e1.values[i] == doctest::Approx(e2.values[i]).epsilon(1e-9));
}

TEST_CASE("envelope: cutoff above decimated Nyquist rejected") {
    DetectorConfig cfg;
    cfg.lowpass_cutoff_hz = 60.0;  // > 100/2
    CHECK_THROWS_AS(compute_envelope(make_audio(44100, 1000), cfg), ConfigError);
}

TEST_CASE("detect: all-zero envelope gives no events") {
    DetectorConfig cfg;
    EnvelopeSignal env;
    env.rate_hz = 100.0;
    env.values.assign(3000, 0.0);
    CHECK(detect_events(env, cfg).empty());
}

TEST_CASE("detect: recovers well-separated bumps with tight onsets") {
    DetectorConfig cfg;
    cfg.threshold_alpha = 1.0;
    cfg.threshold_floor = 0.05;
    std::vector<double> onsets;
    for (int k = 0; k < 20; ++k) onsets.push_back(5.0 + 1.5 * k);
    const EnvelopeSignal env = bump_train(onsets, 0.5, 0.4, 40.0);

    const auto events = detect_events(env, cfg);
    REQUIRE(events.size() == onsets.size());
    for (std::size_t i = 0; i < events.size(); ++i) {
        CHECK(events[i].timestamp_s > onsets[i]);          // crossing happens on the rise
        CHECK(events[i].timestamp_s < onsets[i] + 0.2);
        CHECK(events[i].duration_s >= cfg.min_event_duration_s);
        CHECK(events[i].amplitude > 0.0);
    }
    for (std::size_t i = 1; i < events.size(); ++i) {
        CHECK(events[i].timestamp_s > events[i - 1].timestamp_s);
        CHECK(events[i].timestamp_s - events[i - 1].timestamp_s >= cfg.refractory_s);
    }
    CHECK(events.front().timestamp_s >= 0.0);
    CHECK(events.back().timestamp_s <= env.duration_s());
}

TEST_CASE("detect: two bumps inside the refractory window merge") {
    DetectorConfig cfg;
    cfg.refractory_s = 0.5;
    const EnvelopeSignal env = bump_train({5.0, 5.3}, 0.6, 0.15, 12.0);
    const auto events = detect_events(env, cfg);
    CHECK(events.size() == 1);

    const EnvelopeSignal env2 = bump_train({5.0, 6.2}, 0.6, 0.15, 12.0);
    CHECK(detect_events(env2, cfg).size() == 2);
}

TEST_CASE("detect: raising alpha never adds events on separated bumps") {
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> onsets;
        double t = 3.0;
        while (t < 55.0) {
            onsets.push_back(t);
            t += rng.uniform(1.0, 2.5);
        }
        const EnvelopeSignal env = bump_train(onsets, 1.0, 0.35, 60.0);

        DetectorConfig cfg;
        std::size_t prev = SIZE_MAX;
        for (double alpha : {0.5, 0.8, 1.2, 2.0, 4.0, 8.0}) {
            cfg.threshold_alpha = alpha;
            const std::size_t n = detect_events(env, cfg).size();
            CHECK(n <= prev);
            prev = n;
        }
    }
}

TEST_CASE("detect: amplitudes scale with the signal under relative thresholding") {
    DetectorConfig cfg;
    cfg.threshold_floor = 0.0;  // pure relative threshold
    Rng rng(29);
    std::vector<double> onsets;
    for (int k = 0; k < 25; ++k) onsets.push_back(4.0 + 1.4 * k + rng.uniform(0.0, 0.3));
    EnvelopeSignal env = bump_train(onsets, 0.8, 0.4, 45.0);
    for (double& v : env.values) v += 0.01;  // small positive floor so the mean never dies

    const auto base = detect_events(env, cfg);
    REQUIRE(base.size() > 10);

    const double c = 3.25;
    EnvelopeSignal scaled = env;
    for (double& v : scaled.values) v *= c;
    const auto events = detect_events(scaled, cfg);
    REQUIRE(events.size() == base.size());
    for (std::size_t i = 0; i < events.size(); ++i) {
        CHECK(events[i].timestamp_s == base[i].timestamp_s);
        CHECK(events[i].amplitude == doctest::Approx(c * base[i].amplitude).epsilon(1e-9));
    }
}

TEST_CASE("detect: sub-20 Hz envelope rejected") {
    DetectorConfig cfg;
    EnvelopeSignal env;
    env.rate_hz = 10.0;
    env.values.assign(100, 0.0);
    CHECK_THROWS_AS(detect_events(env, cfg), ConfigError);
}

}  // TEST_SUITE
