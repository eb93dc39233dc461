#include <benchmark/benchmark.h>

#include <cmath>

#include "jmfar/cost_model.hpp"
#include "jmfar/features.hpp"
#include "jmfar/frontend.hpp"
#include "jmfar/mlp.hpp"
#include "jmfar/rng.hpp"
#include "jmfar/synth.hpp"

using namespace jmfar;

namespace {

RawAudio one_minute_audio() {
    const auto events = generate_event_stream(grazing_model(), 60.0, 1);
    return render_audio(events, 44100, 60.0, 6000.0);
}

SegmentBuffer worst_case_segment() {
    // 2 events/s for 300 s, the cost model's reference load.
    ActivityModel m = grazing_model();
    m.jm_rate_hz = 2.0;
    SegmentBuffer buf;
    buf.segment_len_s = 300.0;
    buf.events = generate_event_stream(m, 300.0, 2);
    buf.envelope = render_envelope(buf.events, 100.0, 300.0);
    return buf;
}

void BM_DetrendMinute(benchmark::State& state) {
    const RawAudio audio = one_minute_audio();
    for (auto _ : state) benchmark::DoNotOptimize(detrend(audio));
}
BENCHMARK(BM_DetrendMinute);

void BM_EnvelopeMinute(benchmark::State& state) {
    const RawAudio audio = detrend(one_minute_audio());
    const DetectorConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(compute_envelope(audio, cfg));
}
BENCHMARK(BM_EnvelopeMinute);

void BM_DetectSegment(benchmark::State& state) {
    const SegmentBuffer buf = worst_case_segment();
    const DetectorConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(detect_events(buf.envelope, cfg));
}
BENCHMARK(BM_DetectSegment);

void BM_ExtractFeatures(benchmark::State& state) {
    const SegmentBuffer buf = worst_case_segment();
    const FeatureMask mask = variant_mask(Variant::Jmfar);
    for (auto _ : state) benchmark::DoNotOptimize(extract_features(buf, mask));
}
BENCHMARK(BM_ExtractFeatures);

void BM_ExtractFeaturesNoSpectral(benchmark::State& state) {
    const SegmentBuffer buf = worst_case_segment();
    const FeatureMask mask = variant_mask(Variant::JmfarNs);
    for (auto _ : state) benchmark::DoNotOptimize(extract_features(buf, mask));
}
BENCHMARK(BM_ExtractFeaturesNoSpectral);

void BM_Classify(benchmark::State& state) {
    const SegmentBuffer buf = worst_case_segment();
    const FeatureVector fv = extract_features(buf, variant_mask(Variant::Jmfar));

    Rng rng(1);
    MlpModel model;
    model.input_dim = kNumFeatures;
    model.hidden_dim = 20;
    model.mask = variant_mask(Variant::Jmfar);
    model.w1.resize(20 * kNumFeatures);
    model.b1.resize(20);
    model.w2.resize(3 * 20);
    model.b2.resize(3);
    for (double& v : model.w1) v = rng.normal();
    for (double& v : model.w2) v = rng.normal();
    model.norm_mean.assign(kNumFeatures, 0.0);
    model.norm_std.assign(kNumFeatures, 1.0);

    for (auto _ : state) benchmark::DoNotOptimize(classify(model, fv));
}
BENCHMARK(BM_Classify);

void BM_CostModel(benchmark::State& state) {
    CostAssumptions a;
    for (auto _ : state) benchmark::DoNotOptimize(cost(a));
}
BENCHMARK(BM_CostModel);

}  // namespace

BENCHMARK_MAIN();
