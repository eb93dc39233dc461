#include "jmfar/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "jmfar/errors.hpp"

namespace jmfar {

std::vector<SegmentBuffer> segment_recording(const EnvelopeSignal& env,
                                             std::span<const JmEvent> events,
                                             double segment_len_s) {
    if (segment_len_s <= 0.0) throw ConfigError("segment_recording: segment length must be positive");
    std::vector<SegmentBuffer> segments;
    if (env.empty()) return segments;

    const auto samples_per_seg =
        static_cast<std::size_t>(std::llround(segment_len_s * env.rate_hz));
    if (samples_per_seg == 0) throw ConfigError("segment_recording: segment shorter than one sample");

    std::size_t ev = 0;
    for (std::size_t first = 0; first < env.values.size(); first += samples_per_seg) {
        const std::size_t last = std::min(env.values.size(), first + samples_per_seg);
        SegmentBuffer seg;
        seg.segment_start_s = env.origin_time_s + static_cast<double>(first) / env.rate_hz;
        seg.segment_len_s = static_cast<double>(last - first) / env.rate_hz;
        seg.partial = (last - first) < samples_per_seg;
        seg.envelope.rate_hz = env.rate_hz;
        seg.envelope.origin_time_s = seg.segment_start_s;
        seg.envelope.values.assign(env.values.begin() + static_cast<long>(first),
                                   env.values.begin() + static_cast<long>(last));
        const double seg_end = seg.segment_start_s + seg.segment_len_s;
        while (ev < events.size() && events[ev].timestamp_s < seg_end) {
            if (events[ev].timestamp_s >= seg.segment_start_s) seg.events.push_back(events[ev]);
            ++ev;
        }
        segments.push_back(std::move(seg));
    }
    return segments;
}

Activity label_for_segment(std::span<const ActivityBlock> blocks, double segment_start_s,
                           double segment_len_s) {
    const double mid = segment_start_s + segment_len_s / 2.0;
    for (const ActivityBlock& b : blocks)
        if (b.start_s <= mid && mid < b.end_s) return b.label;
    return Activity::Other;
}

PipelineResult run_pipeline_on_envelope(const EnvelopeSignal& env, const PipelineConfig& cfg,
                                        const MlpModel& model) {
    if (model.mask != cfg.mask) throw ModelError("run_pipeline: model mask differs from config");

    PipelineResult result;
    if (env.empty()) return result;

    result.events = detect_events(env, cfg.detector);
    const auto segments = segment_recording(env, result.events, cfg.segment_len_s);

    for (const SegmentBuffer& seg : segments) {
        FeatureVector fv = extract_features(seg, cfg.mask);
        const Classification c = classify(model, fv);
        result.features.push_back(std::move(fv));
        result.segment_labels.push_back(c.label);
    }

    // Merge consecutive same-label segments into blocks.
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const double end = segments[i].segment_start_s + segments[i].segment_len_s;
        if (!result.blocks.empty() && result.blocks.back().label == result.segment_labels[i]) {
            result.blocks.back().end_s = end;
        } else {
            result.blocks.push_back(
                {segments[i].segment_start_s, end, result.segment_labels[i]});
        }
    }
    return result;
}

PipelineResult run_pipeline(const RawAudio& audio, const PipelineConfig& cfg,
                            const MlpModel& model) {
    if (audio.empty()) return {};
    const RawAudio conditioned = detrend(audio);
    const EnvelopeSignal env = compute_envelope(conditioned, cfg.detector);
    return run_pipeline_on_envelope(env, cfg, model);
}

}  // namespace jmfar
