#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "jmfar/features.hpp"
#include "jmfar/frontend.hpp"
#include "jmfar/mlp.hpp"
#include "jmfar/types.hpp"

namespace jmfar {

struct PipelineConfig {
    DetectorConfig detector;
    double segment_len_s = 300.0;
    FeatureMask mask = variant_mask(Variant::Jmfar);
    uint32_t seed = 1;
};

// Splits a recording's envelope and events into non-overlapping segments that
// tile the recording; a trailing partial segment is kept and marked.
std::vector<SegmentBuffer> segment_recording(const EnvelopeSignal& env,
                                             std::span<const JmEvent> events,
                                             double segment_len_s);

struct PipelineResult {
    std::vector<ActivityBlock> blocks;       // consecutive same-label segments merged
    std::vector<FeatureVector> features;     // one per segment
    std::vector<Activity> segment_labels;
    std::vector<JmEvent> events;
};

// detrend -> envelope -> detection -> segmentation -> features -> classifier.
// The model's mask must match cfg.mask.
PipelineResult run_pipeline(const RawAudio& audio, const PipelineConfig& cfg,
                            const MlpModel& model);

// Same, entering after the front end (useful when the envelope already exists).
PipelineResult run_pipeline_on_envelope(const EnvelopeSignal& env, const PipelineConfig& cfg,
                                        const MlpModel& model);

// Label of the block covering the segment midpoint; Other when uncovered.
Activity label_for_segment(std::span<const ActivityBlock> blocks, double segment_start_s,
                           double segment_len_s);

}  // namespace jmfar
