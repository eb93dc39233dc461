#pragma once

#include <array>
#include <span>
#include <vector>

#include "jmfar/types.hpp"

namespace jmfar {

// Frame-based scoring on 1 s non-overlapping frames plus segment-alignment
// block metrics.
struct FrameSequence {
    std::vector<Activity> labels;
    double origin_s = 0.0;
};

// Frame i takes the label of the block covering its midpoint; uncovered frames
// are Other. Overlapping blocks raise InvalidInput.
FrameSequence blocks_to_frames(std::span<const ActivityBlock> blocks, double recording_len_s);

struct F1Scores {
    std::array<double, kNumActivities> per_class{};
    std::array<long, kNumActivities> support{};  // truth frame counts
    double weighted = 0.0;
};

// Classes with zero truth support are excluded from the weighted average.
// include_other=false additionally drops Other from the weighting.
F1Scores weighted_f1(const FrameSequence& truth, const FrameSequence& pred,
                     bool include_other = true);
F1Scores weighted_f1(std::span<const Activity> truth, std::span<const Activity> pred,
                     bool include_other = true);

// confusion[i][j] = proportion of truth-class-i frames predicted as class j;
// rows sum to 1 where class i occurs.
using ConfusionMatrix = std::array<std::array<double, kNumActivities>, kNumActivities>;
ConfusionMatrix confusion_matrix(const FrameSequence& truth, const FrameSequence& pred);

// Segment-alignment error taxonomy for one class. Every truth frame of the
// class is matched, deleted, fragmenting (an interior gap of a fragmented
// block) or underfill (a missed block edge); every predicted frame is matched,
// inserted, merging (bridging two truth blocks) or overfill. Block rates are
// normalized by truth/prediction block counts, frame rates by truth/prediction
// frame counts.
struct BlockMetrics {
    double fnr = 0.0;  // missed truth frames / truth frames
    double fdr = 0.0;  // false prediction frames / predicted frames
    double f_b = 0.0;  // fragmented truth blocks / truth blocks
    double m_b = 0.0;  // merging predicted blocks / predicted blocks
    double d_b = 0.0;  // deleted truth blocks / truth blocks
    double i_b = 0.0;  // inserted predicted blocks / predicted blocks
    double u_f = 0.0;  // underfill frames / truth frames
    double o_f = 0.0;  // overfill frames / predicted frames
    double f_f = 0.0;  // fragmenting frames / truth frames
    double m_f = 0.0;  // merging frames / predicted frames
    double d_f = 0.0;  // deletion frames / truth frames
    double i_f = 0.0;  // insertion frames / predicted frames
};

BlockMetrics block_metrics(std::span<const ActivityBlock> truth,
                           std::span<const ActivityBlock> pred, Activity cls,
                           double recording_len_s);

struct EvalReport {
    F1Scores f1;
    ConfusionMatrix confusion{};
    std::array<BlockMetrics, kNumActivities> per_class{};
    double recording_len_s = 0.0;
};

EvalReport evaluate(std::span<const ActivityBlock> truth, std::span<const ActivityBlock> pred,
                    double recording_len_s, bool include_other = true);

}  // namespace jmfar
