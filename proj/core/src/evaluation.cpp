#include "jmfar/evaluation.hpp"

#include <algorithm>
#include <cmath>

#include "jmfar/errors.hpp"

namespace jmfar {

namespace {

struct Run {
    long start = 0;
    long end = 0;  // exclusive
    long len() const { return end - start; }
};

std::vector<Run> runs_of_class(const std::vector<Activity>& frames, Activity cls) {
    std::vector<Run> runs;
    long i = 0;
    const long n = static_cast<long>(frames.size());
    while (i < n) {
        if (frames[i] == cls) {
            Run r{i, i};
            while (r.end < n && frames[r.end] == cls) ++r.end;
            runs.push_back(r);
            i = r.end;
        } else {
            ++i;
        }
    }
    return runs;
}

bool overlaps(const Run& a, const Run& b) { return a.start < b.end && b.start < a.end; }

}  // namespace

FrameSequence blocks_to_frames(std::span<const ActivityBlock> blocks, double recording_len_s) {
    if (recording_len_s < 0.0) throw InvalidInput("blocks_to_frames: negative recording length");
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].end_s <= blocks[i].start_s)
            throw InvalidInput("blocks_to_frames: empty or inverted block");
        if (blocks[i].start_s < -1e-9 || blocks[i].end_s > recording_len_s + 1e-9)
            throw InvalidInput("blocks_to_frames: block outside recording");
        if (i > 0 && blocks[i].start_s < blocks[i - 1].end_s - 1e-9)
            throw InvalidInput("blocks_to_frames: overlapping blocks");
    }

    FrameSequence seq;
    const auto n_frames = static_cast<std::size_t>(std::ceil(recording_len_s - 1e-9));
    seq.labels.assign(n_frames, Activity::Other);

    std::size_t b = 0;
    for (std::size_t i = 0; i < n_frames; ++i) {
        // Midpoint rule; the trailing partial frame uses its own midpoint.
        const double hi = std::min(static_cast<double>(i + 1), recording_len_s);
        const double mid = (static_cast<double>(i) + hi) / 2.0;
        while (b < blocks.size() && blocks[b].end_s <= mid) ++b;
        if (b < blocks.size() && blocks[b].start_s <= mid && mid < blocks[b].end_s)
            seq.labels[i] = blocks[b].label;
    }
    return seq;
}

F1Scores weighted_f1(std::span<const Activity> truth, std::span<const Activity> pred,
                     bool include_other) {
    if (truth.size() != pred.size()) throw InvalidInput("weighted_f1: length mismatch");

    std::array<long, kNumActivities> tp{}, fp{}, fn{};
    F1Scores s;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const int t = static_cast<int>(truth[i]);
        const int p = static_cast<int>(pred[i]);
        s.support[t]++;
        if (t == p) {
            tp[t]++;
        } else {
            fn[t]++;
            fp[p]++;
        }
    }
    double weighted_sum = 0.0;
    long total_support = 0;
    for (int c = 0; c < kNumActivities; ++c) {
        const double precision =
            tp[c] + fp[c] > 0 ? static_cast<double>(tp[c]) / (tp[c] + fp[c]) : 0.0;
        const double recall = tp[c] + fn[c] > 0 ? static_cast<double>(tp[c]) / (tp[c] + fn[c]) : 0.0;
        s.per_class[c] =
            precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
        const bool weighted_in = s.support[c] > 0 &&
                                 (include_other || c != static_cast<int>(Activity::Other));
        if (weighted_in) {
            weighted_sum += static_cast<double>(s.support[c]) * s.per_class[c];
            total_support += s.support[c];
        }
    }
    s.weighted = total_support > 0 ? weighted_sum / static_cast<double>(total_support) : 0.0;
    return s;
}

F1Scores weighted_f1(const FrameSequence& truth, const FrameSequence& pred, bool include_other) {
    return weighted_f1(std::span<const Activity>(truth.labels),
                       std::span<const Activity>(pred.labels), include_other);
}

ConfusionMatrix confusion_matrix(const FrameSequence& truth, const FrameSequence& pred) {
    if (truth.labels.size() != pred.labels.size())
        throw InvalidInput("confusion_matrix: length mismatch");
    std::array<std::array<long, kNumActivities>, kNumActivities> counts{};
    for (std::size_t i = 0; i < truth.labels.size(); ++i)
        counts[static_cast<int>(truth.labels[i])][static_cast<int>(pred.labels[i])]++;

    ConfusionMatrix m{};
    for (int i = 0; i < kNumActivities; ++i) {
        long row = 0;
        for (long v : counts[i]) row += v;
        if (row > 0)
            for (int j = 0; j < kNumActivities; ++j)
                m[i][j] = static_cast<double>(counts[i][j]) / static_cast<double>(row);
    }
    return m;
}

BlockMetrics block_metrics(std::span<const ActivityBlock> truth,
                           std::span<const ActivityBlock> pred, Activity cls,
                           double recording_len_s) {
    const FrameSequence ft = blocks_to_frames(truth, recording_len_s);
    const FrameSequence fp = blocks_to_frames(pred, recording_len_s);
    const std::vector<Run> t_runs = runs_of_class(ft.labels, cls);
    const std::vector<Run> p_runs = runs_of_class(fp.labels, cls);

    long t_frames = 0, p_frames = 0;
    for (const Run& r : t_runs) t_frames += r.len();
    for (const Run& r : p_runs) p_frames += r.len();

    long deleted_blocks = 0, fragmented_blocks = 0, inserted_blocks = 0, merging_blocks = 0;
    long deletion_frames = 0, fragmenting_frames = 0, underfill_frames = 0;
    long insertion_frames = 0, merging_frames = 0, overfill_frames = 0;

    // Truth side: a truth frame is matched, deleted, fragmenting (interior gap
    // of a fragmented block) or underfill (missed block edge).
    for (const Run& t : t_runs) {
        std::vector<Run> cover;
        for (const Run& p : p_runs)
            if (overlaps(t, p))
                cover.push_back({std::max(t.start, p.start), std::min(t.end, p.end)});
        if (cover.empty()) {
            ++deleted_blocks;
            deletion_frames += t.len();
            continue;
        }
        if (cover.size() >= 2) ++fragmented_blocks;
        underfill_frames += cover.front().start - t.start;
        underfill_frames += t.end - cover.back().end;
        for (std::size_t k = 1; k < cover.size(); ++k)
            fragmenting_frames += cover[k].start - cover[k - 1].end;
    }

    // Prediction side: a predicted frame is matched, inserted, merging
    // (bridging two truth blocks) or overfill (spill past block edges).
    for (const Run& p : p_runs) {
        std::vector<Run> cover;
        for (const Run& t : t_runs)
            if (overlaps(p, t))
                cover.push_back({std::max(p.start, t.start), std::min(p.end, t.end)});
        if (cover.empty()) {
            ++inserted_blocks;
            insertion_frames += p.len();
            continue;
        }
        if (cover.size() >= 2) ++merging_blocks;
        overfill_frames += cover.front().start - p.start;
        overfill_frames += p.end - cover.back().end;
        for (std::size_t k = 1; k < cover.size(); ++k)
            merging_frames += cover[k].start - cover[k - 1].end;
    }

    auto rate = [](long num, long denom) {
        return denom > 0 ? static_cast<double>(num) / static_cast<double>(denom) : 0.0;
    };

    BlockMetrics m;
    m.d_b = rate(deleted_blocks, static_cast<long>(t_runs.size()));
    m.f_b = rate(fragmented_blocks, static_cast<long>(t_runs.size()));
    m.i_b = rate(inserted_blocks, static_cast<long>(p_runs.size()));
    m.m_b = rate(merging_blocks, static_cast<long>(p_runs.size()));
    m.d_f = rate(deletion_frames, t_frames);
    m.f_f = rate(fragmenting_frames, t_frames);
    m.u_f = rate(underfill_frames, t_frames);
    m.i_f = rate(insertion_frames, p_frames);
    m.m_f = rate(merging_frames, p_frames);
    m.o_f = rate(overfill_frames, p_frames);
    m.fnr = rate(deletion_frames + fragmenting_frames + underfill_frames, t_frames);
    m.fdr = rate(insertion_frames + merging_frames + overfill_frames, p_frames);
    return m;
}

EvalReport evaluate(std::span<const ActivityBlock> truth, std::span<const ActivityBlock> pred,
                    double recording_len_s, bool include_other) {
    EvalReport r;
    r.recording_len_s = recording_len_s;
    const FrameSequence ft = blocks_to_frames(truth, recording_len_s);
    const FrameSequence fpred = blocks_to_frames(pred, recording_len_s);
    r.f1 = weighted_f1(ft, fpred, include_other);
    r.confusion = confusion_matrix(ft, fpred);
    for (int c = 0; c < kNumActivities; ++c)
        r.per_class[c] = block_metrics(truth, pred, static_cast<Activity>(c), recording_len_s);
    return r;
}

}  // namespace jmfar
