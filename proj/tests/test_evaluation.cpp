#include <vector>

#include "doctest.h"
#include "jmfar/errors.hpp"
#include "jmfar/evaluation.hpp"
#include "jmfar/rng.hpp"
#include "oracles.hpp"

using namespace jmfar;

namespace {

constexpr Activity G = Activity::Grazing;
constexpr Activity R = Activity::Rumination;
constexpr Activity O = Activity::Other;

FrameSequence frames_of(std::vector<Activity> v) {
    FrameSequence s;
    s.labels = std::move(v);
    return s;
}

}  // namespace

TEST_SUITE("evaluation") {

TEST_CASE("blocks_to_frames: single block covers its frames") {
    const std::vector<ActivityBlock> blocks{{0.0, 10.0, G}};
    const FrameSequence seq = blocks_to_frames(blocks, 10.0);
    REQUIRE(seq.labels.size() == 10);
    for (Activity a : seq.labels) CHECK(a == G);
}

TEST_CASE("blocks_to_frames: empty list is all Other; duration conserved") {
    const FrameSequence seq = blocks_to_frames({}, 3600.0);
    CHECK(seq.labels.size() == 3600);
    long counts[3] = {0, 0, 0};
    for (Activity a : seq.labels) counts[static_cast<int>(a)]++;
    CHECK(counts[0] + counts[1] + counts[2] == 3600);
    CHECK(counts[static_cast<int>(O)] == 3600);
}

TEST_CASE("blocks_to_frames: midpoint rule on fractional block edges") {
    const std::vector<ActivityBlock> blocks{{0.4, 2.6, G}};
    const FrameSequence seq = blocks_to_frames(blocks, 3.0);
    REQUIRE(seq.labels.size() == 3);
    CHECK(seq.labels[0] == G);  // midpoint 0.5 inside
    CHECK(seq.labels[1] == G);
    CHECK(seq.labels[2] == G);  // midpoint 2.5 inside

    const std::vector<ActivityBlock> tight{{0.6, 2.4, R}};
    const FrameSequence seq2 = blocks_to_frames(tight, 3.0);
    CHECK(seq2.labels[0] == O);  // midpoint 0.5 outside
    CHECK(seq2.labels[1] == R);
    CHECK(seq2.labels[2] == O);
}

TEST_CASE("blocks_to_frames: overlap rejected") {
    const std::vector<ActivityBlock> blocks{{0.0, 5.0, G}, {4.0, 8.0, R}};
    CHECK_THROWS_AS(blocks_to_frames(blocks, 10.0), InvalidInput);
}

TEST_CASE("weighted F1: perfect prediction") {
    const auto t = frames_of({G, G, R, R, O, O});
    const F1Scores s = weighted_f1(t, t);
    CHECK(s.weighted == 1.0);
    for (double f : s.per_class) CHECK(f == 1.0);
}

TEST_CASE("weighted F1: total miss scores zero") {
    const auto t = frames_of(std::vector<Activity>(10, G));
    const auto p = frames_of(std::vector<Activity>(10, O));
    const F1Scores s = weighted_f1(t, p);
    CHECK(s.per_class[static_cast<int>(G)] == 0.0);
    CHECK(s.weighted == 0.0);
}

TEST_CASE("weighted F1: 12-frame hand case against a literal tally") {
    const auto t = frames_of({G, G, G, G, R, R, R, O, O, O, O, O});
    const auto p = frames_of({G, G, R, O, R, R, G, O, O, O, R, G});
    const F1Scores s = weighted_f1(t, p);

    std::vector<int> ti, pi;
    for (Activity a : t.labels) ti.push_back(static_cast<int>(a));
    for (Activity a : p.labels) pi.push_back(static_cast<int>(a));
    double expect_weighted = 0.0;
    long total = 0;
    for (int c = 0; c < 3; ++c) {
        const auto prf = oracle::prf_for_class(ti, pi, c);
        CHECK(s.per_class[c] == doctest::Approx(prf.f1).epsilon(1e-12));
        expect_weighted += static_cast<double>(prf.support) * prf.f1;
        total += prf.support;
    }
    CHECK(s.weighted == doctest::Approx(expect_weighted / total).epsilon(1e-12));
}

TEST_CASE("weighted F1: absent class carries no weight") {
    const auto t = frames_of({G, G, G, G});
    const auto p = frames_of({G, G, G, R});
    const F1Scores s = weighted_f1(t, p);
    CHECK(s.support[static_cast<int>(R)] == 0);
    // weighted average equals grazing F1 alone
    CHECK(s.weighted == doctest::Approx(s.per_class[static_cast<int>(G)]).epsilon(1e-12));
}

TEST_CASE("weighted F1: length mismatch rejected") {
    CHECK_THROWS_AS(weighted_f1(frames_of({G}), frames_of({G, G})), InvalidInput);
}

TEST_CASE("weighted F1 is 1 only for frame-identical predictions") {
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Activity> t, p;
        for (int i = 0; i < 60; ++i) t.push_back(static_cast<Activity>(rng.uniform_int(3)));
        p = t;
        const int flips = 1 + rng.uniform_int(10);
        for (int k = 0; k < flips; ++k) {
            const int i = rng.uniform_int(60);
            p[i] = static_cast<Activity>((static_cast<int>(p[i]) + 1) % 3);
        }
        const F1Scores s = weighted_f1(frames_of(t), frames_of(p));
        CHECK(s.weighted >= 0.0);
        CHECK(s.weighted < 1.0);
    }
}

TEST_CASE("confusion: identity for perfect prediction") {
    const auto t = frames_of({G, G, R, O, R, O});
    const ConfusionMatrix m = confusion_matrix(t, t);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(m[i][j] == (i == j ? 1.0 : 0.0));
}

TEST_CASE("confusion: rows are truth-conditional proportions") {
    // 100 grazing frames scored 84/12/4 reproduces the reporting convention.
    std::vector<Activity> t(100, G), p;
    for (int i = 0; i < 84; ++i) p.push_back(G);
    for (int i = 0; i < 12; ++i) p.push_back(R);
    for (int i = 0; i < 4; ++i) p.push_back(O);
    const ConfusionMatrix m = confusion_matrix(frames_of(t), frames_of(p));
    CHECK(m[0][0] == doctest::Approx(0.84).epsilon(1e-12));
    CHECK(m[0][1] == doctest::Approx(0.12).epsilon(1e-12));
    CHECK(m[0][2] == doctest::Approx(0.04).epsilon(1e-12));
    CHECK(m[0][0] + m[0][1] + m[0][2] == doctest::Approx(1.0).epsilon(1e-9));
    // absent truth classes leave zero rows
    CHECK(m[1][0] + m[1][1] + m[1][2] == 0.0);
}

TEST_CASE("confusion: uniform random predictions on balanced truth") {
    Rng rng(99);
    const int n = 100000;
    std::vector<Activity> t, p;
    t.reserve(n);
    p.reserve(n);
    for (int i = 0; i < n; ++i) {
        t.push_back(static_cast<Activity>(i % 3));
        p.push_back(static_cast<Activity>(rng.uniform_int(3)));
    }
    const ConfusionMatrix m = confusion_matrix(frames_of(t), frames_of(p));
    for (int i = 0; i < 3; ++i) {
        double row = 0.0;
        for (int j = 0; j < 3; ++j) {
            CHECK(m[i][j] == doctest::Approx(1.0 / 3.0).epsilon(0.15));
            CHECK(std::abs(m[i][j] - 1.0 / 3.0) < 0.05);
            row += m[i][j];
        }
        CHECK(row == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("confusion: transpose sanity on balanced random data") {
    Rng rng(123);
    const int n = 60000;
    std::vector<Activity> t, p;
    for (int i = 0; i < n; ++i) {
        t.push_back(static_cast<Activity>(rng.uniform_int(3)));
        p.push_back(static_cast<Activity>(rng.uniform_int(3)));
    }
    const ConfusionMatrix a = confusion_matrix(frames_of(t), frames_of(p));
    const ConfusionMatrix b = confusion_matrix(frames_of(p), frames_of(t));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(std::abs(a[i][j] - b[j][i]) < 0.03);
}

TEST_CASE("block metrics: identical lists are error free") {
    const std::vector<ActivityBlock> blocks{{0, 60, G}, {60, 120, R}, {120, 150, O}};
    for (Activity cls : {G, R, O}) {
        const BlockMetrics m = block_metrics(blocks, blocks, cls, 150.0);
        CHECK(m.fnr == 0.0);
        CHECK(m.fdr == 0.0);
        CHECK(m.f_b == 0.0);
        CHECK(m.m_b == 0.0);
        CHECK(m.d_b == 0.0);
        CHECK(m.i_b == 0.0);
        CHECK(m.u_f == 0.0);
        CHECK(m.o_f == 0.0);
        CHECK(m.f_f == 0.0);
        CHECK(m.m_f == 0.0);
        CHECK(m.d_f == 0.0);
        CHECK(m.i_f == 0.0);
    }
}

TEST_CASE("block metrics: split prediction marks one fragmented block") {
    const std::vector<ActivityBlock> truth{{0, 10, G}};
    const std::vector<ActivityBlock> pred{{0, 4, G}, {5, 10, G}};
    const BlockMetrics m = block_metrics(truth, pred, G, 10.0);
    CHECK(m.f_b == 1.0);           // the single truth block is fragmented
    CHECK(m.f_f == doctest::Approx(0.1).epsilon(1e-12));  // 1 gap frame of 10
    CHECK(m.fnr == doctest::Approx(0.1).epsilon(1e-12));  // gap / duration
    CHECK(m.d_b == 0.0);
    CHECK(m.u_f == 0.0);
    CHECK(m.fdr == 0.0);
    CHECK(m.i_b == 0.0);
}

TEST_CASE("block metrics: spurious prediction on empty truth is pure insertion") {
    const std::vector<ActivityBlock> pred{{5, 15, R}};
    const BlockMetrics m = block_metrics({}, pred, R, 30.0);
    CHECK(m.i_b == 1.0);
    CHECK(m.i_f == 1.0);
    CHECK(m.fdr == 1.0);
    CHECK(m.fnr == 0.0);  // no truth to miss
}

TEST_CASE("block metrics: merging, underfill and overfill attribution") {
    // One prediction bridges two truth blocks and spills one frame past each end.
    const std::vector<ActivityBlock> truth{{10, 20, G}, {25, 35, G}};
    const std::vector<ActivityBlock> pred{{9, 36, G}};
    const BlockMetrics m = block_metrics(truth, pred, G, 50.0);
    CHECK(m.m_b == 1.0);
    CHECK(m.d_b == 0.0);
    CHECK(m.fnr == 0.0);
    CHECK(m.m_f == doctest::Approx(5.0 / 27.0).epsilon(1e-12));  // 5 bridge frames of 27 predicted
    CHECK(m.o_f == doctest::Approx(2.0 / 27.0).epsilon(1e-12));  // 1 spill frame each side
    CHECK(m.fdr == doctest::Approx(7.0 / 27.0).epsilon(1e-12));

    // Shrunken prediction misses two frames at the edges of one truth block.
    const std::vector<ActivityBlock> t2{{10, 20, G}};
    const std::vector<ActivityBlock> p2{{11, 19, G}};
    const BlockMetrics m2 = block_metrics(t2, p2, G, 30.0);
    CHECK(m2.u_f == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(m2.fnr == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(m2.f_b == 0.0);

    // Fully missed truth block is a deletion.
    const std::vector<ActivityBlock> p3{{25, 28, G}};
    const BlockMetrics m3 = block_metrics(t2, p3, G, 30.0);
    CHECK(m3.d_b == 1.0);
    CHECK(m3.d_f == 1.0);
    CHECK(m3.fnr == 1.0);
    CHECK(m3.i_b == 1.0);
}

TEST_CASE("block metrics: frame errors grow with corruption rate") {
    Rng rng(7);
    const double len = 600.0;
    std::vector<ActivityBlock> truth;
    for (int k = 0; k < 10; ++k)
        truth.push_back({k * 60.0, k * 60.0 + 60.0, static_cast<Activity>(k % 3)});

    double prev_fnr = -1.0, prev_fdr = -1.0;
    for (double rate : {0.0, 0.1, 0.25, 0.4}) {
        double fnr = 0.0, fdr = 0.0;
        const int trials = 20;
        for (int trial = 0; trial < trials; ++trial) {
            FrameSequence frames = blocks_to_frames(truth, len);
            for (Activity& a : frames.labels)
                if (rng.uniform() < rate) a = static_cast<Activity>(rng.uniform_int(3));
            // frames back to blocks
            std::vector<ActivityBlock> pred;
            for (std::size_t i = 0; i < frames.labels.size(); ++i) {
                if (!pred.empty() && pred.back().label == frames.labels[i] &&
                    pred.back().end_s == static_cast<double>(i))
                    pred.back().end_s = static_cast<double>(i + 1);
                else
                    pred.push_back({static_cast<double>(i), static_cast<double>(i + 1),
                                    frames.labels[i]});
            }
            const BlockMetrics m = block_metrics(truth, pred, G, len);
            fnr += m.fnr;
            fdr += m.fdr;
        }
        fnr /= trials;
        fdr /= trials;
        CHECK(fnr >= prev_fnr - 1e-6);
        CHECK(fdr >= prev_fdr - 1e-6);
        prev_fnr = fnr;
        prev_fdr = fdr;
    }
}

TEST_CASE("evaluate: full report on identical inputs") {
    const std::vector<ActivityBlock> blocks{{0, 300, G}, {300, 600, R}, {600, 900, O}};
    const EvalReport r = evaluate(blocks, blocks, 900.0);
    CHECK(r.f1.weighted == 1.0);
    for (int c = 0; c < kNumActivities; ++c) {
        CHECK(r.confusion[c][c] == 1.0);
        CHECK(r.per_class[c].fnr == 0.0);
        CHECK(r.per_class[c].fdr == 0.0);
    }
}

}  // TEST_SUITE
