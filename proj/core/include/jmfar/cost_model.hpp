#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jmfar/features.hpp"

namespace jmfar {

// Operations-per-second ledger for an embedded deployment of the pipeline.
// Stage costs are worst-case upper bounds; the reference configuration is a
// 2 kHz input, 5 min segments and 2 events/s (600 events per segment).
struct CostAssumptions {
    double sampling_rate_hz = 2000.0;
    double segment_len_s = 300.0;
    double events_per_s = 2.0;
    double envelope_rate_hz = 100.0;
    int envelope_sample_bytes = 1;  // 8-bit storage
    FeatureMask mask = variant_mask(Variant::Jmfar);
    int mlp_input = kNumFeatures;
    int mlp_hidden = 20;
    int mlp_output = kNumActivities;
    bool include_classifier = true;
};

struct CostItem {
    std::string name;
    double ops = 0.0;
};

struct CostReport {
    std::vector<CostItem> per_second;   // conditioning, detection, buffering
    std::vector<CostItem> per_segment;  // feature extraction, classifier
    double per_second_subtotal = 0.0;
    double per_segment_subtotal = 0.0;
    long long total_ops_per_s = 0;      // per_second + per_segment/segment_len, rounded
    long long ram_bytes = 0;
};

CostReport cost(const CostAssumptions& a);

// Segment buffer RAM: envelope storage, doubled when any spectral feature
// (f13/f23/f24) needs a same-size transform buffer.
long long ram_estimate(const CostAssumptions& a);

// Dense 2-layer classifier op model: 2 ops per weight plus fixed per-neuron
// overhead (bias + activation) of 61 for the hidden layer and 33 for the
// softmax output layer.
long long mlp_ops(int input, int hidden, int output);

// Predecessor method's total; its stage breakdown is not itemized here.
inline constexpr long long kBufarOpsPerSecond = 37966;

}  // namespace jmfar
