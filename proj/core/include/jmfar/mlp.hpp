#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "jmfar/features.hpp"
#include "jmfar/types.hpp"

namespace jmfar {

// Small fully-connected classifier: input -> tanh hidden -> softmax over the
// three activities. Feature standardization (z-score from the training set) is
// part of the model.
struct MlpModel {
    int input_dim = 0;
    int hidden_dim = 20;
    int output_dim = kNumActivities;
    std::vector<double> w1;  // [hidden][input], row-major
    std::vector<double> b1;  // [hidden]
    std::vector<double> w2;  // [output][hidden], row-major
    std::vector<double> b2;  // [output]
    std::vector<double> norm_mean;  // per active feature
    std::vector<double> norm_std;
    FeatureMask mask{};
    uint32_t seed = 0;
    std::vector<double> fold_accuracy;  // validation accuracy recorded per fold
};

struct TrainConfig {
    double learning_rate = 0.05;
    int max_epochs = 300;
    int batch_size = 16;
    int folds = 5;
    uint32_t seed = 1;
    int patience = 0;  // epochs without training-loss improvement before stopping; 0 disables
    int hidden_dim = 20;
};

struct LabeledFeatures {
    std::vector<FeatureVector> features;
    std::vector<Activity> labels;

    std::size_t size() const { return features.size(); }
};

// Trains on all samples, after recording per-fold validation accuracy via
// internal cross validation. Deterministic for a given config.seed. Requires
// at least 2 classes present and 10 samples per present class.
MlpModel train(const LabeledFeatures& data, const TrainConfig& cfg);

struct Classification {
    Activity label = Activity::Other;
    std::array<double, kNumActivities> scores{};  // probability simplex
};

// Throws ModelError if the vector's active dimension does not match the model.
Classification classify(const MlpModel& model, const FeatureVector& fv);

// Max relative discrepancy between the analytic loss gradient and central
// finite differences (step 1e-5) over all parameters.
double gradient_check(const MlpModel& model, const FeatureVector& fv, Activity label);

// Round-robin partition of shuffled indices; every sample lands in exactly one
// validation fold.
std::vector<std::vector<int>> make_folds(int n, int k, uint32_t seed);

struct CrossValResult {
    std::vector<int> predictions;       // one per sample, from the fold holding it out
    std::vector<double> fold_accuracy;
    double accuracy = 0.0;              // pooled
};

CrossValResult cross_validate(const LabeledFeatures& data, const TrainConfig& cfg);

// Versioned text format; weights stored as hex floats so a round trip is
// bit-exact.
void save_model(const MlpModel& model, const std::string& path);
MlpModel load_model(const std::string& path);

// Low-level entry points over raw feature rows: no cross validation, no class
// minimums. The GA wrapper uses these for its fitness evaluations.
MlpModel fit_raw(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                 const TrainConfig& cfg);
int predict_raw(const MlpModel& model, const std::vector<double>& x);

}  // namespace jmfar
