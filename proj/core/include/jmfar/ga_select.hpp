#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "jmfar/features.hpp"
#include "jmfar/mlp.hpp"

namespace jmfar {

// Wrapper feature selection: a genetic algorithm searches 21-bit masks per
// fold; the final mask keeps features voted for by at least min_fold_votes
// folds.
struct GaConfig {
    double mutation_prob = 0.2;   // per-individual; a mutated individual flips bits at 1/21 each
    double crossover_prob = 0.5;  // per pair, single point
    int population = 50;          // must be even
    int generations = 30;
    int folds = 5;
    int min_fold_votes = 2;
    uint32_t seed = 1;
    int tournament_size = 3;
    int elitism = 1;
    // Per-feature fitness penalty; accuracy differences below the percent
    // scale break toward fewer features, so all-noise inputs shrink the mask.
    double parsimony_penalty = 0.02;
    // Internal classifier used to score masks; kept cheap.
    TrainConfig trainer{.learning_rate = 0.1, .max_epochs = 60, .batch_size = 16, .folds = 2,
                        .seed = 0, .patience = 0, .hidden_dim = 20};
};

struct SelectionResult {
    FeatureMask mask{};                      // voted final mask
    std::array<int, kNumFeatures> votes{};   // folds that selected each feature
    std::vector<FeatureMask> fold_masks;     // best mask per fold
    std::vector<double> fold_fitness;
};

// Index sets driving one fold of the search. A mask's fitness is the mean
// accuracy of a 2-fold cross validation over the two search halves; the
// held-out portion never reaches the GA.
struct GaFoldSplit {
    std::vector<int> search_train;  // first half of the search data
    std::vector<int> search_eval;   // second half
    std::vector<int> held_out;
};

std::vector<GaFoldSplit> make_ga_splits(int n, int folds, uint32_t seed);

SelectionResult select_features(const LabeledFeatures& data, const GaConfig& cfg);

}  // namespace jmfar
