#include "jmfar/ga_select.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "jmfar/errors.hpp"
#include "jmfar/rng.hpp"

namespace jmfar {

namespace {

using Chromosome = uint32_t;  // one bit per candidate feature slot

int popcount(Chromosome c) { return __builtin_popcount(c); }

Chromosome random_chromosome(Rng& rng, int bits) {
    Chromosome c = 0;
    for (int i = 0; i < bits; ++i)
        if (rng.uniform() < 0.5) c |= (1u << i);
    return c;
}

void mutate(Chromosome& c, Rng& rng, int bits) {
    for (int i = 0; i < bits; ++i)
        if (rng.uniform() < 1.0 / bits) c ^= (1u << i);
}

std::pair<Chromosome, Chromosome> crossover(Chromosome a, Chromosome b, Rng& rng, int bits) {
    const int point = 1 + rng.uniform_int(bits - 1);
    const Chromosome low = (1u << point) - 1;
    return {static_cast<Chromosome>((a & low) | (b & ~low)),
            static_cast<Chromosome>((b & low) | (a & ~low))};
}

}  // namespace

std::vector<GaFoldSplit> make_ga_splits(int n, int folds, uint32_t seed) {
    const auto outer = make_folds(n, folds, seed);
    std::vector<GaFoldSplit> splits(outer.size());
    for (std::size_t f = 0; f < outer.size(); ++f) {
        std::vector<char> held(n, 0);
        for (int i : outer[f]) held[i] = 1;
        std::vector<int> rest;
        rest.reserve(n - outer[f].size());
        for (int i = 0; i < n; ++i)
            if (!held[i]) rest.push_back(i);

        Rng rng(mix_seed(seed, static_cast<uint32_t>(f) + 101));
        for (int i = static_cast<int>(rest.size()) - 1; i > 0; --i)
            std::swap(rest[i], rest[rng.uniform_int(i + 1)]);

        // The fitness evaluator only ever sees the two search halves; the
        // held-out fold stays outside the search entirely.
        const std::size_t n_eval = std::max<std::size_t>(1, rest.size() / 2);
        splits[f].search_eval.assign(rest.begin(), rest.begin() + n_eval);
        splits[f].search_train.assign(rest.begin() + n_eval, rest.end());
        splits[f].held_out = outer[f];
        std::sort(splits[f].search_eval.begin(), splits[f].search_eval.end());
        std::sort(splits[f].search_train.begin(), splits[f].search_train.end());
    }
    return splits;
}

SelectionResult select_features(const LabeledFeatures& data, const GaConfig& cfg) {
    const int n = static_cast<int>(data.size());
    if (n < cfg.folds * 10) throw TrainingError("select_features: too few samples");
    if (cfg.population < 2 || cfg.population % 2 != 0)
        throw ConfigError("select_features: population must be even and >= 2");

    // Chromosome bits index the data's active slots.
    std::vector<int> slots;
    for (int i = 0; i < kNumFeatures; ++i)
        if (data.features[0].mask[i]) slots.push_back(i);
    const int bits = static_cast<int>(slots.size());
    if (bits < 1 || bits > 31) throw ConfigError("select_features: unusable feature mask");

    std::vector<std::vector<double>> x;
    std::vector<int> y;
    x.reserve(n);
    y.reserve(n);
    for (int i = 0; i < n; ++i) {
        x.push_back(data.features[i].active_values());
        y.push_back(static_cast<int>(data.labels[i]));
    }

    const auto splits = make_ga_splits(n, cfg.folds, cfg.seed);

    SelectionResult result;
    result.votes.fill(0);

    for (std::size_t f = 0; f < splits.size(); ++f) {
        const GaFoldSplit& split = splits[f];
        std::unordered_map<Chromosome, double> cache;

        auto fitness = [&](Chromosome c) {
            if (auto it = cache.find(c); it != cache.end()) return it->second;
            double value;
            if (c == 0) {
                value = 0.0;
            } else {
                std::vector<int> cols;
                for (int b = 0; b < bits; ++b)
                    if (c & (1u << b)) cols.push_back(b);
                auto project = [&](int row) {
                    std::vector<double> v(cols.size());
                    for (std::size_t k = 0; k < cols.size(); ++k) v[k] = x[row][cols[k]];
                    return v;
                };
                // 2-fold cross validation over the search halves.
                long correct = 0, total = 0;
                for (int half = 0; half < 2; ++half) {
                    const auto& fit_idx = half == 0 ? split.search_train : split.search_eval;
                    const auto& val_idx = half == 0 ? split.search_eval : split.search_train;
                    std::vector<std::vector<double>> tx;
                    std::vector<int> ty;
                    tx.reserve(fit_idx.size());
                    for (int i : fit_idx) {
                        tx.push_back(project(i));
                        ty.push_back(y[i]);
                    }
                    TrainConfig tcfg = cfg.trainer;
                    tcfg.seed = mix_seed(mix_seed(cfg.seed, static_cast<uint32_t>(f) * 2 + half), c);
                    const MlpModel model = fit_raw(tx, ty, tcfg);
                    for (int i : val_idx) {
                        if (predict_raw(model, project(i)) == y[i]) ++correct;
                        ++total;
                    }
                }
                const double acc = static_cast<double>(correct) / static_cast<double>(total);
                value = acc - cfg.parsimony_penalty * popcount(c);
            }
            cache.emplace(c, value);
            return value;
        };

        Rng rng(mix_seed(cfg.seed, static_cast<uint32_t>(f) + 1'000'003));
        std::vector<Chromosome> pop(cfg.population);
        for (auto& c : pop) c = random_chromosome(rng, bits);

        std::vector<double> fit(pop.size());
        for (std::size_t i = 0; i < pop.size(); ++i) fit[i] = fitness(pop[i]);

        auto best_of = [&]() {
            std::size_t b = 0;
            for (std::size_t i = 1; i < pop.size(); ++i)
                if (fit[i] > fit[b]) b = i;
            return b;
        };

        for (int gen = 0; gen < cfg.generations; ++gen) {
            std::vector<Chromosome> next;
            next.reserve(pop.size());
            if (cfg.elitism > 0) next.push_back(pop[best_of()]);

            auto tournament = [&]() {
                std::size_t best = rng.uniform_int(static_cast<int>(pop.size()));
                for (int t = 1; t < cfg.tournament_size; ++t) {
                    const std::size_t i = rng.uniform_int(static_cast<int>(pop.size()));
                    if (fit[i] > fit[best]) best = i;
                }
                return pop[best];
            };

            while (next.size() < pop.size()) {
                Chromosome a = tournament();
                Chromosome b = tournament();
                if (rng.uniform() < cfg.crossover_prob) std::tie(a, b) = crossover(a, b, rng, bits);
                if (rng.uniform() < cfg.mutation_prob) mutate(a, rng, bits);
                if (rng.uniform() < cfg.mutation_prob) mutate(b, rng, bits);
                next.push_back(a);
                if (next.size() < pop.size()) next.push_back(b);
            }
            pop = std::move(next);
            for (std::size_t i = 0; i < pop.size(); ++i) fit[i] = fitness(pop[i]);
        }

        const std::size_t b = best_of();
        FeatureMask fold_mask{};
        for (int bit = 0; bit < bits; ++bit)
            if (pop[b] & (1u << bit)) {
                fold_mask[slots[bit]] = true;
                result.votes[slots[bit]]++;
            }
        result.fold_masks.push_back(fold_mask);
        result.fold_fitness.push_back(fit[b]);
    }

    for (int i = 0; i < kNumFeatures; ++i)
        result.mask[i] = result.votes[i] >= cfg.min_fold_votes;
    return result;
}

}  // namespace jmfar
