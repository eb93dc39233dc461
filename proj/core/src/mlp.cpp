#include "jmfar/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "jmfar/errors.hpp"
#include "jmfar/rng.hpp"

namespace jmfar {

namespace {

struct Matrix {
    std::vector<std::vector<double>> x;  // [n][dim]
    std::vector<int> y;                  // class index
};

Matrix to_matrix(const LabeledFeatures& data) {
    if (data.features.size() != data.labels.size())
        throw TrainingError("train: feature/label count mismatch");
    Matrix m;
    m.x.reserve(data.size());
    m.y.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (data.features[i].mask != data.features[0].mask)
            throw TrainingError("train: inconsistent feature masks");
        m.x.push_back(data.features[i].active_values());
        m.y.push_back(static_cast<int>(data.labels[i]));
    }
    return m;
}

void check_class_counts(const std::vector<int>& y) {
    std::array<int, kNumActivities> counts{};
    for (int v : y) counts[v]++;
    int present = 0;
    for (int c : counts)
        if (c > 0) ++present;
    if (present < 2) throw TrainingError("train: at least 2 classes required");
    for (int c : counts)
        if (c > 0 && c < 10) throw TrainingError("train: fewer than 10 samples in a class");
}

void forward(const MlpModel& m, const std::vector<double>& z, std::vector<double>& hidden,
             std::array<double, kNumActivities>& probs) {
    hidden.resize(m.hidden_dim);
    for (int h = 0; h < m.hidden_dim; ++h) {
        double a = m.b1[h];
        const double* w = &m.w1[static_cast<std::size_t>(h) * m.input_dim];
        for (int i = 0; i < m.input_dim; ++i) a += w[i] * z[i];
        hidden[h] = std::tanh(a);
    }
    std::array<double, kNumActivities> logits{};
    double max_logit = -1e300;
    for (int o = 0; o < m.output_dim; ++o) {
        double a = m.b2[o];
        const double* w = &m.w2[static_cast<std::size_t>(o) * m.hidden_dim];
        for (int h = 0; h < m.hidden_dim; ++h) a += w[h] * hidden[h];
        logits[o] = a;
        max_logit = std::max(max_logit, a);
    }
    double denom = 0.0;
    for (int o = 0; o < m.output_dim; ++o) {
        probs[o] = std::exp(logits[o] - max_logit);
        denom += probs[o];
    }
    for (int o = 0; o < m.output_dim; ++o) probs[o] /= denom;
}

std::vector<double> standardized(const MlpModel& m, const std::vector<double>& x) {
    std::vector<double> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = (x[i] - m.norm_mean[i]) / m.norm_std[i];
    return z;
}

struct Gradients {
    std::vector<double> w1, b1, w2, b2;

    explicit Gradients(const MlpModel& m)
        : w1(m.w1.size(), 0.0), b1(m.b1.size(), 0.0), w2(m.w2.size(), 0.0), b2(m.b2.size(), 0.0) {}

    void scale(double s) {
        for (double& v : w1) v *= s;
        for (double& v : b1) v *= s;
        for (double& v : w2) v *= s;
        for (double& v : b2) v *= s;
    }
};

// Cross-entropy loss for one standardized sample; accumulates gradients.
double backward(const MlpModel& m, const std::vector<double>& z, int label, Gradients& g) {
    std::vector<double> hidden;
    std::array<double, kNumActivities> probs{};
    forward(m, z, hidden, probs);
    const double loss = -std::log(std::max(probs[label], 1e-300));

    std::array<double, kNumActivities> delta_out{};
    for (int o = 0; o < m.output_dim; ++o) delta_out[o] = probs[o] - (o == label ? 1.0 : 0.0);

    std::vector<double> delta_hidden(m.hidden_dim, 0.0);
    for (int o = 0; o < m.output_dim; ++o) {
        double* gw = &g.w2[static_cast<std::size_t>(o) * m.hidden_dim];
        const double* w = &m.w2[static_cast<std::size_t>(o) * m.hidden_dim];
        for (int h = 0; h < m.hidden_dim; ++h) {
            gw[h] += delta_out[o] * hidden[h];
            delta_hidden[h] += delta_out[o] * w[h];
        }
        g.b2[o] += delta_out[o];
    }
    for (int h = 0; h < m.hidden_dim; ++h) {
        const double da = delta_hidden[h] * (1.0 - hidden[h] * hidden[h]);
        double* gw = &g.w1[static_cast<std::size_t>(h) * m.input_dim];
        for (int i = 0; i < m.input_dim; ++i) gw[i] += da * z[i];
        g.b1[h] += da;
    }
    return loss;
}

MlpModel train_indices(const Matrix& data, const std::vector<int>& idx, const TrainConfig& cfg,
                       const FeatureMask& mask) {
    const int input_dim = static_cast<int>(data.x.empty() ? 0 : data.x[0].size());
    MlpModel m;
    m.input_dim = input_dim;
    m.hidden_dim = cfg.hidden_dim;
    m.output_dim = kNumActivities;
    m.mask = mask;
    m.seed = cfg.seed;
    m.norm_mean.assign(input_dim, 0.0);
    m.norm_std.assign(input_dim, 1.0);

    // Standardization from the training subset only.
    const double n = static_cast<double>(idx.size());
    for (int i : idx)
        for (int d = 0; d < input_dim; ++d) m.norm_mean[d] += data.x[i][d];
    for (int d = 0; d < input_dim; ++d) m.norm_mean[d] /= n;
    std::vector<double> ss(input_dim, 0.0);
    for (int i : idx)
        for (int d = 0; d < input_dim; ++d) {
            const double c = data.x[i][d] - m.norm_mean[d];
            ss[d] += c * c;
        }
    for (int d = 0; d < input_dim; ++d) {
        const double sd = std::sqrt(ss[d] / n);
        m.norm_std[d] = sd > 1e-12 ? sd : 1.0;
    }

    std::vector<std::vector<double>> z;
    z.reserve(idx.size());
    for (int i : idx) z.push_back(standardized(m, data.x[i]));

    Rng rng(cfg.seed);
    auto glorot = [&](std::vector<double>& w, int fan_in, int fan_out) {
        const double limit = std::sqrt(6.0 / (fan_in + fan_out));
        for (double& v : w) v = rng.uniform(-limit, limit);
    };
    m.w1.resize(static_cast<std::size_t>(m.hidden_dim) * input_dim);
    m.b1.assign(m.hidden_dim, 0.0);
    m.w2.resize(static_cast<std::size_t>(m.output_dim) * m.hidden_dim);
    m.b2.assign(m.output_dim, 0.0);
    glorot(m.w1, input_dim, m.hidden_dim);
    glorot(m.w2, m.hidden_dim, m.output_dim);

    std::vector<int> order(idx.size());
    std::iota(order.begin(), order.end(), 0);
    const int batch = std::max(1, cfg.batch_size);

    double best_loss = 1e300;
    int stale = 0;
    for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
        // Fisher-Yates with our own rng keeps runs reproducible everywhere.
        for (int i = static_cast<int>(order.size()) - 1; i > 0; --i)
            std::swap(order[i], order[rng.uniform_int(i + 1)]);

        double epoch_loss = 0.0;
        for (std::size_t start = 0; start < order.size(); start += batch) {
            const std::size_t end = std::min(order.size(), start + batch);
            Gradients g(m);
            for (std::size_t k = start; k < end; ++k)
                epoch_loss += backward(m, z[order[k]], data.y[idx[order[k]]], g);
            g.scale(1.0 / static_cast<double>(end - start));
            const double lr = cfg.learning_rate;
            for (std::size_t k = 0; k < m.w1.size(); ++k) m.w1[k] -= lr * g.w1[k];
            for (std::size_t k = 0; k < m.b1.size(); ++k) m.b1[k] -= lr * g.b1[k];
            for (std::size_t k = 0; k < m.w2.size(); ++k) m.w2[k] -= lr * g.w2[k];
            for (std::size_t k = 0; k < m.b2.size(); ++k) m.b2[k] -= lr * g.b2[k];
        }
        if (cfg.patience > 0) {
            if (epoch_loss < best_loss - 1e-9) {
                best_loss = epoch_loss;
                stale = 0;
            } else if (++stale >= cfg.patience) {
                break;
            }
        }
    }
    return m;
}

int predict_class(const MlpModel& m, const std::vector<double>& x) {
    std::vector<double> hidden;
    std::array<double, kNumActivities> probs{};
    forward(m, standardized(m, x), hidden, probs);
    // Ties prefer Other over Rumination over Grazing.
    int best = static_cast<int>(Activity::Other);
    for (int c : {static_cast<int>(Activity::Rumination), static_cast<int>(Activity::Grazing)})
        if (probs[c] > probs[best]) best = c;
    return best;
}

}  // namespace

MlpModel fit_raw(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                 const TrainConfig& cfg) {
    if (x.empty() || x.size() != y.size()) throw TrainingError("fit_raw: bad input");
    Matrix m;
    m.x = x;
    m.y = y;
    std::vector<int> all(x.size());
    std::iota(all.begin(), all.end(), 0);
    return train_indices(m, all, cfg, FeatureMask{});
}

int predict_raw(const MlpModel& model, const std::vector<double>& x) {
    return predict_class(model, x);
}

std::vector<std::vector<int>> make_folds(int n, int k, uint32_t seed) {
    if (k < 2) throw TrainingError("make_folds: at least 2 folds required");
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(mix_seed(seed, 0x5eedf01d));
    for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng.uniform_int(i + 1)]);
    std::vector<std::vector<int>> folds(k);
    for (int i = 0; i < n; ++i) folds[i % k].push_back(order[i]);
    return folds;
}

CrossValResult cross_validate(const LabeledFeatures& data, const TrainConfig& cfg) {
    const Matrix m = to_matrix(data);
    check_class_counts(m.y);
    const int n = static_cast<int>(m.x.size());
    const auto folds = make_folds(n, cfg.folds, cfg.seed);

    CrossValResult res;
    res.predictions.assign(n, -1);
    long correct_total = 0;
    for (std::size_t f = 0; f < folds.size(); ++f) {
        std::vector<char> held(n, 0);
        for (int i : folds[f]) held[i] = 1;
        std::vector<int> train_idx;
        train_idx.reserve(n - folds[f].size());
        for (int i = 0; i < n; ++i)
            if (!held[i]) train_idx.push_back(i);

        TrainConfig fold_cfg = cfg;
        fold_cfg.seed = mix_seed(cfg.seed, static_cast<uint32_t>(f) + 1);
        const MlpModel model = train_indices(m, train_idx, fold_cfg, data.features[0].mask);

        long correct = 0;
        for (int i : folds[f]) {
            res.predictions[i] = predict_class(model, m.x[i]);
            if (res.predictions[i] == m.y[i]) ++correct;
        }
        correct_total += correct;
        res.fold_accuracy.push_back(folds[f].empty()
                                        ? 0.0
                                        : static_cast<double>(correct) / folds[f].size());
    }
    res.accuracy = n > 0 ? static_cast<double>(correct_total) / n : 0.0;
    return res;
}

MlpModel train(const LabeledFeatures& data, const TrainConfig& cfg) {
    const Matrix m = to_matrix(data);
    check_class_counts(m.y);

    const CrossValResult cv = cross_validate(data, cfg);

    std::vector<int> all(m.x.size());
    std::iota(all.begin(), all.end(), 0);
    MlpModel model = train_indices(m, all, cfg, data.features[0].mask);
    model.fold_accuracy = cv.fold_accuracy;
    return model;
}

Classification classify(const MlpModel& model, const FeatureVector& fv) {
    const std::vector<double> x = fv.active_values();
    if (static_cast<int>(x.size()) != model.input_dim)
        throw ModelError("classify: feature dimension does not match model");

    Classification c;
    std::vector<double> hidden;
    forward(model, standardized(model, x), hidden, c.scores);
    int best = static_cast<int>(Activity::Other);
    for (int cls : {static_cast<int>(Activity::Rumination), static_cast<int>(Activity::Grazing)})
        if (c.scores[cls] > c.scores[best]) best = cls;
    c.label = static_cast<Activity>(best);
    return c;
}

double gradient_check(const MlpModel& model, const FeatureVector& fv, Activity label) {
    const std::vector<double> x = fv.active_values();
    if (static_cast<int>(x.size()) != model.input_dim)
        throw ModelError("gradient_check: feature dimension does not match model");
    const std::vector<double> z = standardized(model, x);
    const int y = static_cast<int>(label);

    Gradients analytic(model);
    backward(model, z, y, analytic);

    auto loss_at = [&](const MlpModel& m) {
        std::vector<double> hidden;
        std::array<double, kNumActivities> probs{};
        forward(m, z, hidden, probs);
        return -std::log(std::max(probs[y], 1e-300));
    };

    const double h = 1e-5;
    double worst = 0.0;
    auto probe = [&](std::vector<double> MlpModel::* member, const std::vector<double>& g) {
        MlpModel scratch = model;
        auto& w = scratch.*member;
        for (std::size_t k = 0; k < w.size(); ++k) {
            const double orig = w[k];
            w[k] = orig + h;
            const double lp = loss_at(scratch);
            w[k] = orig - h;
            const double lm = loss_at(scratch);
            w[k] = orig;
            const double numeric = (lp - lm) / (2.0 * h);
            // Floor the denominator: for near-zero gradients (saturated units)
            // the comparison degrades to an absolute check at the 1e-4 scale.
            const double denom = std::max({std::abs(numeric), std::abs(g[k]), 1e-4});
            worst = std::max(worst, std::abs(numeric - g[k]) / denom);
        }
    };
    probe(&MlpModel::w1, analytic.w1);
    probe(&MlpModel::b1, analytic.b1);
    probe(&MlpModel::w2, analytic.w2);
    probe(&MlpModel::b2, analytic.b2);
    return worst;
}

namespace {

void write_vector(std::ostream& os, const char* name, const std::vector<double>& v) {
    os << name << ' ' << v.size();
    char buf[40];
    for (double x : v) {
        std::snprintf(buf, sizeof buf, " %a", x);
        os << buf;
    }
    os << '\n';
}

std::vector<double> read_vector(std::istream& is, const std::string& expect) {
    std::string name;
    std::size_t count = 0;
    if (!(is >> name >> count) || name != expect)
        throw FormatError("model file: expected section " + expect);
    std::vector<double> v(count);
    std::string tok;
    for (std::size_t i = 0; i < count; ++i) {
        if (!(is >> tok)) throw FormatError("model file: truncated section " + expect);
        v[i] = std::strtod(tok.c_str(), nullptr);
    }
    return v;
}

}  // namespace

void save_model(const MlpModel& model, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw FormatError("cannot open model file for writing: " + path);
    os << "jmfar-mlp 1\n";
    os << "dims " << model.input_dim << ' ' << model.hidden_dim << ' ' << model.output_dim
       << '\n';
    os << "mask " << mask_to_string(model.mask) << '\n';
    os << "seed " << model.seed << '\n';
    write_vector(os, "norm_mean", model.norm_mean);
    write_vector(os, "norm_std", model.norm_std);
    write_vector(os, "w1", model.w1);
    write_vector(os, "b1", model.b1);
    write_vector(os, "w2", model.w2);
    write_vector(os, "b2", model.b2);
    write_vector(os, "fold_accuracy", model.fold_accuracy);
    if (!os) throw FormatError("failed writing model file: " + path);
}

MlpModel load_model(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw FormatError("cannot open model file: " + path);
    std::string magic;
    int version = 0;
    if (!(is >> magic >> version) || magic != "jmfar-mlp")
        throw FormatError("not a model file: " + path);
    if (version != 1) throw UnsupportedError("unsupported model version");

    MlpModel m;
    std::string key;
    if (!(is >> key >> m.input_dim >> m.hidden_dim >> m.output_dim) || key != "dims")
        throw FormatError("model file: bad dims");
    std::string mask_str;
    if (!(is >> key >> mask_str) || key != "mask") throw FormatError("model file: bad mask");
    m.mask = mask_from_name(mask_str);
    if (!(is >> key >> m.seed) || key != "seed") throw FormatError("model file: bad seed");
    m.norm_mean = read_vector(is, "norm_mean");
    m.norm_std = read_vector(is, "norm_std");
    m.w1 = read_vector(is, "w1");
    m.b1 = read_vector(is, "b1");
    m.w2 = read_vector(is, "w2");
    m.b2 = read_vector(is, "b2");
    m.fold_accuracy = read_vector(is, "fold_accuracy");

    const auto expect_w1 = static_cast<std::size_t>(m.hidden_dim) * m.input_dim;
    const auto expect_w2 = static_cast<std::size_t>(m.output_dim) * m.hidden_dim;
    if (m.w1.size() != expect_w1 || m.w2.size() != expect_w2 ||
        m.b1.size() != static_cast<std::size_t>(m.hidden_dim) ||
        m.b2.size() != static_cast<std::size_t>(m.output_dim) ||
        m.norm_mean.size() != static_cast<std::size_t>(m.input_dim) ||
        m.norm_std.size() != m.norm_mean.size() ||
        mask_active_count(m.mask) != m.input_dim)
        throw FormatError("model file: inconsistent dimensions");
    return m;
}

}  // namespace jmfar
