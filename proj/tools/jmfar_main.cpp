// jmfar: recognize grazing and rumination bouts in foraging sound recordings.
//
// Subcommands: detect | features | train | select | classify | evaluate |
// cost | synth. All outputs are deterministic for a given --seed.
// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "jmfar/cost_model.hpp"
#include "jmfar/csv_io.hpp"
#include "jmfar/errors.hpp"
#include "jmfar/evaluation.hpp"
#include "jmfar/ga_select.hpp"
#include "jmfar/pipeline.hpp"
#include "jmfar/rng.hpp"
#include "jmfar/synth.hpp"
#include "jmfar/wav.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace jmfar;

namespace {

// ---------------------------------------------------------------------------
// configuration file: `key = value` lines, # comments

void apply_config_entry(PipelineConfig& cfg, const std::string& key, const std::string& value) {
    auto num = [&] {
        try {
            return std::stod(value);
        } catch (const std::exception&) {
            throw ConfigError("config: bad number for " + key + ": " + value);
        }
    };
    if (key == "detector.decimated_rate_hz") cfg.detector.decimated_rate_hz = num();
    else if (key == "detector.lowpass_cutoff_hz") cfg.detector.lowpass_cutoff_hz = num();
    else if (key == "detector.threshold_alpha") cfg.detector.threshold_alpha = num();
    else if (key == "detector.threshold_floor") cfg.detector.threshold_floor = num();
    else if (key == "detector.min_event_duration_s") cfg.detector.min_event_duration_s = num();
    else if (key == "detector.refractory_s") cfg.detector.refractory_s = num();
    else if (key == "detector.mean_window_s") cfg.detector.mean_window_s = num();
    else if (key == "segment_len_s") cfg.segment_len_s = num();
    else if (key == "variant") cfg.mask = mask_from_name(value);
    else if (key == "seed") cfg.seed = static_cast<uint32_t>(num());
    else throw ConfigError("config: unknown key " + key);
}

PipelineConfig load_config(const std::string& explicit_path) {
    PipelineConfig cfg;
    std::string path = explicit_path;
    if (path.empty()) {
        if (const char* env = std::getenv("JMFAR_CONFIG")) path = env;
    }
    if (path.empty()) return cfg;

    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path);
    std::string line;
    while (std::getline(is, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) apply_config_entry(cfg, key, value);
    }
    return cfg;
}

struct DetectorOverrides {
    std::optional<double> alpha, floor, min_dur, refractory, rate, cutoff;

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--alpha", alpha, "Threshold multiplier on the running envelope mean");
        cmd->add_option("--floor", floor, "Additive threshold floor (envelope units)");
        cmd->add_option("--min-duration", min_dur, "Minimum event duration [s]");
        cmd->add_option("--refractory", refractory, "Minimum onset separation [s]");
        cmd->add_option("--envelope-rate", rate, "Envelope rate [Hz]");
        cmd->add_option("--cutoff", cutoff, "Envelope low-pass cutoff [Hz]");
    }
    void apply(DetectorConfig& d) const {
        if (alpha) d.threshold_alpha = *alpha;
        if (floor) d.threshold_floor = *floor;
        if (min_dur) d.min_event_duration_s = *min_dur;
        if (refractory) d.refractory_s = *refractory;
        if (rate) d.decimated_rate_hz = *rate;
        if (cutoff) d.lowpass_cutoff_hz = *cutoff;
    }
};

LabeledFeatures load_labeled(const std::string& features_path, const std::string& labels_path,
                             const FeatureMask& mask, double segment_len_s) {
    const auto blocks = read_block_csv(labels_path);
    LabeledFeatures data;
    for (FeatureVector fv : read_feature_csv(features_path)) {
        fv.mask = mask;
        for (int i = 0; i < kNumFeatures; ++i)
            if (!mask[i]) fv.values[i] = 0.0;
        data.labels.push_back(label_for_segment(blocks, fv.segment_start_s, segment_len_s));
        data.features.push_back(std::move(fv));
    }
    return data;
}

json block_metrics_json(const BlockMetrics& m) {
    return json{{"FNR", m.fnr},   {"FDR", m.fdr},   {"F_b", m.f_b}, {"M_b", m.m_b},
                {"D_b", m.d_b},   {"I_b", m.i_b},   {"U_f", m.u_f}, {"O_f", m.o_f},
                {"F_f", m.f_f},   {"M_f", m.m_f},   {"D_f", m.d_f}, {"I_f", m.i_f}};
}

int run_classify_one(const std::string& input, const std::string& output,
                     const PipelineConfig& cfg, const MlpModel& model) {
    const RawAudio audio = read_wav(input);
    const PipelineResult r = run_pipeline(audio, cfg, model);
    write_block_csv(output, r.blocks);
    std::ostringstream line;
    line << input << ": " << r.blocks.size() << " blocks, " << r.features.size()
         << " segments -> " << output << '\n';
    std::cout << line.str();
    return 0;
}

// ---------------------------------------------------------------------------

int run(int argc, char** argv) {
    CLI::App app{"Jaw-movement segment-based foraging activity recognizer"};
    app.require_subcommand(1);

    std::string config_path;  // falls back to $JMFAR_CONFIG when not given
    app.add_option("--config", config_path, "Configuration file (key = value lines)");

    // ---- detect ----
    auto* detect_cmd = app.add_subcommand("detect", "Detect jaw-movement events in a WAV file");
    std::string in_path, out_path;
    DetectorOverrides det;
    detect_cmd->add_option("--in", in_path, "Input WAV (PCM 16-bit)")->required();
    detect_cmd->add_option("--out", out_path, "Output event CSV")->required();
    det.add_flags(detect_cmd);

    // ---- features ----
    auto* features_cmd = app.add_subcommand("features", "Extract segment features from a WAV file");
    std::string feat_in, feat_out, feat_variant, feat_events;
    std::optional<double> feat_seg_len;
    DetectorOverrides feat_det;
    features_cmd->add_option("--in", feat_in, "Input WAV")->required();
    features_cmd->add_option("--out", feat_out, "Output feature CSV")->required();
    features_cmd->add_option("--variant", feat_variant,
                             "jmfar | jmfar-sel | jmfar-ns | 21-bit mask");
    features_cmd->add_option("--events", feat_events,
                             "Use precomputed events instead of detecting");
    features_cmd->add_option("--segment-len", feat_seg_len, "Segment length [s]");
    feat_det.add_flags(features_cmd);

    // ---- train ----
    auto* train_cmd = app.add_subcommand("train", "Train the activity classifier");
    std::string tr_features, tr_labels, tr_variant, tr_model_out;
    std::optional<double> tr_seg_len;
    std::optional<uint32_t> tr_seed;
    std::optional<int> tr_epochs, tr_hidden, tr_folds;
    std::optional<double> tr_lr;
    train_cmd->add_option("--features", tr_features, "Feature CSV")->required();
    train_cmd->add_option("--labels", tr_labels, "Ground-truth block CSV")->required();
    train_cmd->add_option("--out", tr_model_out, "Output model file")->required();
    train_cmd->add_option("--variant", tr_variant, "Feature variant or mask");
    train_cmd->add_option("--segment-len", tr_seg_len, "Segment length [s]");
    train_cmd->add_option("--seed", tr_seed, "Training seed");
    train_cmd->add_option("--epochs", tr_epochs, "Training epochs");
    train_cmd->add_option("--hidden", tr_hidden, "Hidden layer width");
    train_cmd->add_option("--folds", tr_folds, "Cross-validation folds");
    train_cmd->add_option("--learning-rate", tr_lr, "Learning rate");

    // ---- select ----
    auto* select_cmd = app.add_subcommand("select", "GA wrapper feature selection");
    std::string se_features, se_labels, se_out;
    std::optional<double> se_seg_len;
    std::optional<uint32_t> se_seed;
    std::optional<int> se_population, se_generations, se_folds, se_votes;
    select_cmd->add_option("--features", se_features, "Feature CSV")->required();
    select_cmd->add_option("--labels", se_labels, "Ground-truth block CSV")->required();
    select_cmd->add_option("--out", se_out, "Write the voted mask to this file");
    select_cmd->add_option("--segment-len", se_seg_len, "Segment length [s]");
    select_cmd->add_option("--seed", se_seed, "Search seed");
    select_cmd->add_option("--population", se_population, "GA population size");
    select_cmd->add_option("--generations", se_generations, "GA generations");
    select_cmd->add_option("--folds", se_folds, "Voting folds");
    select_cmd->add_option("--min-votes", se_votes, "Fold votes needed to keep a feature");

    // ---- classify ----
    auto* classify_cmd = app.add_subcommand("classify", "Run the full pipeline on recordings");
    std::vector<std::string> cl_inputs;
    std::string cl_model, cl_out, cl_out_dir;
    int cl_jobs = 1;
    DetectorOverrides cl_det;
    classify_cmd->add_option("inputs", cl_inputs, "Input WAV files")->required();
    classify_cmd->add_option("--model", cl_model, "Trained model file")->required();
    classify_cmd->add_option("--out", cl_out, "Output block CSV (single input only)");
    classify_cmd->add_option("--out-dir", cl_out_dir, "Output directory for block CSVs");
    classify_cmd->add_option("--jobs", cl_jobs, "Parallel recordings")->check(CLI::Range(1, 64));
    cl_det.add_flags(classify_cmd);

    // ---- evaluate ----
    auto* eval_cmd = app.add_subcommand("evaluate", "Score predicted blocks against ground truth");
    std::string ev_truth, ev_pred, ev_report, ev_csv, ev_spider, ev_method = "jmfar";
    std::optional<double> ev_len;
    bool ev_exclude_other = false;
    eval_cmd->add_option("--truth", ev_truth, "Ground-truth block CSV")->required();
    eval_cmd->add_option("--pred", ev_pred, "Predicted block CSV")->required();
    eval_cmd->add_option("--len", ev_len, "Recording length [s]; default: max block end");
    eval_cmd->add_option("--report", ev_report, "Write a JSON report");
    eval_cmd->add_option("--csv", ev_csv, "Write per-class scores as CSV");
    eval_cmd->add_option("--spider", ev_spider, "Write spider-plot rows (metric,method,value)");
    eval_cmd->add_option("--method-name", ev_method, "Method label for spider rows");
    eval_cmd->add_flag("--exclude-other", ev_exclude_other,
                       "Drop the Other class from the weighted average");

    // ---- cost ----
    auto* cost_cmd = app.add_subcommand("cost", "Operations-per-second ledger for a variant");
    std::string co_variant = "jmfar";
    bool co_json = false;
    std::optional<double> co_rate, co_seg, co_events;
    std::optional<int> co_hidden, co_input;
    bool co_no_classifier = false;
    cost_cmd->add_option("--variant", co_variant, "jmfar | jmfar-sel | jmfar-ns | 21-bit mask");
    cost_cmd->add_flag("--json", co_json, "Emit JSON instead of a table");
    cost_cmd->add_option("--sampling-rate", co_rate, "Input rate [Hz]");
    cost_cmd->add_option("--segment-len", co_seg, "Segment length [s]");
    cost_cmd->add_option("--events-per-second", co_events, "Worst-case event rate");
    cost_cmd->add_option("--mlp-hidden", co_hidden, "Classifier hidden width");
    cost_cmd->add_option("--mlp-input", co_input, "Classifier input width");
    cost_cmd->add_flag("--no-classifier", co_no_classifier, "Exclude the classifier stage");

    // ---- synth ----
    auto* synth_cmd = app.add_subcommand("synth", "Generate a labeled synthetic corpus");
    std::string sy_out_dir = ".", sy_mix;
    uint32_t sy_seed = 1;
    int sy_per_class = 1;
    double sy_duration = 300.0, sy_snr = 0.0;
    bool sy_audio = false;
    int sy_audio_rate = 8000;
    synth_cmd->add_option("--out", sy_out_dir, "Output directory")->required();
    synth_cmd->add_option("--seed", sy_seed, "Corpus seed");
    synth_cmd->add_option("--per-class", sy_per_class, "Recordings per activity class");
    synth_cmd->add_option("--duration", sy_duration, "Recording length [s]");
    synth_cmd->add_option("--snr", sy_snr, "Envelope SNR [dB]; 0 disables noise");
    synth_cmd->add_flag("--audio", sy_audio, "Also render WAV audio");
    synth_cmd->add_option("--audio-rate", sy_audio_rate, "Audio sample rate [Hz]");
    synth_cmd->add_option("--mix", sy_mix,
                          "Extra mixed recording, e.g. rumination:900,grazing:900");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // 1 for any usage error, 0 for --help
    }
    PipelineConfig cfg = load_config(config_path);

    if (detect_cmd->parsed()) {
        det.apply(cfg.detector);
        const RawAudio audio = read_wav(in_path);
        const RawAudio conditioned = detrend(audio);
        const EnvelopeSignal env = compute_envelope(conditioned, cfg.detector);
        const auto events = detect_events(env, cfg.detector);
        write_event_csv(out_path, events);
        std::cout << events.size() << " events -> " << out_path << '\n';
        return 0;
    }

    if (features_cmd->parsed()) {
        feat_det.apply(cfg.detector);
        if (feat_seg_len) cfg.segment_len_s = *feat_seg_len;
        if (!feat_variant.empty()) cfg.mask = mask_from_name(feat_variant);
        const RawAudio audio = read_wav(feat_in);
        const RawAudio conditioned = detrend(audio);
        const EnvelopeSignal env = compute_envelope(conditioned, cfg.detector);
        const auto events =
            feat_events.empty() ? detect_events(env, cfg.detector) : read_event_csv(feat_events);
        std::vector<FeatureVector> rows;
        for (const SegmentBuffer& seg : segment_recording(env, events, cfg.segment_len_s))
            rows.push_back(extract_features(seg, cfg.mask));
        write_feature_csv(feat_out, rows);
        std::cout << rows.size() << " segments -> " << feat_out << '\n';
        return 0;
    }

    if (train_cmd->parsed()) {
        if (!tr_variant.empty()) cfg.mask = mask_from_name(tr_variant);
        if (tr_seg_len) cfg.segment_len_s = *tr_seg_len;
        TrainConfig tc;
        tc.seed = tr_seed.value_or(cfg.seed);
        if (tr_epochs) tc.max_epochs = *tr_epochs;
        if (tr_hidden) tc.hidden_dim = *tr_hidden;
        if (tr_folds) tc.folds = *tr_folds;
        if (tr_lr) tc.learning_rate = *tr_lr;
        const LabeledFeatures data =
            load_labeled(tr_features, tr_labels, cfg.mask, cfg.segment_len_s);
        const MlpModel model = train(data, tc);
        save_model(model, tr_model_out);
        std::cout << "trained on " << data.size() << " segments, input dim " << model.input_dim
                  << "\nfold accuracy:";
        for (double a : model.fold_accuracy) std::cout << ' ' << a;
        std::cout << "\nmodel -> " << tr_model_out << '\n';
        return 0;
    }

    if (select_cmd->parsed()) {
        if (se_seg_len) cfg.segment_len_s = *se_seg_len;
        GaConfig gc;
        gc.seed = se_seed.value_or(cfg.seed);
        if (se_population) gc.population = *se_population;
        if (se_generations) gc.generations = *se_generations;
        if (se_folds) gc.folds = *se_folds;
        if (se_votes) gc.min_fold_votes = *se_votes;
        const LabeledFeatures data = load_labeled(
            se_features, se_labels, variant_mask(Variant::Jmfar), cfg.segment_len_s);
        const SelectionResult r = select_features(data, gc);
        std::cout << "votes:";
        for (int i = 0; i < kNumFeatures; ++i)
            if (r.votes[i] > 0) std::cout << ' ' << feature_name(i) << '=' << r.votes[i];
        std::cout << "\nmask: " << mask_to_string(r.mask) << " ("
                  << mask_active_count(r.mask) << " features)\n";
        if (!se_out.empty()) {
            std::ofstream os(se_out);
            os << mask_to_string(r.mask) << '\n';
            if (!os) throw FormatError("failed writing " + se_out);
        }
        return 0;
    }

    if (classify_cmd->parsed()) {
        cl_det.apply(cfg.detector);
        const MlpModel model = load_model(cl_model);
        cfg.mask = model.mask;
        if (!cl_out.empty() && cl_inputs.size() != 1)
            throw ConfigError("--out needs exactly one input; use --out-dir");

        auto output_for = [&](const std::string& input) {
            if (!cl_out.empty()) return cl_out;
            const fs::path dir = cl_out_dir.empty() ? fs::path(".") : fs::path(cl_out_dir);
            return (dir / fs::path(input).stem()).string() + ".blocks.csv";
        };
        if (!cl_out_dir.empty()) fs::create_directories(cl_out_dir);

        std::atomic<std::size_t> next{0};
        std::atomic<int> failures{0};
        auto worker = [&] {
            for (std::size_t i = next.fetch_add(1); i < cl_inputs.size();
                 i = next.fetch_add(1)) {
                try {
                    run_classify_one(cl_inputs[i], output_for(cl_inputs[i]), cfg, model);
                } catch (const Error& e) {
                    std::cerr << cl_inputs[i] << ": " << e.what() << '\n';
                    failures.fetch_add(1);
                }
            }
        };
        const int jobs = std::min<int>(cl_jobs, static_cast<int>(cl_inputs.size()));
        std::vector<std::thread> pool;
        for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
        worker();
        for (auto& t : pool) t.join();
        if (failures.load() > 0) throw Error("classification failed for some inputs");
        return 0;
    }

    if (eval_cmd->parsed()) {
        const auto truth = read_block_csv(ev_truth);
        const auto pred = read_block_csv(ev_pred);
        double len = ev_len.value_or(0.0);
        if (len <= 0.0) {
            for (const auto& b : truth) len = std::max(len, b.end_s);
            for (const auto& b : pred) len = std::max(len, b.end_s);
            len = std::ceil(len);
        }
        const EvalReport r = evaluate(truth, pred, len, !ev_exclude_other);

        std::cout << "weighted F1: " << r.f1.weighted << '\n';
        for (int c = 0; c < kNumActivities; ++c)
            std::cout << "  " << to_string(static_cast<Activity>(c))
                      << " F1: " << r.f1.per_class[c] << " (support " << r.f1.support[c]
                      << ")\n";

        json report{{"recording_len_s", r.recording_len_s},
                    {"weighted_f1", r.f1.weighted},
                    {"per_class_f1", json::object()},
                    {"support", json::object()},
                    {"confusion", json::array()},
                    {"block_metrics", json::object()}};
        for (int c = 0; c < kNumActivities; ++c) {
            const char* name = to_string(static_cast<Activity>(c));
            report["per_class_f1"][name] = r.f1.per_class[c];
            report["support"][name] = r.f1.support[c];
            report["confusion"].push_back(r.confusion[c]);
            report["block_metrics"][name] = block_metrics_json(r.per_class[c]);
        }
        if (!ev_report.empty()) {
            std::ofstream os(ev_report);
            os << report.dump(2) << '\n';
            if (!os) throw FormatError("failed writing " + ev_report);
        }
        if (!ev_csv.empty()) {
            std::ofstream os(ev_csv);
            os << "class,f1,support\n";
            for (int c = 0; c < kNumActivities; ++c)
                os << to_string(static_cast<Activity>(c)) << ',' << r.f1.per_class[c] << ','
                   << r.f1.support[c] << '\n';
            if (!os) throw FormatError("failed writing " + ev_csv);
        }
        if (!ev_spider.empty()) {
            std::ofstream os(ev_spider);
            os << "metric,method,value\n";
            for (int c = 0; c < kNumActivities; ++c) {
                const std::string name = to_string(static_cast<Activity>(c));
                const json jm = block_metrics_json(r.per_class[c]);
                for (const auto& [metric, value] : jm.items())
                    os << name << '.' << metric << ',' << ev_method << ','
                       << value.get<double>() << '\n';
            }
            if (!os) throw FormatError("failed writing " + ev_spider);
        }
        return 0;
    }

    if (cost_cmd->parsed()) {
        CostAssumptions a;
        a.mask = mask_from_name(co_variant);
        if (co_rate) a.sampling_rate_hz = *co_rate;
        if (co_seg) a.segment_len_s = *co_seg;
        if (co_events) a.events_per_s = *co_events;
        if (co_hidden) a.mlp_hidden = *co_hidden;
        if (co_input) a.mlp_input = *co_input;
        if (co_no_classifier) a.include_classifier = false;
        const CostReport r = cost(a);

        if (co_json) {
            json j{{"variant", co_variant},
                   {"per_second", json::array()},
                   {"per_segment", json::array()},
                   {"per_second_subtotal", r.per_second_subtotal},
                   {"per_segment_subtotal", r.per_segment_subtotal},
                   {"total_ops_per_s", r.total_ops_per_s},
                   {"ram_bytes", r.ram_bytes}};
            for (const CostItem& it : r.per_second)
                j["per_second"].push_back({{"stage", it.name}, {"ops", it.ops}});
            for (const CostItem& it : r.per_segment)
                j["per_segment"].push_back({{"stage", it.name}, {"ops", it.ops}});
            std::cout << j.dump(2) << '\n';
        } else {
            std::cout << "variant: " << co_variant << "\nper-second stages (ops/s):\n";
            for (const CostItem& it : r.per_second)
                std::cout << "  " << it.name << ": " << static_cast<long long>(it.ops) << '\n';
            std::cout << "per-segment stages (ops/segment):\n";
            for (const CostItem& it : r.per_segment)
                std::cout << "  " << it.name << ": " << static_cast<long long>(it.ops) << '\n';
            std::cout << "subtotals: " << static_cast<long long>(r.per_second_subtotal)
                      << " ops/s + " << static_cast<long long>(r.per_segment_subtotal)
                      << " ops/segment\n";
            std::cout << "total: " << r.total_ops_per_s << " ops/s\n";
            std::cout << "ram: " << r.ram_bytes << " bytes\n";
        }
        return 0;
    }

    if (synth_cmd->parsed()) {
        fs::create_directories(sy_out_dir);
        CorpusOptions opts;
        opts.noise_snr_db = sy_snr;
        opts.render_audio = sy_audio;
        opts.audio_rate_hz = sy_audio_rate;

        std::vector<CorpusEntry> entries;
        std::vector<std::string> names;
        for (int i = 0; i < sy_per_class; ++i)
            for (const ActivityModel& m : {grazing_model(), rumination_model(), other_model()}) {
                entries.push_back({m, sy_duration});
                names.push_back(std::string(to_string(m.label)) + "_" + std::to_string(i));
            }
        const auto corpus = generate_corpus(entries, sy_seed, opts);

        auto dump = [&](const SynthRecording& rec, const std::string& name) {
            const fs::path base = fs::path(sy_out_dir) / name;
            write_block_csv(base.string() + ".labels.csv", rec.blocks);
            write_event_csv(base.string() + ".events.csv", rec.events);
            if (sy_audio) write_wav(base.string() + ".wav", rec.audio);
            std::cout << name << ": " << rec.events.size() << " events, "
                      << rec.blocks.size() << " blocks\n";
        };
        for (std::size_t i = 0; i < corpus.size(); ++i) dump(corpus[i], names[i]);

        if (!sy_mix.empty()) {
            std::vector<CorpusEntry> parts;
            std::stringstream ss(sy_mix);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                const auto colon = tok.find(':');
                if (colon == std::string::npos)
                    throw ConfigError("--mix expects label:seconds pairs");
                const Activity label = activity_from_string(tok.substr(0, colon));
                const double dur = std::stod(tok.substr(colon + 1));
                ActivityModel m = label == Activity::Grazing     ? grazing_model()
                                  : label == Activity::Rumination ? rumination_model()
                                                                  : other_model();
                parts.push_back({m, dur});
            }
            dump(generate_recording(parts, mix_seed(sy_seed, 0xFACE), opts), "mixed_0");
        }
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
}
