#include "lulc/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>

#include "lulc/error.hpp"
#include "lulc/hash.hpp"
#include "lulc/ingest.hpp"
#include "lulc/parallel.hpp"
#include "lulc/preprocess.hpp"
#include "lulc/synth.hpp"

namespace fs = std::filesystem;

namespace lulc {

namespace {

[[noreturn]] void stage_error(const std::string& stage, const std::exception& e) {
    throw Error(stage + ": " + e.what());
}

void prepare_out_dir(const PipelineConfig& cfg) {
    fs::create_directories(cfg.out_dir);
    save_config(fs::path(cfg.out_dir) / kEffectiveConfig, cfg);
}

LabeledDataset load_dataset(const PipelineConfig& cfg) {
    if (cfg.dataset.kind == DatasetKind::directory) return load_directory(cfg.dataset.path);
    return load_raw_tensor(cfg.dataset.tensor, cfg.dataset.manifest);
}

void save_class_names(const fs::path& path, const std::vector<std::string>& names) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open class name file for writing: " + path.string());
    for (const auto& n : names) out << n << '\n';
    if (!out) throw Error("write failed for class name file: " + path.string());
}

std::vector<std::string> load_class_names(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open class name file: " + path.string());
    std::vector<std::string> names;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) names.push_back(line);
    }
    if (names.empty()) throw Error("class name file is empty: " + path.string());
    return names;
}

std::size_t class_count_of(const FeatureMatrix& fm) {
    std::uint32_t mx = 0;
    for (std::uint32_t l : fm.row_labels) mx = std::max(mx, l);
    return static_cast<std::size_t>(mx) + 1;
}

// Train-side features for the classifier; which file depends on whether the
// selection stage ran.
FeatureMatrix load_classifier_features(const PipelineConfig& cfg, bool skip_select) {
    const fs::path dir(cfg.out_dir);
    if (skip_select) return load_feature_binary(dir / kFeaturesBinary);
    const fs::path selected = dir / kSelectedBinary;
    if (!fs::exists(selected))
        throw Error("no selected feature file at " + selected.string() +
                    "; run the selection stage first or skip selection explicitly");
    return load_feature_binary(selected);
}

} // namespace

void cmd_synth(const PipelineConfig& cfg) {
    try {
        cfg.validate();
        if (cfg.dataset.kind != DatasetKind::directory)
            throw Error("corpus generation needs dataset.kind = directory");
        prepare_out_dir(cfg);
        LabeledDataset ds = make_texture_corpus(cfg.synth, cfg.seed);
        write_corpus_png(cfg.dataset.path, ds);
        std::printf("synth: wrote %zu images in %zu classes to %s\n", ds.size(),
                    ds.class_names.size(), cfg.dataset.path.c_str());
    } catch (const Error& e) {
        stage_error("synth", e);
    } catch (const std::exception& e) {
        stage_error("synth", e);
    }
}

FeatureMatrix cmd_extract(const PipelineConfig& cfg) {
    try {
        cfg.validate();
        prepare_out_dir(cfg);
        const auto t0 = std::chrono::steady_clock::now();
        LabeledDataset ds = load_dataset(cfg);

        LabeledDataset prepped;
        prepped.class_names = ds.class_names;
        prepped.labels = ds.labels;
        prepped.images.resize(ds.size());
        parallel_for(ds.size(), [&](std::size_t i) {
            prepped.images[i] = preprocess_image(ds.images[i], cfg.normalization, cfg.equalize);
        });

        FeatureMatrix fm = extract_all(prepped, cfg.descriptors);
        const fs::path dir(cfg.out_dir);
        save_feature_binary(dir / kFeaturesBinary, fm);
        save_feature_csv(dir / kFeaturesCsv, fm);
        save_class_names(dir / kClassNames, ds.class_names);

        const auto t1 = std::chrono::steady_clock::now();
        const double seconds = std::chrono::duration<double>(t1 - t0).count();
        const Image& first = prepped.images.front();
        const std::size_t hog_n = hog_length(first.width, first.height, cfg.descriptors.hog);
        const std::size_t lgb_n = lgbphs_length(cfg.descriptors.gabor, cfg.descriptors.lgbphs);
        std::ofstream log(dir / kExtractLog);
        if (!log) throw Error("cannot open extraction log for writing");
        log << "images: " << fm.rows << " (" << first.width << "x" << first.height << "x"
            << first.channels << ")\n";
        log << "hog dims: " << hog_n << '\n';
        log << "lgbphs dims: " << lgb_n << '\n';
        log << "haralick dims: " << 7 * first.channels << '\n';
        log << "total dims: " << fm.cols << '\n';
        log << "seconds: " << seconds << '\n';
        std::printf("extract: %zu rows x %zu columns\n", fm.rows, fm.cols);
        return fm;
    } catch (const Error& e) {
        stage_error("extract", e);
    } catch (const std::exception& e) {
        stage_error("extract", e);
    }
}

SwarmResult cmd_select(const PipelineConfig& cfg) {
    try {
        cfg.validate();
        prepare_out_dir(cfg);
        const fs::path dir(cfg.out_dir);
        FeatureMatrix fm = load_feature_binary(dir / kFeaturesBinary);
        SwarmResult result = run_swarm(fm, cfg.swarm);
        save_mask(dir / kMaskFile, result.mask, fm.column_tags);
        save_trace_csv(dir / kTraceCsv, result.trace);
        FeatureMatrix selected = select_columns(fm, result.selected_columns());
        save_feature_binary(dir / kSelectedBinary, selected);
        std::printf("select: kept %zu of %zu columns (fitness %.6f)\n",
                    selected_count(result.mask), fm.cols, result.objectives.fitness);
        return result;
    } catch (const Error& e) {
        stage_error("select", e);
    } catch (const std::exception& e) {
        stage_error("select", e);
    }
}

TrainResult cmd_train(const PipelineConfig& cfg, bool skip_select) {
    try {
        cfg.validate();
        prepare_out_dir(cfg);
        const fs::path dir(cfg.out_dir);
        FeatureMatrix fm = load_classifier_features(cfg, skip_select);
        auto [train_idx, test_idx] = split_indices(fm.row_labels, class_count_of(fm), cfg.split);
        FeatureMatrix train_fm = select_rows(fm, train_idx);
        TrainResult result = train_lstm(train_fm, cfg.train, cfg.timesteps, cfg.hidden_dim);
        save_model(dir / kModelFile, result.model);
        save_loss_csv(dir / kLossCsv, result.epoch_loss);
        if (result.epoch_loss.empty())
            std::printf("train: %zu rows, %d epochs\n", train_fm.rows, cfg.train.epochs);
        else
            std::printf("train: %zu rows, %d epochs, final loss %.6f\n", train_fm.rows,
                        cfg.train.epochs, result.epoch_loss.back());
        return result;
    } catch (const Error& e) {
        stage_error("train", e);
    } catch (const std::exception& e) {
        stage_error("train", e);
    }
}

EvalReport cmd_eval(const PipelineConfig& cfg, bool skip_select) {
    try {
        cfg.validate();
        prepare_out_dir(cfg);
        const fs::path dir(cfg.out_dir);
        LstmModel model = load_model(dir / kModelFile);

        // Pick whichever feature file matches the model's input width.
        FeatureMatrix fm;
        bool found = false;
        if (!skip_select && fs::exists(dir / kSelectedBinary)) {
            fm = load_feature_binary(dir / kSelectedBinary);
            found = fm.cols == model.feature_mean.size();
        }
        if (!found) {
            fm = load_feature_binary(dir / kFeaturesBinary);
            if (fm.cols != model.feature_mean.size())
                throw Error("model expects " + std::to_string(model.feature_mean.size()) +
                            " feature columns but the available files have " +
                            std::to_string(fm.cols));
        }

        const std::size_t classes = std::max(class_count_of(fm),
                                             static_cast<std::size_t>(model.classes));
        auto [train_idx, test_idx] = split_indices(fm.row_labels, classes, cfg.split);
        std::vector<std::size_t> rows;
        switch (cfg.eval_scope) {
            case EvalScope::test: rows = test_idx; break;
            case EvalScope::train: rows = train_idx; break;
            case EvalScope::all:
                rows.resize(fm.rows);
                for (std::size_t i = 0; i < fm.rows; ++i) rows[i] = i;
                break;
        }
        FeatureMatrix eval_fm = select_rows(fm, rows);
        std::vector<std::uint32_t> predicted = predict(model, eval_fm);

        std::vector<std::string> names;
        const fs::path names_path = dir / kClassNames;
        if (fs::exists(names_path)) names = load_class_names(names_path);
        if (names.size() != classes) {
            names.clear();
            for (std::size_t c = 0; c < classes; ++c) names.push_back("class_" + std::to_string(c));
        }
        EvalReport rep = report(eval_fm.row_labels, predicted, classes, names);
        save_report_csv(dir / kReportCsv, rep);
        save_confusion_csv(dir / kConfusionCsv, rep.matrix, names);
        std::printf("eval: %zu rows, overall accuracy %.3f%%\n", eval_fm.rows,
                    rep.overall.accuracy);
        return rep;
    } catch (const Error& e) {
        stage_error("eval", e);
    } catch (const std::exception& e) {
        stage_error("eval", e);
    }
}

EvalReport cmd_pipeline(const PipelineConfig& cfg, bool skip_select) {
    cmd_extract(cfg);
    if (!skip_select) cmd_select(cfg);
    cmd_train(cfg, skip_select);
    EvalReport rep = cmd_eval(cfg, skip_select);
    try {
        const fs::path dir(cfg.out_dir);
        std::vector<std::string> names = {kFeaturesBinary, kFeaturesCsv, kClassNames,
                                          kModelFile,      kLossCsv,     kReportCsv,
                                          kConfusionCsv,   kEffectiveConfig};
        if (!skip_select) {
            names.push_back(kMaskFile);
            names.push_back(kTraceCsv);
            names.push_back(kSelectedBinary);
        }
        std::sort(names.begin(), names.end());
        // The extraction log carries wall-clock timing and stays out of the
        // manifest so reruns hash identically.
        std::ofstream out(dir / kManifest);
        if (!out) throw Error("cannot open manifest for writing");
        for (const auto& name : names) out << hash_hex(hash_file(dir / name)) << "  " << name << '\n';
        if (!out) throw Error("write failed for manifest");
    } catch (const Error& e) {
        stage_error("manifest", e);
    } catch (const std::exception& e) {
        stage_error("manifest", e);
    }
    return rep;
}

} // namespace lulc
