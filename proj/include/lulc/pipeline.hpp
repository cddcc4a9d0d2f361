#pragma once

#include <string>

#include "lulc/config.hpp"
#include "lulc/feature_matrix.hpp"
#include "lulc/hgpso.hpp"
#include "lulc/lstm.hpp"
#include "lulc/metrics.hpp"

namespace lulc {

// Artifact file names inside the run's output directory.
inline constexpr const char* kFeaturesBinary = "features.lulcf";
inline constexpr const char* kFeaturesCsv = "features.csv";
inline constexpr const char* kClassNames = "class_names.txt";
inline constexpr const char* kExtractLog = "extract.log";
inline constexpr const char* kMaskFile = "mask.txt";
inline constexpr const char* kTraceCsv = "trace.csv";
inline constexpr const char* kSelectedBinary = "selected.lulcf";
inline constexpr const char* kModelFile = "model.lulcm";
inline constexpr const char* kLossCsv = "loss_trace.csv";
inline constexpr const char* kReportCsv = "report.csv";
inline constexpr const char* kConfusionCsv = "confusion.csv";
inline constexpr const char* kEffectiveConfig = "effective_config.txt";
inline constexpr const char* kManifest = "manifest.txt";

/// Generates the synthetic corpus into cfg.dataset.path.
void cmd_synth(const PipelineConfig& cfg);

/// Ingest + preprocess + descriptors; writes the feature files, class names,
/// and an extraction log.
FeatureMatrix cmd_extract(const PipelineConfig& cfg);

/// Runs feature selection over the extracted features; writes mask, trace,
/// and the selected submatrix.
SwarmResult cmd_select(const PipelineConfig& cfg);

/// Trains on the train side of the row split; writes model + loss trace.
/// skip_select trains on the full feature set instead of the selected one.
TrainResult cmd_train(const PipelineConfig& cfg, bool skip_select);

/// Evaluates the saved model on the configured scope of the row split;
/// writes report + confusion CSVs.
EvalReport cmd_eval(const PipelineConfig& cfg, bool skip_select);

/// extract -> select -> train -> eval, then writes a manifest of artifact
/// content hashes. skip_select drops the selection stage.
EvalReport cmd_pipeline(const PipelineConfig& cfg, bool skip_select);

} // namespace lulc
