#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "lulc/features.hpp"
#include "lulc/hgpso.hpp"
#include "lulc/ingest.hpp"
#include "lulc/lstm.hpp"
#include "lulc/preprocess.hpp"

namespace lulc {

enum class DatasetKind { directory, raw_tensor };
enum class EvalScope { test, train, all };

struct DatasetSource {
    DatasetKind kind = DatasetKind::directory;
    std::string path;     // class-subdirectory tree (directory kind)
    std::string tensor;   // raw tensor file
    std::string manifest; // raw tensor manifest
};

struct SynthSpec {
    int per_class = 200;
    int width = 28;
    int height = 28;
    int channels = 3;

    void validate() const;
};

struct PipelineConfig {
    std::uint64_t seed = 0;
    std::string out_dir = "lulc_out";
    DatasetSource dataset;
    NormalizationSpec normalization;
    bool equalize = true;
    DescriptorSpecs descriptors;
    SwarmConfig swarm;
    TrainConfig train;
    int timesteps = 4;
    int hidden_dim = 32;
    SplitSpec split;
    SynthSpec synth;
    EvalScope eval_scope = EvalScope::test;

    void validate() const;
};

/// Which stage seeds the config text set explicitly; unset ones follow the
/// global seed, including after a command-line seed override.
struct ParsedConfig {
    PipelineConfig config;
    bool swarm_seed_explicit = false;
    bool train_seed_explicit = false;
    bool split_seed_explicit = false;

    void override_seed(std::uint64_t seed);
};

/// Flat "key = value" lines with dotted prefixes; '#' starts a comment.
/// Unknown keys are hard errors. Stage seeds default to the global seed.
ParsedConfig parse_config_text(const std::string& text);
ParsedConfig load_config(const std::filesystem::path& path);

/// Every effective key, fixed order; parsing the result reproduces the config.
std::string serialize_config(const PipelineConfig& cfg);
void save_config(const std::filesystem::path& path, const PipelineConfig& cfg);

} // namespace lulc
