#include "lulc/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "lulc/error.hpp"

namespace lulc {

void SynthSpec::validate() const {
    if (per_class < 1) throw Error("synth.per_class must be >= 1");
    if (width < 1 || height < 1) throw Error("synth image dimensions must be >= 1");
    if (channels < 1 || channels > 16) throw Error("synth.channels must lie in 1..16");
}

void PipelineConfig::validate() const {
    normalization.validate();
    descriptors.validate();
    train.validate();
    split.validate();
    synth.validate();
    if (timesteps < 1) throw Error("train.timesteps must be >= 1");
    if (hidden_dim < 1) throw Error("train.hidden_dim must be >= 1");
    if (out_dir.empty()) throw Error("output directory must not be empty");
    if (dataset.kind == DatasetKind::directory) {
        if (dataset.path.empty()) throw Error("dataset.path is required for directory datasets");
    } else {
        if (dataset.tensor.empty() || dataset.manifest.empty())
            throw Error("dataset.tensor and dataset.manifest are required for raw tensors");
    }
}

void ParsedConfig::override_seed(std::uint64_t seed) {
    config.seed = seed;
    if (!swarm_seed_explicit) config.swarm.r_seed = seed;
    if (!train_seed_explicit) config.train.seed = seed;
    if (!split_seed_explicit) config.split.seed = seed;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
    throw Error("invalid value \"" + value + "\" for config key " + key);
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true") return true;
    if (v == "false") return false;
    bad_value(key, v);
}

long long parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        long long x = std::stoll(v, &pos);
        if (pos != v.size()) bad_value(key, v);
        return x;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        bad_value(key, v);
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        unsigned long long x = std::stoull(v, &pos);
        if (pos != v.size() || (!v.empty() && v[0] == '-')) bad_value(key, v);
        return x;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        bad_value(key, v);
    }
}

double parse_double(const std::string& key, const std::string& v) {
    const char* begin = v.c_str();
    char* end = nullptr;
    double x = std::strtod(begin, &end);
    if (end == begin || *end != '\0') bad_value(key, v);
    return x;
}

std::vector<double> parse_double_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(parse_double(key, trim(cell)));
    if (out.empty()) bad_value(key, v);
    return out;
}

std::vector<std::pair<int, int>> parse_offsets(const std::string& key, const std::string& v) {
    std::vector<std::pair<int, int>> out;
    std::stringstream ss(v);
    std::string pair_text;
    while (std::getline(ss, pair_text, ';')) {
        pair_text = trim(pair_text);
        auto comma = pair_text.find(',');
        if (comma == std::string::npos) bad_value(key, v);
        int dy = static_cast<int>(parse_int(key, trim(pair_text.substr(0, comma))));
        int dx = static_cast<int>(parse_int(key, trim(pair_text.substr(comma + 1))));
        out.emplace_back(dy, dx);
    }
    if (out.empty()) bad_value(key, v);
    return out;
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string join_doubles(const std::vector<double>& vs) {
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) out += ',';
        out += format_g17(vs[i]);
    }
    return out;
}

std::string join_offsets(const std::vector<std::pair<int, int>>& vs) {
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) out += ';';
        out += std::to_string(vs[i].first) + ',' + std::to_string(vs[i].second);
    }
    return out;
}

} // namespace

ParsedConfig parse_config_text(const std::string& text) {
    ParsedConfig parsed;
    PipelineConfig& cfg = parsed.config;
    bool seed_set = false;
    std::uint64_t swarm_seed = 0, train_seed = 0, split_seed = 0;

    std::stringstream lines(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error("config line " + std::to_string(line_no) + " is not key = value: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw Error("config line " + std::to_string(line_no) + " has empty key");

        if (key == "seed") {
            cfg.seed = parse_u64(key, value);
            seed_set = true;
        } else if (key == "out") {
            cfg.out_dir = value;
        } else if (key == "dataset.kind") {
            if (value == "directory")
                cfg.dataset.kind = DatasetKind::directory;
            else if (value == "raw_tensor")
                cfg.dataset.kind = DatasetKind::raw_tensor;
            else
                bad_value(key, value);
        } else if (key == "dataset.path") {
            cfg.dataset.path = value;
        } else if (key == "dataset.tensor") {
            cfg.dataset.tensor = value;
        } else if (key == "dataset.manifest") {
            cfg.dataset.manifest = value;
        } else if (key == "preprocess.normalization") {
            cfg.normalization.kind = normalization_kind_from_string(value);
        } else if (key == "preprocess.new_min") {
            cfg.normalization.new_min = parse_double(key, value);
        } else if (key == "preprocess.new_max") {
            cfg.normalization.new_max = parse_double(key, value);
        } else if (key == "preprocess.alpha") {
            cfg.normalization.alpha = parse_double(key, value);
        } else if (key == "preprocess.beta") {
            cfg.normalization.beta = parse_double(key, value);
        } else if (key == "preprocess.equalize") {
            cfg.equalize = parse_bool(key, value);
        } else if (key == "hog.cell_size") {
            cfg.descriptors.hog.cell_size = static_cast<int>(parse_int(key, value));
        } else if (key == "hog.block_size") {
            cfg.descriptors.hog.block_size = static_cast<int>(parse_int(key, value));
        } else if (key == "hog.block_stride") {
            cfg.descriptors.hog.block_stride = static_cast<int>(parse_int(key, value));
        } else if (key == "hog.bins") {
            cfg.descriptors.hog.bins = static_cast<int>(parse_int(key, value));
        } else if (key == "hog.signed") {
            cfg.descriptors.hog.signed_orientation = parse_bool(key, value);
        } else if (key == "hog.epsilon") {
            cfg.descriptors.hog.epsilon = parse_double(key, value);
        } else if (key == "gabor.scales") {
            cfg.descriptors.gabor.scales = static_cast<int>(parse_int(key, value));
        } else if (key == "gabor.orientations") {
            cfg.descriptors.gabor.orientations = static_cast<int>(parse_int(key, value));
        } else if (key == "gabor.wavelengths") {
            cfg.descriptors.gabor.wavelengths = parse_double_list(key, value);
        } else if (key == "gabor.sigma_ratio") {
            cfg.descriptors.gabor.sigma_ratio = parse_double(key, value);
        } else if (key == "gabor.kernel_size") {
            cfg.descriptors.gabor.kernel_size = static_cast<int>(parse_int(key, value));
        } else if (key == "lgbphs.grid_rows") {
            cfg.descriptors.lgbphs.grid_rows = static_cast<int>(parse_int(key, value));
        } else if (key == "lgbphs.grid_cols") {
            cfg.descriptors.lgbphs.grid_cols = static_cast<int>(parse_int(key, value));
        } else if (key == "lgbphs.lbp_bins") {
            cfg.descriptors.lgbphs.lbp_bins = static_cast<int>(parse_int(key, value));
        } else if (key == "glcm.levels") {
            cfg.descriptors.glcm.levels = static_cast<int>(parse_int(key, value));
        } else if (key == "glcm.offsets") {
            cfg.descriptors.glcm.offsets = parse_offsets(key, value);
        } else if (key == "glcm.symmetric") {
            cfg.descriptors.glcm.symmetric = parse_bool(key, value);
        } else if (key == "glcm.normalized") {
            cfg.descriptors.glcm.normalized = parse_bool(key, value);
        } else if (key == "swarm.size") {
            cfg.swarm.swarm_size = static_cast<int>(parse_int(key, value));
        } else if (key == "swarm.archive_size") {
            cfg.swarm.archive_size = static_cast<int>(parse_int(key, value));
        } else if (key == "swarm.iterations") {
            cfg.swarm.max_iterations = static_cast<int>(parse_int(key, value));
        } else if (key == "swarm.inertia") {
            cfg.swarm.inertia = parse_double(key, value);
        } else if (key == "swarm.seed") {
            swarm_seed = parse_u64(key, value);
            parsed.swarm_seed_explicit = true;
        } else if (key == "swarm.knowledge_prob") {
            cfg.swarm.knowledge_prob = parse_double(key, value);
        } else if (key == "swarm.interaction_count") {
            cfg.swarm.interaction_count = static_cast<int>(parse_int(key, value));
        } else if (key == "swarm.v_max") {
            cfg.swarm.v_max = parse_double(key, value);
        } else if (key == "swarm.fitness_mode") {
            cfg.swarm.fitness_mode = fitness_mode_from_string(value);
        } else if (key == "swarm.update_mode") {
            cfg.swarm.update_mode = update_mode_from_string(value);
        } else if (key == "swarm.validation_fraction") {
            cfg.swarm.validation_fraction = parse_double(key, value);
        } else if (key == "train.epochs") {
            cfg.train.epochs = static_cast<int>(parse_int(key, value));
        } else if (key == "train.batch_size") {
            cfg.train.batch_size = static_cast<int>(parse_int(key, value));
        } else if (key == "train.learning_rate") {
            cfg.train.learning_rate = parse_double(key, value);
        } else if (key == "train.seed") {
            train_seed = parse_u64(key, value);
            parsed.train_seed_explicit = true;
        } else if (key == "train.gradient_clip") {
            cfg.train.gradient_clip = parse_double(key, value);
        } else if (key == "train.optimizer") {
            cfg.train.optimizer = optimizer_from_string(value);
        } else if (key == "train.timesteps") {
            cfg.timesteps = static_cast<int>(parse_int(key, value));
        } else if (key == "train.hidden_dim") {
            cfg.hidden_dim = static_cast<int>(parse_int(key, value));
        } else if (key == "split.train_fraction") {
            cfg.split.train_fraction = parse_double(key, value);
        } else if (key == "split.stratified") {
            cfg.split.stratified = parse_bool(key, value);
        } else if (key == "split.seed") {
            split_seed = parse_u64(key, value);
            parsed.split_seed_explicit = true;
        } else if (key == "synth.per_class") {
            cfg.synth.per_class = static_cast<int>(parse_int(key, value));
        } else if (key == "synth.width") {
            cfg.synth.width = static_cast<int>(parse_int(key, value));
        } else if (key == "synth.height") {
            cfg.synth.height = static_cast<int>(parse_int(key, value));
        } else if (key == "synth.channels") {
            cfg.synth.channels = static_cast<int>(parse_int(key, value));
        } else if (key == "eval.scope") {
            if (value == "test")
                cfg.eval_scope = EvalScope::test;
            else if (value == "train")
                cfg.eval_scope = EvalScope::train;
            else if (value == "all")
                cfg.eval_scope = EvalScope::all;
            else
                bad_value(key, value);
        } else {
            throw Error("unknown config key: " + key);
        }
    }
    (void)seed_set;
    cfg.swarm.r_seed = parsed.swarm_seed_explicit ? swarm_seed : cfg.seed;
    cfg.train.seed = parsed.train_seed_explicit ? train_seed : cfg.seed;
    cfg.split.seed = parsed.split_seed_explicit ? split_seed : cfg.seed;
    return parsed;
}

ParsedConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file: " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config_text(buf.str());
    } catch (const Error& e) {
        throw Error(std::string(e.what()) + " (in " + path.string() + ")");
    }
}

std::string serialize_config(const PipelineConfig& cfg) {
    std::ostringstream out;
    out << "seed = " << cfg.seed << '\n';
    out << "out = " << cfg.out_dir << '\n';
    out << "dataset.kind = "
        << (cfg.dataset.kind == DatasetKind::directory ? "directory" : "raw_tensor") << '\n';
    out << "dataset.path = " << cfg.dataset.path << '\n';
    out << "dataset.tensor = " << cfg.dataset.tensor << '\n';
    out << "dataset.manifest = " << cfg.dataset.manifest << '\n';
    out << "preprocess.normalization = " << to_string(cfg.normalization.kind) << '\n';
    out << "preprocess.new_min = " << format_g17(cfg.normalization.new_min) << '\n';
    out << "preprocess.new_max = " << format_g17(cfg.normalization.new_max) << '\n';
    out << "preprocess.alpha = " << format_g17(cfg.normalization.alpha) << '\n';
    out << "preprocess.beta = " << format_g17(cfg.normalization.beta) << '\n';
    out << "preprocess.equalize = " << (cfg.equalize ? "true" : "false") << '\n';
    out << "hog.cell_size = " << cfg.descriptors.hog.cell_size << '\n';
    out << "hog.block_size = " << cfg.descriptors.hog.block_size << '\n';
    out << "hog.block_stride = " << cfg.descriptors.hog.block_stride << '\n';
    out << "hog.bins = " << cfg.descriptors.hog.bins << '\n';
    out << "hog.signed = " << (cfg.descriptors.hog.signed_orientation ? "true" : "false") << '\n';
    out << "hog.epsilon = " << format_g17(cfg.descriptors.hog.epsilon) << '\n';
    out << "gabor.scales = " << cfg.descriptors.gabor.scales << '\n';
    out << "gabor.orientations = " << cfg.descriptors.gabor.orientations << '\n';
    out << "gabor.wavelengths = " << join_doubles(cfg.descriptors.gabor.wavelengths) << '\n';
    out << "gabor.sigma_ratio = " << format_g17(cfg.descriptors.gabor.sigma_ratio) << '\n';
    out << "gabor.kernel_size = " << cfg.descriptors.gabor.kernel_size << '\n';
    out << "lgbphs.grid_rows = " << cfg.descriptors.lgbphs.grid_rows << '\n';
    out << "lgbphs.grid_cols = " << cfg.descriptors.lgbphs.grid_cols << '\n';
    out << "lgbphs.lbp_bins = " << cfg.descriptors.lgbphs.lbp_bins << '\n';
    out << "glcm.levels = " << cfg.descriptors.glcm.levels << '\n';
    out << "glcm.offsets = " << join_offsets(cfg.descriptors.glcm.offsets) << '\n';
    out << "glcm.symmetric = " << (cfg.descriptors.glcm.symmetric ? "true" : "false") << '\n';
    out << "glcm.normalized = " << (cfg.descriptors.glcm.normalized ? "true" : "false") << '\n';
    out << "swarm.size = " << cfg.swarm.swarm_size << '\n';
    out << "swarm.archive_size = " << cfg.swarm.archive_size << '\n';
    out << "swarm.iterations = " << cfg.swarm.max_iterations << '\n';
    out << "swarm.inertia = " << format_g17(cfg.swarm.inertia) << '\n';
    out << "swarm.seed = " << cfg.swarm.r_seed << '\n';
    out << "swarm.knowledge_prob = " << format_g17(cfg.swarm.knowledge_prob) << '\n';
    out << "swarm.interaction_count = " << cfg.swarm.interaction_count << '\n';
    out << "swarm.v_max = " << format_g17(cfg.swarm.v_max) << '\n';
    out << "swarm.fitness_mode = " << to_string(cfg.swarm.fitness_mode) << '\n';
    out << "swarm.update_mode = " << to_string(cfg.swarm.update_mode) << '\n';
    out << "swarm.validation_fraction = " << format_g17(cfg.swarm.validation_fraction) << '\n';
    out << "train.epochs = " << cfg.train.epochs << '\n';
    out << "train.batch_size = " << cfg.train.batch_size << '\n';
    out << "train.learning_rate = " << format_g17(cfg.train.learning_rate) << '\n';
    out << "train.seed = " << cfg.train.seed << '\n';
    out << "train.gradient_clip = " << format_g17(cfg.train.gradient_clip) << '\n';
    out << "train.optimizer = " << to_string(cfg.train.optimizer) << '\n';
    out << "train.timesteps = " << cfg.timesteps << '\n';
    out << "train.hidden_dim = " << cfg.hidden_dim << '\n';
    out << "split.train_fraction = " << format_g17(cfg.split.train_fraction) << '\n';
    out << "split.stratified = " << (cfg.split.stratified ? "true" : "false") << '\n';
    out << "split.seed = " << cfg.split.seed << '\n';
    out << "synth.per_class = " << cfg.synth.per_class << '\n';
    out << "synth.width = " << cfg.synth.width << '\n';
    out << "synth.height = " << cfg.synth.height << '\n';
    out << "synth.channels = " << cfg.synth.channels << '\n';
    out << "eval.scope = "
        << (cfg.eval_scope == EvalScope::test ? "test"
                                              : (cfg.eval_scope == EvalScope::train ? "train" : "all"))
        << '\n';
    return out.str();
}

void save_config(const std::filesystem::path& path, const PipelineConfig& cfg) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open config file for writing: " + path.string());
    out << serialize_config(cfg);
    if (!out) throw Error("write failed for config file: " + path.string());
}

} // namespace lulc
