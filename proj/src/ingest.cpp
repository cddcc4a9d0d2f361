#include "lulc/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "lulc/error.hpp"
#include "lulc/io_bytes.hpp"
#include "lulc/png_io.hpp"
#include "lulc/rng.hpp"

namespace fs = std::filesystem;

namespace lulc {

void SplitSpec::validate() const {
    if (!(train_fraction > 0.0) || !(train_fraction < 1.0))
        throw Error("split fraction must lie strictly between 0 and 1, got " +
                    std::to_string(train_fraction));
}

LabeledDataset load_directory(const fs::path& root) {
    if (!fs::exists(root)) throw Error("dataset directory does not exist: " + root.string());
    if (!fs::is_directory(root)) throw Error("dataset path is not a directory: " + root.string());

    std::vector<fs::path> class_dirs;
    for (const auto& entry : fs::directory_iterator(root))
        if (entry.is_directory()) class_dirs.push_back(entry.path());
    std::sort(class_dirs.begin(), class_dirs.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
    if (class_dirs.empty()) throw Error("dataset directory has no class subdirectories: " + root.string());

    LabeledDataset ds;
    for (std::size_t c = 0; c < class_dirs.size(); ++c) {
        ds.class_names.push_back(class_dirs[c].filename().string());
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(class_dirs[c])) {
            if (!entry.is_regular_file()) continue;
            std::string ext = entry.path().extension().string();
            std::transform(ext.begin(), ext.end(), ext.begin(),
                           [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
            if (ext == ".png") files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end(),
                  [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
        if (files.empty())
            throw Error("class directory contains no .png files: " + class_dirs[c].string());
        for (const auto& f : files) {
            Image img;
            try {
                img = read_png(f);
            } catch (const Error& e) {
                throw Error(std::string(e.what()) + " (while loading " + f.string() + ")");
            }
            ds.images.push_back(std::move(img));
            ds.labels.push_back(static_cast<std::uint32_t>(c));
        }
    }
    ds.validate();
    return ds;
}

namespace {

constexpr char kTensorMagic[8] = {'L', 'U', 'L', 'C', 'T', '1', '\0', '\0'};

// One manifest row: original tensor index plus class-name label.
struct ManifestRow {
    std::uint32_t index;
    std::string label;
};

std::vector<ManifestRow> read_manifest(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open manifest: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw Error("manifest is empty: " + path.string());
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "index,label")
        throw Error("manifest header must be \"index,label\", got \"" + line + "\" in " + path.string());
    std::vector<ManifestRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw Error("manifest line " + std::to_string(line_no) + " has no comma: " + path.string());
        std::string idx_text = line.substr(0, comma);
        std::string label = line.substr(comma + 1);
        if (label.empty())
            throw Error("manifest line " + std::to_string(line_no) + " has empty label: " + path.string());
        std::uint32_t idx = 0;
        try {
            std::size_t pos = 0;
            unsigned long v = std::stoul(idx_text, &pos);
            if (pos != idx_text.size() || v > 0xffffffffUL) throw std::invalid_argument("range");
            idx = static_cast<std::uint32_t>(v);
        } catch (const std::exception&) {
            throw Error("manifest line " + std::to_string(line_no) + " has invalid index \"" + idx_text +
                        "\": " + path.string());
        }
        rows.push_back({idx, std::move(label)});
    }
    if (rows.empty()) throw Error("manifest has no data rows: " + path.string());
    return rows;
}

} // namespace

LabeledDataset load_raw_tensor(const fs::path& tensor_path, const fs::path& manifest_path) {
    std::ifstream in(tensor_path, std::ios::binary);
    if (!in) throw Error("cannot open tensor file: " + tensor_path.string());

    char magic[8];
    read_exact(in, magic, 8, "tensor magic");
    if (!std::equal(magic, magic + 8, kTensorMagic))
        throw Error("bad magic in tensor file (expected LULCT1): " + tensor_path.string());

    const std::uint32_t n = read_u32le(in, "tensor sample count");
    const std::uint32_t h = read_u32le(in, "tensor height");
    const std::uint32_t w = read_u32le(in, "tensor width");
    const std::uint32_t c = read_u32le(in, "tensor channel count");
    if (n == 0) throw Error("tensor has zero samples: " + tensor_path.string());
    if (h == 0 || w == 0 || c == 0)
        throw Error("tensor has a zero dimension: " + tensor_path.string());
    if (c > 16) throw Error("tensor channel count exceeds 16: " + tensor_path.string());

    const std::size_t per_image = static_cast<std::size_t>(h) * w * c;
    std::vector<unsigned char> buf(per_image);

    auto rows = read_manifest(manifest_path);
    if (rows.size() != n)
        throw Error("manifest row count " + std::to_string(rows.size()) + " does not match tensor sample count " +
                    std::to_string(n));

    // Class list: lexicographically sorted distinct labels.
    std::map<std::string, std::uint32_t> class_ids;
    for (const auto& r : rows) class_ids.emplace(r.label, 0);
    LabeledDataset ds;
    for (auto& [name, id] : class_ids) {
        id = static_cast<std::uint32_t>(ds.class_names.size());
        ds.class_names.push_back(name);
    }

    ds.images.reserve(n);
    ds.labels.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        read_exact(in, reinterpret_cast<char*>(buf.data()), buf.size(),
                   "tensor sample " + std::to_string(i));
        Image img = make_image(static_cast<int>(w), static_cast<int>(h), static_cast<int>(c));
        for (std::size_t k = 0; k < per_image; ++k) img.data[k] = static_cast<double>(buf[k]);
        ds.images.push_back(std::move(img));
    }
    for (const auto& r : rows) {
        if (r.index >= n)
            throw Error("manifest index " + std::to_string(r.index) + " out of range for " +
                        std::to_string(n) + " samples");
        ds.labels[r.index] = class_ids.at(r.label);
    }

    char extra;
    if (in.read(&extra, 1))
        throw Error("trailing bytes after tensor payload: " + tensor_path.string());
    ds.validate();
    return ds;
}

void write_raw_tensor(const fs::path& tensor_path, const fs::path& manifest_path,
                      const LabeledDataset& ds) {
    ds.validate();
    if (ds.size() == 0) throw Error("refusing to write empty tensor");
    const Image& first = ds.images.front();
    for (const Image& img : ds.images)
        if (img.width != first.width || img.height != first.height || img.channels != first.channels)
            throw Error("tensor export requires uniform image dimensions");

    std::ofstream out(tensor_path, std::ios::binary);
    if (!out) throw Error("cannot open tensor file for writing: " + tensor_path.string());
    out.write(kTensorMagic, 8);
    write_u32le(out, static_cast<std::uint32_t>(ds.size()));
    write_u32le(out, static_cast<std::uint32_t>(first.height));
    write_u32le(out, static_cast<std::uint32_t>(first.width));
    write_u32le(out, static_cast<std::uint32_t>(first.channels));
    std::vector<unsigned char> buf;
    for (const Image& img : ds.images) {
        buf.resize(img.data.size());
        for (std::size_t k = 0; k < img.data.size(); ++k) {
            double v = img.data[k];
            if (v != std::floor(v) || v < 0.0 || v > 255.0)
                throw Error("tensor export requires integer pixel values in 0..255, got " +
                            std::to_string(v));
            buf[k] = static_cast<unsigned char>(v);
        }
        out.write(reinterpret_cast<const char*>(buf.data()),
                  static_cast<std::streamsize>(buf.size()));
    }
    if (!out) throw Error("write failed for tensor file: " + tensor_path.string());

    std::ofstream mf(manifest_path);
    if (!mf) throw Error("cannot open manifest for writing: " + manifest_path.string());
    mf << "index,label\n";
    for (std::size_t i = 0; i < ds.size(); ++i)
        mf << i << ',' << ds.class_names[ds.labels[i]] << '\n';
    if (!mf) throw Error("write failed for manifest: " + manifest_path.string());
}

namespace {

constexpr std::uint64_t kSplitStream = 0x53504c49; // "SPLI"

// Train side gets round-half-up(fraction * count), clamped so neither side is
// empty when count >= 2.
std::size_t train_take(std::size_t count, double fraction) {
    auto k = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(count) + 0.5));
    if (count >= 2) {
        if (k == 0) k = 1;
        if (k == count) k = count - 1;
    }
    return k;
}

void shuffle_indices(std::vector<std::size_t>& idx, Rng& rng) {
    for (std::size_t i = idx.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.uniform_int(i));
        std::swap(idx[i - 1], idx[j]);
    }
}

} // namespace

std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
split_indices(const std::vector<std::uint32_t>& labels, std::size_t class_count,
              const SplitSpec& spec) {
    spec.validate();
    if (labels.empty()) throw Error("cannot split an empty dataset");

    std::vector<std::size_t> train, test;
    if (spec.stratified) {
        std::vector<std::vector<std::size_t>> by_class(class_count);
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] >= class_count) throw Error("label out of range in split");
            by_class[labels[i]].push_back(i);
        }
        for (std::size_t c = 0; c < class_count; ++c) {
            auto& idx = by_class[c];
            if (idx.empty()) continue;
            if (idx.size() < 2)
                throw Error("stratified split needs at least 2 samples per class; class " +
                            std::to_string(c) + " has " + std::to_string(idx.size()));
            Rng rng(mix_seed(spec.seed, kSplitStream + c, 0));
            shuffle_indices(idx, rng);
            std::size_t k = train_take(idx.size(), spec.train_fraction);
            train.insert(train.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k));
            test.insert(test.end(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end());
        }
    } else {
        std::vector<std::size_t> idx(labels.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        if (idx.size() < 2) throw Error("split needs at least 2 samples");
        Rng rng(mix_seed(spec.seed, kSplitStream, 0));
        shuffle_indices(idx, rng);
        std::size_t k = train_take(idx.size(), spec.train_fraction);
        train.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k));
        test.assign(idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end());
    }
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());
    return {std::move(train), std::move(test)};
}

std::pair<LabeledDataset, LabeledDataset> split(const LabeledDataset& ds, const SplitSpec& spec) {
    ds.validate();
    auto [train_idx, test_idx] = split_indices(ds.labels, ds.class_names.size(), spec);
    auto take = [&](const std::vector<std::size_t>& idx) {
        LabeledDataset out;
        out.class_names = ds.class_names;
        out.images.reserve(idx.size());
        out.labels.reserve(idx.size());
        for (std::size_t i : idx) {
            out.images.push_back(ds.images[i]);
            out.labels.push_back(ds.labels[i]);
        }
        return out;
    };
    return {take(train_idx), take(test_idx)};
}

} // namespace lulc
