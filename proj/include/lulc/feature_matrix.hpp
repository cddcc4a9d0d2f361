#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace lulc {

struct FeatureMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values; // row-major rows x cols
    std::vector<std::string> column_tags;
    std::vector<std::uint32_t> row_labels;

    double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
    void validate() const;
};

/// CSV form: header "label,<tag_0>,...,<tag_{D-1}>", one row per sample with
/// the label first. Values print with enough digits to round-trip bit-exactly.
void save_feature_csv(const std::filesystem::path& path, const FeatureMatrix& fm);
FeatureMatrix load_feature_csv(const std::filesystem::path& path);

/// Binary form: magic "LULCF1\0", little-endian u32 N and D, N*D f64 values
/// row-major, a table of D length-prefixed UTF-8 tags, then N u32 labels.
void save_feature_binary(const std::filesystem::path& path, const FeatureMatrix& fm);
FeatureMatrix load_feature_binary(const std::filesystem::path& path);

FeatureMatrix select_columns(const FeatureMatrix& fm, const std::vector<std::size_t>& indices);
FeatureMatrix select_rows(const FeatureMatrix& fm, const std::vector<std::size_t>& indices);

struct ColumnStats {
    std::vector<double> mean;
    std::vector<double> stddev; // population standard deviation
};

/// Per-column mean and population standard deviation.
ColumnStats column_stats(const FeatureMatrix& fm);

} // namespace lulc
