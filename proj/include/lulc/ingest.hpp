#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "lulc/image.hpp"

namespace lulc {

struct SplitSpec {
    double train_fraction = 0.7;
    std::uint64_t seed = 0;
    bool stratified = true;

    void validate() const;
};

/// Loads root/<class_name>/*.png. Classes are the subdirectory names in
/// lexicographic order; files within a class load in lexicographic order, so
/// reloading the same tree yields an identical dataset.
LabeledDataset load_directory(const std::filesystem::path& root);

/// Loads the LULCT1 raw tensor format: magic "LULCT1\0\0", little-endian
/// u32 N, H, W, C, then N*H*W*C unsigned bytes row-major channel-fastest.
/// The manifest is a CSV with header "index,label"; labels are class-name
/// strings and the class list is their lexicographically sorted distinct set.
LabeledDataset load_raw_tensor(const std::filesystem::path& tensor_path,
                               const std::filesystem::path& manifest_path);

/// Writes the LULCT1 tensor plus manifest for a dataset whose values are
/// integers in 0..255.
void write_raw_tensor(const std::filesystem::path& tensor_path,
                      const std::filesystem::path& manifest_path,
                      const LabeledDataset& ds);

/// Deterministic index-level split. Train side takes round-half-up of
/// fraction*count, per class when stratified. Returned index lists are
/// ascending and partition [0, labels.size()).
std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
split_indices(const std::vector<std::uint32_t>& labels, std::size_t class_count,
              const SplitSpec& spec);

std::pair<LabeledDataset, LabeledDataset> split(const LabeledDataset& ds, const SplitSpec& spec);

} // namespace lulc
