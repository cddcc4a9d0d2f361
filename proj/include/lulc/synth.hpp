#pragma once

#include <cstdint>
#include <filesystem>

#include "lulc/config.hpp"
#include "lulc/image.hpp"

namespace lulc {

/// Four texture classes (checker, hstripes, speckle, vstripes) with
/// per-image random period, phase, contrast, and pixel jitter. Values are
/// integers in 0..255; identical (spec, seed) always yields the same corpus.
LabeledDataset make_texture_corpus(const SynthSpec& spec, std::uint64_t seed);

/// Writes root/<class_name>/img_NNNN.png for every sample.
void write_corpus_png(const std::filesystem::path& root, const LabeledDataset& ds);

} // namespace lulc
