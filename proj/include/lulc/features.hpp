#pragma once

#include <string>
#include <vector>

#include "lulc/feature_matrix.hpp"
#include "lulc/gabor.hpp"
#include "lulc/glcm.hpp"
#include "lulc/hog.hpp"
#include "lulc/image.hpp"
#include "lulc/lgbphs.hpp"

namespace lulc {

struct DescriptorSpecs {
    HogSpec hog;
    GaborBankSpec gabor;
    LgbphsSpec lgbphs;
    GlcmSpec glcm;

    void validate() const;
};

/// Column tags for one dataset shape: hog_<i>, lgbphs_<i>, then
/// haralick_c<channel>_<i> per channel.
std::vector<std::string> feature_tags(int width, int height, int channels,
                                      const DescriptorSpecs& specs);

/// Per-image descriptor row: [HOG | LGBPHS | texture statistics per channel].
std::vector<double> extract_row(const Image& img, const std::vector<GaborKernel>& bank,
                                const DescriptorSpecs& specs);

/// Extracts every image (in parallel across rows, output order fixed by row
/// index) and assembles the labeled feature matrix.
FeatureMatrix extract_all(const LabeledDataset& ds, const DescriptorSpecs& specs);

} // namespace lulc
