#include "lulc/features.hpp"

#include <algorithm>
#include <string>

#include "lulc/error.hpp"
#include "lulc/parallel.hpp"

namespace lulc {

void DescriptorSpecs::validate() const {
    hog.validate();
    gabor.validate();
    lgbphs.validate();
    glcm.validate();
}

std::vector<std::string> feature_tags(int width, int height, int channels,
                                      const DescriptorSpecs& specs) {
    specs.validate();
    std::vector<std::string> tags;
    const std::size_t hog_n = hog_length(width, height, specs.hog);
    const std::size_t lgb_n = lgbphs_length(specs.gabor, specs.lgbphs);
    tags.reserve(hog_n + lgb_n + 7 * static_cast<std::size_t>(channels));
    for (std::size_t i = 0; i < hog_n; ++i) tags.push_back("hog_" + std::to_string(i));
    for (std::size_t i = 0; i < lgb_n; ++i) tags.push_back("lgbphs_" + std::to_string(i));
    for (int c = 0; c < channels; ++c)
        for (int i = 0; i < 7; ++i)
            tags.push_back("haralick_c" + std::to_string(c) + "_" + std::to_string(i));
    return tags;
}

std::vector<double> extract_row(const Image& img, const std::vector<GaborKernel>& bank,
                                const DescriptorSpecs& specs) {
    std::vector<double> row = hog_descriptor(img, specs.hog);
    std::vector<double> lgb = lgbphs_descriptor(img, bank, specs.lgbphs);
    row.insert(row.end(), lgb.begin(), lgb.end());
    for (int c = 0; c < img.channels; ++c) {
        Image channel = extract_channel(img, c);
        HaralickFeatures h = haralick_features(glcm(channel, specs.glcm), specs.glcm.levels);
        for (double v : h.to_array()) row.push_back(v);
    }
    return row;
}

FeatureMatrix extract_all(const LabeledDataset& ds, const DescriptorSpecs& specs) {
    ds.validate();
    specs.validate();
    if (ds.size() == 0) throw Error("cannot extract features from an empty dataset");

    const Image& first = ds.images.front();
    for (const Image& img : ds.images)
        if (img.width != first.width || img.height != first.height ||
            img.channels != first.channels)
            throw Error("feature extraction requires uniform image dimensions across the dataset");

    FeatureMatrix fm;
    fm.column_tags = feature_tags(first.width, first.height, first.channels, specs);
    fm.rows = ds.size();
    fm.cols = fm.column_tags.size();
    fm.row_labels = ds.labels;
    fm.values.resize(fm.rows * fm.cols);

    const std::vector<GaborKernel> bank = gabor_bank(specs.gabor);
    parallel_for(ds.size(), [&](std::size_t i) {
        std::vector<double> row = extract_row(ds.images[i], bank, specs);
        if (row.size() != fm.cols)
            throw Error("descriptor row length " + std::to_string(row.size()) +
                        " does not match tag count " + std::to_string(fm.cols));
        std::copy(row.begin(), row.end(), fm.values.begin() + static_cast<std::ptrdiff_t>(i * fm.cols));
    });
    fm.validate();
    return fm;
}

} // namespace lulc
