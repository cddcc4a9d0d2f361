#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "lulc/image.hpp"

namespace lulc {

struct GlcmSpec {
    int levels = 16;
    std::vector<std::pair<int, int>> offsets = {{0, 1}, {1, 0}, {1, 1}, {1, -1}}; // (dy, dx)
    bool symmetric = true;
    bool normalized = true;

    void validate() const;
};

/// Gray-level co-occurrence matrix of a single-channel image: values are
/// uniformly binned from the image's declared value_range into spec.levels
/// levels, pair counts are accumulated per offset (plus transpose when
/// symmetric, scaled to sum 1 when normalized), and the per-offset matrices
/// are averaged. Row-major levels x levels.
std::vector<double> glcm(const Image& img, const GlcmSpec& spec);

struct HaralickFeatures {
    double energy = 0.0;
    double entropy = 0.0;
    double correlation = 0.0;
    double angular_second_moment = 0.0;
    double inverse_difference_moment = 0.0;
    double contrast = 0.0;
    double homogeneity = 0.0;

    std::array<double, 7> to_array() const {
        return {energy,   entropy,  correlation, angular_second_moment,
                inverse_difference_moment, contrast, homogeneity};
    }
};

/// Texture statistics of a normalized co-occurrence matrix. Correlation of a
/// zero-variance matrix is defined as 0.
HaralickFeatures haralick_features(const std::vector<double>& p, int levels);

} // namespace lulc
