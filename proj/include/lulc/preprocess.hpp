#pragma once

#include <string>

#include "lulc/image.hpp"

namespace lulc {

enum class NormalizationKind { min_max, sigmoid };

struct NormalizationSpec {
    NormalizationKind kind = NormalizationKind::min_max;
    double new_min = 0.0;
    double new_max = 1.0;
    // Sigmoid parameters: alpha is the slope width, beta the center intensity.
    double alpha = 1.0;
    double beta = 0.0;

    void validate() const;
};

NormalizationKind normalization_kind_from_string(const std::string& s);
std::string to_string(NormalizationKind kind);

/// Linear rescale per channel from the channel's observed [min, max] to
/// [new_min, new_max]. A constant channel maps to new_min everywhere.
Image normalize_min_max(const Image& img, const NormalizationSpec& spec);

/// out = (new_max - new_min) / (1 + exp(-(v - beta)/alpha)) + new_min.
Image normalize_sigmoid(const Image& img, const NormalizationSpec& spec);

Image normalize(const Image& img, const NormalizationSpec& spec);

/// Rounds values from the image's declared range onto integers 0..255.
Image quantize_to_byte(const Image& img);

/// Classic histogram equalization per channel over integer values in 0..255:
/// out(v) = round(255 * (cdf(v) - cdf_min) / (pixel_count - cdf_min)) where
/// cdf_min is the first nonzero cdf entry. A constant channel is unchanged.
Image equalize_histogram(const Image& img);

/// normalize -> quantize_to_byte -> equalize_histogram.
Image preprocess_image(const Image& img, const NormalizationSpec& spec, bool equalize);

} // namespace lulc
