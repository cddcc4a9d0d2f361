#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace lulc {

/// Raster of pixel intensities, row-major and channel-fastest:
/// data[(y * width + x) * channels + c].
struct Image {
    int width = 0;
    int height = 0;
    int channels = 1;
    std::vector<double> data;
    std::pair<double, double> value_range{0.0, 255.0};

    double& at(int y, int x, int c) {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    double at(int y, int x, int c) const {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }

    std::size_t pixel_count() const {
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }

    /// Checks the structural invariants (dimensions, data length, channel
    /// count in 1..16, values within value_range). Throws Error.
    void validate() const;
};

Image make_image(int width, int height, int channels,
                 std::pair<double, double> value_range = {0.0, 255.0});

/// Single-channel real-valued plane used by gradient/filter computations.
struct Field {
    int width = 0;
    int height = 0;
    std::vector<double> v;

    double& at(int y, int x) { return v[static_cast<std::size_t>(y) * width + x]; }
    double at(int y, int x) const { return v[static_cast<std::size_t>(y) * width + x]; }
};

Field make_field(int width, int height);

/// Mean over channels; the reduction used before HOG and Gabor filtering.
Field luminance_field(const Image& img);

/// One channel as a standalone image, value_range preserved.
Image extract_channel(const Image& img, int channel);

struct LabeledDataset {
    std::vector<Image> images;
    std::vector<std::uint32_t> labels;
    std::vector<std::string> class_names;

    std::size_t size() const { return images.size(); }
    void validate() const;
};

} // namespace lulc
