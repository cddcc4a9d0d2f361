#include "lulc/image.hpp"

#include <cmath>

#include "lulc/error.hpp"

namespace lulc {

void Image::validate() const {
    if (width < 1 || height < 1)
        throw Error("image dimensions must be at least 1x1, got " +
                    std::to_string(width) + "x" + std::to_string(height));
    if (channels < 1 || channels > 16)
        throw Error("channel count must be in 1..16, got " + std::to_string(channels));
    std::size_t expect = pixel_count() * static_cast<std::size_t>(channels);
    if (data.size() != expect)
        throw Error("image data length " + std::to_string(data.size()) +
                    " does not match " + std::to_string(expect));
    for (double v : data) {
        if (!std::isfinite(v) || v < value_range.first || v > value_range.second)
            throw Error("pixel value " + std::to_string(v) + " outside declared range [" +
                        std::to_string(value_range.first) + ", " +
                        std::to_string(value_range.second) + "]");
    }
}

Image make_image(int width, int height, int channels, std::pair<double, double> value_range) {
    Image img;
    img.width = width;
    img.height = height;
    img.channels = channels;
    img.value_range = value_range;
    img.data.assign(static_cast<std::size_t>(width) * height * channels, 0.0);
    return img;
}

Field make_field(int width, int height) {
    Field f;
    f.width = width;
    f.height = height;
    f.v.assign(static_cast<std::size_t>(width) * height, 0.0);
    return f;
}

Field luminance_field(const Image& img) {
    Field f = make_field(img.width, img.height);
    const double inv = 1.0 / img.channels;
    std::size_t px = img.pixel_count();
    for (std::size_t i = 0; i < px; ++i) {
        double sum = 0.0;
        for (int c = 0; c < img.channels; ++c)
            sum += img.data[i * img.channels + c];
        f.v[i] = sum * inv;
    }
    return f;
}

Image extract_channel(const Image& img, int channel) {
    if (channel < 0 || channel >= img.channels)
        throw Error("channel index " + std::to_string(channel) + " out of range");
    Image out = make_image(img.width, img.height, 1, img.value_range);
    std::size_t px = img.pixel_count();
    for (std::size_t i = 0; i < px; ++i)
        out.data[i] = img.data[i * img.channels + channel];
    return out;
}

void LabeledDataset::validate() const {
    if (images.size() != labels.size())
        throw Error("dataset has " + std::to_string(images.size()) + " images but " +
                    std::to_string(labels.size()) + " labels");
    for (std::uint32_t l : labels)
        if (l >= class_names.size())
            throw Error("label index " + std::to_string(l) + " out of range for " +
                        std::to_string(class_names.size()) + " classes");
    if (!images.empty()) {
        int ch = images.front().channels;
        for (const Image& img : images)
            if (img.channels != ch)
                throw Error("dataset mixes channel counts " + std::to_string(ch) + " and " +
                            std::to_string(img.channels));
    }
}

} // namespace lulc
