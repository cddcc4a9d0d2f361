#include "lulc/preprocess.hpp"

#include <array>
#include <cmath>
#include <cstdint>

#include "lulc/error.hpp"

namespace lulc {

void NormalizationSpec::validate() const {
    if (!(new_max > new_min))
        throw Error("normalization requires new_max > new_min, got [" + std::to_string(new_min) +
                    ", " + std::to_string(new_max) + "]");
    if (!(alpha > 0.0)) throw Error("sigmoid normalization requires alpha > 0");
}

NormalizationKind normalization_kind_from_string(const std::string& s) {
    if (s == "min_max") return NormalizationKind::min_max;
    if (s == "sigmoid") return NormalizationKind::sigmoid;
    throw Error("unknown normalization mode: " + s);
}

std::string to_string(NormalizationKind kind) {
    return kind == NormalizationKind::min_max ? "min_max" : "sigmoid";
}

Image normalize_min_max(const Image& img, const NormalizationSpec& spec) {
    img.validate();
    spec.validate();
    Image out = img;
    out.value_range = {spec.new_min, spec.new_max};
    for (int c = 0; c < img.channels; ++c) {
        double lo = img.at(0, 0, c), hi = lo;
        for (int y = 0; y < img.height; ++y)
            for (int x = 0; x < img.width; ++x) {
                double v = img.at(y, x, c);
                if (v < lo) lo = v;
                if (v > hi) hi = v;
            }
        if (hi == lo) {
            // Constant channel: everything lands on the new minimum.
            for (int y = 0; y < img.height; ++y)
                for (int x = 0; x < img.width; ++x) out.at(y, x, c) = spec.new_min;
            continue;
        }
        const double scale = (spec.new_max - spec.new_min) / (hi - lo);
        for (int y = 0; y < img.height; ++y)
            for (int x = 0; x < img.width; ++x)
                out.at(y, x, c) = (img.at(y, x, c) - lo) * scale + spec.new_min;
    }
    return out;
}

Image normalize_sigmoid(const Image& img, const NormalizationSpec& spec) {
    img.validate();
    spec.validate();
    Image out = img;
    out.value_range = {spec.new_min, spec.new_max};
    const double span = spec.new_max - spec.new_min;
    for (std::size_t k = 0; k < img.data.size(); ++k)
        out.data[k] = span / (1.0 + std::exp(-(img.data[k] - spec.beta) / spec.alpha)) + spec.new_min;
    return out;
}

Image normalize(const Image& img, const NormalizationSpec& spec) {
    return spec.kind == NormalizationKind::min_max ? normalize_min_max(img, spec)
                                                   : normalize_sigmoid(img, spec);
}

Image quantize_to_byte(const Image& img) {
    img.validate();
    Image out = img;
    out.value_range = {0.0, 255.0};
    const double lo = img.value_range.first;
    const double hi = img.value_range.second;
    if (!(hi > lo)) throw Error("cannot quantize an image with an empty value range");
    const double scale = 255.0 / (hi - lo);
    for (std::size_t k = 0; k < img.data.size(); ++k) {
        double v = std::round((img.data[k] - lo) * scale);
        if (v < 0.0) v = 0.0;
        if (v > 255.0) v = 255.0;
        out.data[k] = v;
    }
    return out;
}

Image equalize_histogram(const Image& img) {
    img.validate();
    if (img.value_range != std::pair<double, double>{0.0, 255.0})
        throw Error("histogram equalization requires 8-bit value range (0, 255)");
    for (double v : img.data)
        if (v != std::floor(v))
            throw Error("histogram equalization requires integer intensities, got " +
                        std::to_string(v));

    Image out = img;
    const std::size_t pixels = img.pixel_count();
    for (int c = 0; c < img.channels; ++c) {
        std::array<std::size_t, 256> hist{};
        for (int y = 0; y < img.height; ++y)
            for (int x = 0; x < img.width; ++x) hist[static_cast<int>(img.at(y, x, c))]++;

        std::array<std::size_t, 256> cdf{};
        std::size_t running = 0;
        for (int v = 0; v < 256; ++v) {
            running += hist[v];
            cdf[v] = running;
        }
        std::size_t cdf_min = 0;
        for (int v = 0; v < 256; ++v)
            if (cdf[v] > 0) {
                cdf_min = cdf[v];
                break;
            }
        if (pixels == cdf_min) continue; // constant channel stays put

        const double denom = static_cast<double>(pixels - cdf_min);
        std::array<double, 256> remap{};
        for (int v = 0; v < 256; ++v)
            remap[v] = std::round(255.0 * (static_cast<double>(cdf[v]) - static_cast<double>(cdf_min)) / denom);
        for (int y = 0; y < img.height; ++y)
            for (int x = 0; x < img.width; ++x)
                out.at(y, x, c) = remap[static_cast<int>(img.at(y, x, c))];
    }
    return out;
}

Image preprocess_image(const Image& img, const NormalizationSpec& spec, bool equalize) {
    Image out = normalize(img, spec);
    if (equalize) {
        out = quantize_to_byte(out);
        out = equalize_histogram(out);
    }
    return out;
}

} // namespace lulc
