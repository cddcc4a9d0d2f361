#include "lulc/png_io.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <memory>
#include <vector>

#include "lulc/error.hpp"

namespace lulc {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

} // namespace

Image read_png(const std::filesystem::path& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw Error("cannot open PNG file: " + path.string());

    png_byte header[8];
    if (std::fread(header, 1, 8, fp.get()) != 8 || png_sig_cmp(header, 0, 8) != 0)
        throw Error("not a PNG file: " + path.string());

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw Error("libpng init failed: " + path.string());
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw Error("libpng init failed: " + path.string());
    }

    std::vector<png_byte> raw;
    std::vector<png_bytep> rows;
    int width = 0, height = 0, channels = 0, bit_depth = 0;

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw Error("failed to decode PNG: " + path.string());
    }

    png_init_io(png, fp.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    bit_depth = png_get_bit_depth(png, info);
    int color_type = png_get_color_type(png, info);

    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
#ifdef PNG_READ_SWAP_SUPPORTED
    if (bit_depth == 16) png_set_swap(png); // file is big-endian, host is little
#endif
    png_read_update_info(png, info);

    width = static_cast<int>(png_get_image_width(png, info));
    height = static_cast<int>(png_get_image_height(png, info));
    channels = png_get_channels(png, info);
    bit_depth = png_get_bit_depth(png, info);

    std::size_t rowbytes = png_get_rowbytes(png, info);
    raw.assign(rowbytes * height, 0);
    rows.resize(height);
    for (int y = 0; y < height; ++y) rows[y] = raw.data() + rowbytes * y;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    double maxval = bit_depth == 16 ? 65535.0 : 255.0;
    Image img = make_image(width, height, channels, {0.0, maxval});
    std::size_t n = img.data.size();
    if (bit_depth == 16) {
        const std::uint16_t* p = reinterpret_cast<const std::uint16_t*>(raw.data());
        for (std::size_t i = 0; i < n; ++i) img.data[i] = p[i];
    } else {
        for (std::size_t i = 0; i < n; ++i) img.data[i] = raw[i];
    }
    return img;
}

void write_png(const std::filesystem::path& path, const Image& img) {
    if (img.channels < 1 || img.channels > 4)
        throw Error("PNG writer supports 1..4 channels, got " + std::to_string(img.channels));
    static const int color_types[] = {PNG_COLOR_TYPE_GRAY, PNG_COLOR_TYPE_GRAY_ALPHA,
                                      PNG_COLOR_TYPE_RGB, PNG_COLOR_TYPE_RGBA};

    std::vector<png_byte> raw(img.data.size());
    for (std::size_t i = 0; i < img.data.size(); ++i) {
        double v = img.data[i];
        if (v < 0.0 || v > 255.0 || v != std::floor(v))
            throw Error("PNG writer needs integer values in 0..255, got " + std::to_string(v));
        raw[i] = static_cast<png_byte>(v);
    }

    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw Error("cannot create PNG file: " + path.string());

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw Error("libpng init failed: " + path.string());
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw Error("libpng init failed: " + path.string());
    }

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw Error("failed to encode PNG: " + path.string());
    }

    png_init_io(png, fp.get());
    png_set_IHDR(png, info, img.width, img.height, 8, color_types[img.channels - 1],
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    std::size_t rowbytes = static_cast<std::size_t>(img.width) * img.channels;
    std::vector<png_bytep> rows(img.height);
    for (int y = 0; y < img.height; ++y) rows[y] = raw.data() + rowbytes * y;
    png_write_image(png, rows.data());
    png_write_end(png, info);
    png_destroy_write_struct(&png, &info);
}

} // namespace lulc
