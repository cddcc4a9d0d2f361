#pragma once

#include <filesystem>

#include "lulc/image.hpp"

namespace lulc {

/// Decodes an 8- or 16-bit PNG (gray, gray+alpha, RGB, RGBA; palette images
/// are expanded to RGB). 8-bit files get value_range (0, 255), 16-bit files
/// (0, 65535). Throws Error naming the path on any decode failure.
Image read_png(const std::filesystem::path& path);

/// Encodes an image as 8-bit PNG. Values must be integers in (0, 255) and
/// channels must be 1, 2, 3 or 4. Output bytes are deterministic for a given
/// input.
void write_png(const std::filesystem::path& path, const Image& img);

} // namespace lulc
