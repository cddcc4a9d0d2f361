#pragma once

#include <cstdint>
#include <vector>

#include "lulc/image.hpp"

namespace lulc {

struct LbpField {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> codes; // row-major

    std::uint8_t at(int y, int x) const { return codes[static_cast<std::size_t>(y) * width + x]; }
};

/// 8-neighbor radius-1 local binary patterns: neighbor >= center sets the bit,
/// bits ordered clockwise from the top-left neighbor with the first comparison
/// in the most significant position. Output covers interior pixels only, so it
/// is (height-2) x (width-2).
LbpField lbp_map(const Field& u);

} // namespace lulc
