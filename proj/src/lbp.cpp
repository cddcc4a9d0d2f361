#include "lulc/lbp.hpp"

#include <string>

#include "lulc/error.hpp"

namespace lulc {

LbpField lbp_map(const Field& u) {
    if (u.width < 3 || u.height < 3)
        throw Error("lbp needs at least a 3x3 field, got " + std::to_string(u.width) + "x" +
                    std::to_string(u.height));
    // Clockwise from the top-left neighbor.
    static constexpr int kOffsets[8][2] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, 1},
                                           {1, 1},   {1, 0},  {1, -1}, {0, -1}};
    LbpField out;
    out.width = u.width - 2;
    out.height = u.height - 2;
    out.codes.resize(static_cast<std::size_t>(out.width) * out.height);
    std::size_t k = 0;
    for (int y = 1; y + 1 < u.height; ++y)
        for (int x = 1; x + 1 < u.width; ++x, ++k) {
            const double center = u.at(y, x);
            unsigned code = 0;
            for (int b = 0; b < 8; ++b)
                if (u.at(y + kOffsets[b][0], x + kOffsets[b][1]) >= center)
                    code |= 1u << (7 - b);
            out.codes[k] = static_cast<std::uint8_t>(code);
        }
    return out;
}

} // namespace lulc
