#include "lulc/hog.hpp"

#include <cmath>
#include <string>

#include "lulc/error.hpp"

namespace lulc {

void HogSpec::validate() const {
    if (cell_size < 1 || block_size < 1 || block_stride < 1)
        throw Error("hog sizes must be >= 1");
    if (bins < 2) throw Error("hog needs at least 2 orientation bins");
    if (!(epsilon > 0.0)) throw Error("hog epsilon must be positive");
}

std::pair<Field, Field> gradients(const Field& u) {
    if (u.width < 3 || u.height < 3)
        throw Error("gradient operator needs at least a 3x3 image, got " +
                    std::to_string(u.width) + "x" + std::to_string(u.height));
    Field lx = make_field(u.width, u.height);
    Field ly = make_field(u.width, u.height);
    auto clampi = [](int v, int hi) { return v < 0 ? 0 : (v > hi ? hi : v); };
    for (int y = 0; y < u.height; ++y)
        for (int x = 0; x < u.width; ++x) {
            lx.at(y, x) = u.at(y, clampi(x + 1, u.width - 1)) - u.at(y, clampi(x - 1, u.width - 1));
            ly.at(y, x) = u.at(clampi(y + 1, u.height - 1), x) - u.at(clampi(y - 1, u.height - 1), x);
        }
    return {std::move(lx), std::move(ly)};
}

std::pair<Field, Field> gradient_magnitude_orientation(const Field& lx, const Field& ly,
                                                       bool signed_orientation) {
    if (lx.width != ly.width || lx.height != ly.height)
        throw Error("gradient field shapes do not match");
    Field mag = make_field(lx.width, lx.height);
    Field theta = make_field(lx.width, lx.height);
    const double rad2deg = 180.0 / 3.14159265358979323846;
    for (std::size_t k = 0; k < lx.v.size(); ++k) {
        double gx = lx.v[k], gy = ly.v[k];
        mag.v[k] = std::sqrt(gx * gx + gy * gy);
        if (gx == 0.0 && gy == 0.0) {
            theta.v[k] = 0.0;
            continue;
        }
        double deg = std::atan2(gy, gx) * rad2deg; // (-180, 180]
        if (signed_orientation) {
            if (deg < 0.0) deg += 360.0;
            if (deg >= 360.0) deg -= 360.0;
        } else {
            if (deg < 0.0) deg += 180.0;
            if (deg >= 180.0) deg -= 180.0;
        }
        theta.v[k] = deg;
    }
    return {std::move(mag), std::move(theta)};
}

namespace {

struct HogGrid {
    int cells_x, cells_y, blocks_x, blocks_y;
};

HogGrid hog_grid(int width, int height, const HogSpec& spec) {
    HogGrid g{};
    g.cells_x = width / spec.cell_size;
    g.cells_y = height / spec.cell_size;
    g.blocks_x = g.cells_x >= spec.block_size ? (g.cells_x - spec.block_size) / spec.block_stride + 1 : 0;
    g.blocks_y = g.cells_y >= spec.block_size ? (g.cells_y - spec.block_size) / spec.block_stride + 1 : 0;
    if (g.blocks_x == 0 || g.blocks_y == 0)
        throw Error("image " + std::to_string(width) + "x" + std::to_string(height) +
                    " is smaller than one descriptor block");
    return g;
}

} // namespace

std::size_t hog_length(int width, int height, const HogSpec& spec) {
    spec.validate();
    HogGrid g = hog_grid(width, height, spec);
    return static_cast<std::size_t>(g.blocks_x) * g.blocks_y * spec.block_size * spec.block_size *
           spec.bins;
}

std::vector<double> hog_descriptor(const Image& img, const HogSpec& spec) {
    spec.validate();
    img.validate();
    HogGrid g = hog_grid(img.width, img.height, spec);

    Field u = luminance_field(img);
    auto [lx, ly] = gradients(u);
    auto [mag, theta] = gradient_magnitude_orientation(lx, ly, spec.signed_orientation);

    const double period = spec.signed_orientation ? 360.0 : 180.0;
    const double bin_width = period / spec.bins;

    // Per-cell orientation histograms; pixels in partial trailing cells are
    // ignored so every cell covers exactly cell_size^2 pixels.
    std::vector<double> cell_hist(static_cast<std::size_t>(g.cells_x) * g.cells_y * spec.bins, 0.0);
    auto hist_at = [&](int cy, int cx) {
        return cell_hist.data() + (static_cast<std::size_t>(cy) * g.cells_x + cx) * spec.bins;
    };
    for (int y = 0; y < g.cells_y * spec.cell_size; ++y)
        for (int x = 0; x < g.cells_x * spec.cell_size; ++x) {
            double m = mag.at(y, x);
            if (m == 0.0) continue;
            double t = theta.at(y, x) / bin_width; // bin centers sit at i*bin_width
            int lo = static_cast<int>(std::floor(t));
            double frac = t - lo;
            int b0 = lo % spec.bins;
            int b1 = (lo + 1) % spec.bins;
            double* h = hist_at(y / spec.cell_size, x / spec.cell_size);
            h[b0] += m * (1.0 - frac);
            h[b1] += m * frac;
        }

    const int block_cells = spec.block_size * spec.block_size;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(g.blocks_x) * g.blocks_y * block_cells * spec.bins);
    std::vector<double> q(static_cast<std::size_t>(block_cells) * spec.bins);
    for (int by = 0; by < g.blocks_y; ++by)
        for (int bx = 0; bx < g.blocks_x; ++bx) {
            std::size_t w = 0;
            for (int cy = 0; cy < spec.block_size; ++cy)
                for (int cx = 0; cx < spec.block_size; ++cx) {
                    const double* h =
                        hist_at(by * spec.block_stride + cy, bx * spec.block_stride + cx);
                    for (int b = 0; b < spec.bins; ++b) q[w++] = h[b];
                }
            double norm2 = 0.0;
            for (double v : q) norm2 += v * v;
            const double inv = 1.0 / std::sqrt(norm2 + spec.epsilon * spec.epsilon);
            for (double v : q) out.push_back(v * inv);
        }
    return out;
}

} // namespace lulc
