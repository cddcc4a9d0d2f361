#include "lulc/glcm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "lulc/error.hpp"

namespace lulc {

void GlcmSpec::validate() const {
    if (levels < 2) throw Error("glcm needs at least 2 gray levels");
    if (offsets.empty()) throw Error("glcm needs at least one offset");
    for (auto [dy, dx] : offsets)
        if (dy == 0 && dx == 0) throw Error("glcm offset (0,0) is not allowed");
}

std::vector<double> glcm(const Image& img, const GlcmSpec& spec) {
    spec.validate();
    img.validate();
    if (img.channels != 1) throw Error("glcm expects a single-channel image");

    const auto [lo, hi] = img.value_range;
    const double span = hi - lo;
    if (!(span > 0.0)) throw Error("glcm needs a non-empty value range");

    // Uniform binning of the declared range; the top of the range folds into
    // the last level.
    std::vector<int> q(img.data.size());
    for (std::size_t k = 0; k < img.data.size(); ++k) {
        int level = static_cast<int>(std::floor((img.data[k] - lo) / span * spec.levels));
        if (level >= spec.levels) level = spec.levels - 1;
        if (level < 0) level = 0;
        q[k] = level;
    }
    auto level_at = [&](int y, int x) { return q[static_cast<std::size_t>(y) * img.width + x]; };

    const std::size_t cells = static_cast<std::size_t>(spec.levels) * spec.levels;
    std::vector<double> averaged(cells, 0.0);
    std::vector<double> m(cells);
    for (auto [dy, dx] : spec.offsets) {
        std::fill(m.begin(), m.end(), 0.0);
        std::size_t pairs = 0;
        for (int y = 0; y < img.height; ++y) {
            const int y2 = y + dy;
            if (y2 < 0 || y2 >= img.height) continue;
            for (int x = 0; x < img.width; ++x) {
                const int x2 = x + dx;
                if (x2 < 0 || x2 >= img.width) continue;
                m[static_cast<std::size_t>(level_at(y, x)) * spec.levels + level_at(y2, x2)] += 1.0;
                ++pairs;
            }
        }
        if (pairs == 0)
            throw Error("image " + std::to_string(img.width) + "x" + std::to_string(img.height) +
                        " has no pixel pairs for offset (" + std::to_string(dy) + "," +
                        std::to_string(dx) + ")");
        if (spec.symmetric) {
            for (int a = 0; a < spec.levels; ++a)
                for (int b = a + 1; b < spec.levels; ++b) {
                    const std::size_t ij = static_cast<std::size_t>(a) * spec.levels + b;
                    const std::size_t ji = static_cast<std::size_t>(b) * spec.levels + a;
                    const double s = m[ij] + m[ji];
                    m[ij] = s;
                    m[ji] = s;
                }
            for (int a = 0; a < spec.levels; ++a)
                m[static_cast<std::size_t>(a) * spec.levels + a] *= 2.0;
        }
        if (spec.normalized) {
            double total = 0.0;
            for (double v : m) total += v;
            for (double& v : m) v /= total;
        }
        for (std::size_t k = 0; k < cells; ++k) averaged[k] += m[k];
    }
    const double inv_offsets = 1.0 / static_cast<double>(spec.offsets.size());
    for (double& v : averaged) v *= inv_offsets;
    return averaged;
}

HaralickFeatures haralick_features(const std::vector<double>& p, int levels) {
    if (levels < 1 || p.size() != static_cast<std::size_t>(levels) * levels)
        throw Error("co-occurrence matrix size does not match level count");
    double total = 0.0;
    for (double v : p) {
        if (v < 0.0) throw Error("co-occurrence matrix has a negative entry");
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw Error("co-occurrence matrix is not normalized (sum = " + std::to_string(total) + ")");

    HaralickFeatures f;
    double mu = 0.0;
    for (int g = 0; g < levels; ++g)
        for (int d = 0; d < levels; ++d) mu += g * p[static_cast<std::size_t>(g) * levels + d];
    double var = 0.0;
    for (int g = 0; g < levels; ++g)
        for (int d = 0; d < levels; ++d)
            var += (g - mu) * (g - mu) * p[static_cast<std::size_t>(g) * levels + d];

    // Contrast groups mass by the absolute level difference z, then sums z^2
    // times that mass.
    std::vector<double> diff_mass(static_cast<std::size_t>(levels), 0.0);
    double corr_num = 0.0;
    for (int g = 0; g < levels; ++g)
        for (int d = 0; d < levels; ++d) {
            const double phi = p[static_cast<std::size_t>(g) * levels + d];
            f.energy += phi * phi;
            if (phi > 0.0) f.entropy -= phi * std::log2(phi);
            const double gap = static_cast<double>(g - d);
            f.inverse_difference_moment += phi / (1.0 + gap * gap);
            corr_num += (g - mu) * (d - mu) * phi;
            diff_mass[static_cast<std::size_t>(std::abs(g - d))] += phi;
        }
    for (int z = 0; z < levels; ++z)
        f.contrast += static_cast<double>(z) * z * diff_mass[static_cast<std::size_t>(z)];
    f.angular_second_moment = f.energy;
    f.homogeneity = f.inverse_difference_moment;
    f.correlation = var > 0.0 ? corr_num / var : 0.0;
    return f;
}

} // namespace lulc
