#include "lulc/lgbphs.hpp"

#include <algorithm>
#include <string>

#include "lulc/error.hpp"
#include "lulc/lbp.hpp"

namespace lulc {

void LgbphsSpec::validate() const {
    if (grid_rows < 1 || grid_cols < 1) throw Error("lgbphs grid dimensions must be >= 1");
    if (lbp_bins < 1 || lbp_bins > 256)
        throw Error("lgbphs lbp_bins must be in 1..256, got " + std::to_string(lbp_bins));
}

std::size_t lgbphs_length(const GaborBankSpec& gspec, const LgbphsSpec& lspec) {
    gspec.validate();
    lspec.validate();
    return static_cast<std::size_t>(gspec.scales) * gspec.orientations * lspec.grid_rows *
           lspec.grid_cols * lspec.lbp_bins;
}

std::vector<double> lgbphs_descriptor(const Image& img, const std::vector<GaborKernel>& bank,
                                      const LgbphsSpec& lspec) {
    lspec.validate();
    img.validate();
    if (img.height / lspec.grid_rows < 3 || img.width / lspec.grid_cols < 3)
        throw Error("lgbphs grid cells must be at least 3x3 pixels; image " +
                    std::to_string(img.width) + "x" + std::to_string(img.height) + " with grid " +
                    std::to_string(lspec.grid_rows) + "x" + std::to_string(lspec.grid_cols) +
                    " is too fine");

    Field u = luminance_field(img);
    std::vector<double> out;
    out.reserve(bank.size() * static_cast<std::size_t>(lspec.grid_rows) * lspec.grid_cols *
                lspec.lbp_bins);
    std::vector<double> hist(static_cast<std::size_t>(lspec.lbp_bins));
    for (const GaborKernel& kernel : bank) {
        Field gmp = gabor_magnitude(u, kernel);
        LbpField codes = lbp_map(gmp);
        for (int gr = 0; gr < lspec.grid_rows; ++gr) {
            const int y0 = gr * codes.height / lspec.grid_rows;
            const int y1 = (gr + 1) * codes.height / lspec.grid_rows;
            for (int gc = 0; gc < lspec.grid_cols; ++gc) {
                const int x0 = gc * codes.width / lspec.grid_cols;
                const int x1 = (gc + 1) * codes.width / lspec.grid_cols;
                std::fill(hist.begin(), hist.end(), 0.0);
                double total = 0.0;
                for (int y = y0; y < y1; ++y)
                    for (int x = x0; x < x1; ++x) {
                        hist[codes.at(y, x) * lspec.lbp_bins / 256] += 1.0;
                        total += 1.0;
                    }
                if (total > 0.0)
                    for (double& h : hist) h /= total;
                out.insert(out.end(), hist.begin(), hist.end());
            }
        }
    }
    return out;
}

std::vector<double> lgbphs_descriptor(const Image& img, const GaborBankSpec& gspec,
                                      const LgbphsSpec& lspec) {
    return lgbphs_descriptor(img, gabor_bank(gspec), lspec);
}

} // namespace lulc
